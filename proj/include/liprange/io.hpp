#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "lipschitz.hpp"

// File formats: plain-text edge lists, "cnk:n=..,k=.." generator specs,
// vertex/value CSV, key=value config files, and atomic output writes.

namespace lip {

// Edge list: first line "n m", then m lines "u v" (0-based).
inline Graph read_edge_list(std::istream& in) {
  int n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw std::runtime_error("edge list: missing 'n m' header");
  std::vector<std::pair<int, int>> edges(m);
  for (std::size_t i = 0; i < m; ++i)
    if (!(in >> edges[i].first >> edges[i].second))
      throw std::runtime_error("edge list: truncated at edge " + std::to_string(i));
  return Graph::from_edges(n, edges);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int w : g.neighbors(v))
      if (v < w) edges.emplace_back(v, w);
  out << g.vertex_count() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

// Graph source: either a generator spec "cnk:n=<n>,k=<k>" or a file path.
inline Graph load_graph(const std::string& source) {
  if (source.rfind("cnk:", 0) == 0) {
    int n = -1, k = -1;
    std::stringstream ss(source.substr(4));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::runtime_error("bad generator spec: " + source);
      const std::string key = item.substr(0, eq);
      const int value = std::stoi(item.substr(eq + 1));
      if (key == "n") n = value;
      else if (key == "k") k = value;
      else throw std::runtime_error("unknown generator key '" + key + "' in " + source);
    }
    if (n < 0 || k < 0) throw std::runtime_error("generator spec needs n and k: " + source);
    return build_layered_cycle(n, k);
  }
  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot open graph file: " + source);
  return read_edge_list(in);
}

// ---- assignment CSV ---------------------------------------------------------

inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename Value>
void write_assignment_csv(std::ostream& out, const std::map<int, Value>& values) {
  out << "vertex,value\n";
  for (const auto& [v, value] : values) {
    if constexpr (std::is_floating_point_v<Value>) out << v << ',' << format_real(value) << '\n';
    else out << v << ',' << value << '\n';
  }
}

inline std::map<int, double> read_assignment_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("assignment CSV: empty file");
  std::map<int, double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("assignment CSV: malformed line '" + line + "'");
    values[std::stoi(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
  }
  return values;
}

inline std::map<int, std::int64_t> read_int_assignment_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("assignment CSV: empty file");
  std::map<int, std::int64_t> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("assignment CSV: malformed line '" + line + "'");
    values[std::stoi(line.substr(0, comma))] = std::stoll(line.substr(comma + 1));
  }
  return values;
}

// ---- key=value config with [sections] ---------------------------------------

// Keys are flattened to "section.key"; keys before any section keep their
// bare name.  '#' starts a comment.
inline std::map<std::string, std::string> read_config(std::istream& in) {
  std::map<std::string, std::string> config;
  std::string line, section;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string{};
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
  };
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    config[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return config;
}

inline std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return read_config(in);
}

// ---- atomic file output ------------------------------------------------------

// Writes to path via temp file + rename so readers never see partial output.
inline void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace lip
