// Command-line front end: count / sample / sweep / verify / construct /
// entropy over the liprange library.  Every output embeds the resolved run
// configuration; exit codes: 0 success, 2 usage, 3 cap violation, 4 no
// coalescence.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <liprange/liprange.hpp>

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "liprange 0.1.0";

struct RunConfig {
  std::string subcommand;
  std::string graph = "cnk:n=4,k=1";
  std::string model = "mlip";  // mlip | hom | real
  std::int64_t M = 1;
  std::string method = "exact";  // exact | cftp | mcmc
  std::uint64_t seed = 0;
  int trials = 1000;
  std::string out;        // empty = stdout
  std::string format = "json";
  std::uint64_t oracle_cap = lip::kDefaultEnumerationCap;
  std::uint64_t state_cap = lip::kDefaultStateCap;
  std::uint64_t max_updates = 1ULL << 30;
  int threads = static_cast<int>(std::thread::hardware_concurrency());

  json to_json() const {
    return {{"tool_version", kToolVersion}, {"subcommand", subcommand},
            {"graph", graph},               {"model", model},
            {"M", M},                       {"method", method},
            {"seed", seed},                 {"trials", trials},
            {"format", format},             {"oracle_cap", oracle_cap},
            {"state_cap", state_cap},       {"max_updates", max_updates},
            {"threads", threads}};
  }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--graph", cfg.graph, "graph file or generator spec cnk:n=<n>,k=<k>");
  cmd->add_option("--M", cfg.M, "Lipschitz constant");
  cmd->add_option("--model", cfg.model)->check(CLI::IsMember({"mlip", "hom", "real"}));
  cmd->add_option("--seed", cfg.seed, "master seed; all substreams derive from it");
  cmd->add_option("--out", cfg.out, "output path (atomic write); default stdout");
  cmd->add_option("--threads", cfg.threads, "worker cap for sweeps");
  cmd->add_option("--oracle-cap", cfg.oracle_cap);
  cmd->add_option("--state-cap", cfg.state_cap);
  cmd->add_option("--max-updates", cfg.max_updates, "CFTP total-update budget");
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) std::cout << payload;
  else lip::write_file_atomic(cfg.out, payload);
}

lip::ModelKind model_kind(const RunConfig& cfg) {
  if (cfg.model == "hom") return lip::ModelKind::z_homomorphism();
  if (cfg.model == "real") return lip::ModelKind::real_lipschitz();
  return lip::ModelKind::m_lipschitz(cfg.M);
}

// Parses n,k back out of a cnk spec; returns false for file-based graphs.
bool cnk_params(const std::string& source, int& n, int& k) {
  if (source.rfind("cnk:", 0) != 0) return false;
  lip::load_graph(source);  // validates
  n = k = -1;
  std::stringstream ss(source.substr(4));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    const int value = std::stoi(item.substr(eq + 1));
    (item.substr(0, eq) == "n" ? n : k) = value;
  }
  return true;
}

int run_count(const RunConfig& cfg) {
  json out{{"run_config", cfg.to_json()}};
  int n, k;
  const lip::ModelKind kind = model_kind(cfg);
  if (cnk_params(cfg.graph, n, k)) {
    lip::TransferModel tm(n, k, kind, {}, cfg.state_cap);
    out["n"] = n;
    out["k"] = k;
    out["M"] = kind.model == lip::Model::ZHomomorphism ? 1 : cfg.M;
    out["count"] = tm.count().get_str();
    const std::int64_t r = lip::range_threshold(kind.model, cfg.M);
    out["pr_range_le"] = lip::tm_prob_range_le(n, k, kind, r).get_str();
    if (kind.model == lip::Model::MLipschitz) out["epsilon"] = tm.epsilon().get_d();
  } else {
    lip::Graph g = lip::load_graph(cfg.graph);
    mpz_class count = 0;
    lip::enumerate_bruteforce(g, 0, kind, [&](const lip::IntAssignment&) { count += 1; },
                              cfg.oracle_cap);
    out["n"] = g.vertex_count();
    out["M"] = cfg.M;
    out["count"] = count.get_str();
  }
  emit(cfg, out.dump(2) + "\n");
  return 0;
}

int run_sample(const RunConfig& cfg, bool with_values) {
  lip::Graph g = lip::load_graph(cfg.graph);
  std::ostringstream lines;
  for (int t = 0; t < cfg.trials; ++t) {
    json line{{"seed", cfg.seed}, {"trial", t}, {"model", cfg.model}, {"M", cfg.M}};
    if (cfg.method == "cftp") {
      lip::CftpOptions options;
      options.max_total_updates = cfg.max_updates;
      lip::CftpResult stats;
      auto f = lip::cftp_sample(g, 0, cfg.M, lip::u64_at(cfg.seed, "cli_sample", t), options,
                                &stats);
      line["R"] = lip::range_int(f.values);
      line["coalescence_epochs"] = stats.epochs;
      if (with_values) line["values"] = f.values;
    } else if (cfg.method == "exact") {
      int n, k;
      if (!cnk_params(cfg.graph, n, k))
        throw CLI::ValidationError("--method exact needs a cnk: generator spec");
      lip::TransferModel tm(n, k, model_kind(cfg), {}, cfg.state_cap);
      auto fs = tm.sample(lip::u64_at(cfg.seed, "cli_sample", t), 1);
      line["R"] = lip::range_int(fs[0].values);
      if (with_values) line["values"] = fs[0].values;
    } else {  // mcmc: approximate real model, one chain for all trials
      lip::SamplerConfig sc;
      sc.seed = cfg.seed;
      auto chain = lip::mcmc_sample_real(g, 0, sc, cfg.trials);
      for (int s = 0; s < cfg.trials; ++s) {
        json real_line{{"seed", cfg.seed}, {"trial", s}, {"model", "real"},
                       {"R", lip::range_of(chain.samples[s])}};
        if (with_values) real_line["values"] = chain.samples[s];
        lines << real_line.dump() << "\n";
      }
      break;
    }
    lines << line.dump() << "\n";
  }
  json header{{"run_config", cfg.to_json()}};
  emit(cfg, header.dump() + "\n" + lines.str());
  return 0;
}

lip::SweepSpec sweep_from_config(const RunConfig& cfg, const std::string& path) {
  auto file = lip::read_config_file(path);
  lip::SweepSpec spec;
  auto ints = [&](const std::string& key, auto& dest) {
    if (!file.count(key)) return;
    std::stringstream ss(file.at(key));
    std::string item;
    dest.clear();
    while (std::getline(ss, item, ',')) dest.push_back(std::stoll(item));
  };
  ints("grid.n", spec.n_values);
  ints("grid.k", spec.k_values);
  ints("grid.M", spec.m_values);
  if (file.count("grid.model")) {
    const auto& m = file.at("grid.model");
    spec.model = m == "hom" ? lip::Model::ZHomomorphism
                            : (m == "real" ? lip::Model::RealLipschitz : lip::Model::MLipschitz);
  }
  if (file.count("run.method")) {
    const auto& m = file.at("run.method");
    spec.method = m == "cftp" ? lip::Method::Cftp
                              : (m == "mcmc" ? lip::Method::Mcmc : lip::Method::Exact);
  }
  if (file.count("run.trials")) spec.trials = std::stoi(file.at("run.trials"));
  if (file.count("run.ideal_edges")) spec.compute_ideal_edges = file.at("run.ideal_edges") == "true";
  spec.seed = file.count("run.seed") ? std::stoull(file.at("run.seed")) : cfg.seed;
  if (spec.n_values.empty() || spec.k_values.empty())
    throw CLI::ValidationError("sweep config needs grid.n and grid.k");
  if (spec.m_values.empty()) spec.m_values = {1};
  return spec;
}

std::string model_name(lip::Model m) {
  switch (m) {
    case lip::Model::ZHomomorphism: return "hom";
    case lip::Model::RealLipschitz: return "real";
    default: return "mlip";
  }
}

int run_sweep(const RunConfig& cfg, const std::string& config_path, bool plot_data) {
  lip::SweepSpec spec = sweep_from_config(cfg, config_path);

  // Grid points are independent; fan them out over the worker cap.
  std::vector<std::tuple<int, int, std::int64_t>> points;
  const auto ms = spec.model == lip::Model::ZHomomorphism ? std::vector<std::int64_t>{1}
                                                          : spec.m_values;
  for (int n : spec.n_values)
    for (std::int64_t M : ms)
      for (int k : spec.k_values) points.emplace_back(n, k, M);
  std::vector<lip::ResultRow> rows(points.size());
  const int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        auto [n, k, M] = points[i];
        rows[i] = lip::sweep_point(n, k, M, spec);
      }
    });
  for (auto& t : pool) t.join();

  std::ostringstream out;
  if (cfg.format == "jsonl") {
    out << json{{"run_config", cfg.to_json()}, {"sweep_config", config_path}}.dump() << "\n";
    for (const auto& r : rows)
      out << json{{"n", r.n}, {"k", r.k}, {"M", r.M}, {"model", model_name(r.model)},
                  {"pr_range_le", r.pr_range_le}, {"pr_range_le_rational", r.pr_range_le_rational},
                  {"epsilon", r.epsilon}, {"ideal_edge_prob", r.ideal_edge_prob},
                  {"ci_halfwidth", r.ci_halfwidth}, {"mean_range", r.mean_range},
                  {"wall_ms", r.wall_ms}, {"error", r.error}}
                 .dump()
          << "\n";
  } else if (plot_data) {
    // gnuplot-ready: k then Pr(R <= M+1), one block per (n, M)
    int last_n = -1;
    std::int64_t last_m = -1;
    for (const auto& r : rows) {
      if (r.n != last_n || r.M != last_m) {
        out << "# n=" << r.n << " M=" << r.M << "\n";
        last_n = r.n;
        last_m = r.M;
      }
      out << r.k << ' ' << lip::format_real(r.pr_range_le) << "\n";
    }
  } else {
    out << "# " << cfg.to_json().dump() << "\n";
    out << "n,k,M,model,method,pr_range_le,pr_range_le_rational,epsilon,ideal_edge_prob,"
           "ci_halfwidth,mean_range,median_range,wall_ms,error\n";
    for (const auto& r : rows)
      out << r.n << ',' << r.k << ',' << r.M << ',' << model_name(r.model) << ','
          << (r.method == lip::Method::Exact ? "exact"
                                             : r.method == lip::Method::Cftp ? "cftp" : "mcmc")
          << ',' << lip::format_real(r.pr_range_le) << ',' << r.pr_range_le_rational << ','
          << lip::format_real(r.epsilon) << ',' << lip::format_real(r.ideal_edge_prob) << ','
          << lip::format_real(r.ci_halfwidth) << ',' << lip::format_real(r.mean_range) << ','
          << r.median_range << ',' << lip::format_real(r.wall_ms) << ',' << r.error << "\n";
  }
  emit(cfg, out.str());
  return 0;
}

int run_verify(const RunConfig& cfg, int r, double threshold) {
  lip::Graph g = lip::load_graph(cfg.graph);
  lip::CftpOptions options;
  options.max_total_updates = cfg.max_updates;
  auto check = lip::verify_range_lower_bound(g, 0, cfg.M, r, cfg.trials, cfg.seed, threshold,
                                             options);
  json out{{"run_config", cfg.to_json()},
           {"r", r},
           {"p_hat", check.p_hat},
           {"ci", {check.ci_lo, check.ci_hi}},
           {"threshold", check.threshold},
           {"pass", check.pass}};
  emit(cfg, out.dump(2) + "\n");
  return check.pass ? 0 : 1;
}

int run_construct(const RunConfig& cfg, int center, int radius, const std::string& boundary_csv,
                  std::uint64_t limit, bool emit_functions) {
  lip::Graph g = lip::load_graph(cfg.graph);
  auto ball = lip::ball(g, center, radius);
  std::ifstream in(boundary_csv);
  if (!in) throw CLI::ValidationError("cannot open assignment CSV: " + boundary_csv);
  lip::PartialAssignment f = lip::read_int_assignment_csv(in);

  std::ostringstream payload;
  json header{{"run_config", cfg.to_json()}, {"center", center}, {"radius", radius}};
  if (cfg.M == 1) {
    auto h = lip::lift_one_lipschitz(g, ball, f);
    header["family_size"] = "1";
    payload << header.dump() << "\n";
    if (emit_functions) {
      std::ostringstream csv;
      lip::write_assignment_csv(csv, h);
      payload << csv.str();
    }
  } else {
    auto family = lip::generate_high_extensions(g, ball, f, cfg.M, emit_functions ? limit : 0);
    header["family_size"] = family.family_size.get_str();
    header["high_set"] = family.decomposition.high_set;
    header["q_star"] = family.decomposition.q_star;
    header["free_vertices"] = family.free_vertices;
    payload << header.dump() << "\n";
    for (const auto& fn : family.functions) {
      std::ostringstream csv;
      lip::write_assignment_csv(csv, fn);
      payload << csv.str() << "\n";
    }
  }
  emit(cfg, payload.str());
  return 0;
}

int run_entropy(const RunConfig& cfg) {
  lip::Graph g = lip::load_graph(cfg.graph);
  const lip::ModelKind kind = model_kind(cfg);
  auto joint = lip::exact_field_distribution(g, 0, kind, cfg.oracle_cap);
  std::vector<int> all(joint.coordinate_count());
  for (int i = 0; i < joint.coordinate_count(); ++i) all[i] = i;
  json out{{"run_config", cfg.to_json()},
           {"count", std::to_string(joint.outcomes.size())},
           {"entropy_bits", lip::entropy(joint)}};
  int n, k;
  if (cnk_params(cfg.graph, n, k) && kind.model == lip::Model::MLipschitz) {
    auto cover = lip::build_cnk_shearer_cover(n, k);
    auto bound = lip::shearer_bound(joint, cover);
    out["shearer_lhs"] = bound.lhs;
    out["shearer_rhs"] = bound.rhs;
    out["slack"] = bound.slack();
  }
  emit(cfg, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Lipschitz functions on graphs: exact counting, sampling, experiments"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* count = app.add_subcommand("count", "exact counts and window probabilities");
  add_common(count, cfg);

  bool with_values = false;
  auto* sample = app.add_subcommand("sample", "draw samples, one JSON line each");
  add_common(sample, cfg);
  sample->add_option("--method", cfg.method)->check(CLI::IsMember({"cftp", "exact", "mcmc"}));
  sample->add_option("--trials", cfg.trials);
  sample->add_flag("--values", with_values, "include full assignments");

  std::string sweep_config;
  bool plot_data = false;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep from a config file");
  add_common(sweep, cfg);
  sweep->add_option("--config", sweep_config)->required();
  sweep->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "jsonl"}));
  sweep->add_flag("--plot-data", plot_data, "two-column gnuplot output");

  int verify_r = 2;
  double verify_threshold = 0.01;
  auto* verify = app.add_subcommand("verify", "range lower-bound check via CFTP");
  add_common(verify, cfg);
  verify->add_option("--r", verify_r);
  verify->add_option("--trials", cfg.trials);
  verify->add_option("--threshold", verify_threshold);

  int center = 0, radius = 1;
  std::string boundary_csv;
  std::uint64_t limit = 100;
  bool emit_functions = false;
  auto* construct = app.add_subcommand("construct", "high extensions / M=1 lift on a ball");
  add_common(construct, cfg);
  construct->add_option("--center", center);
  construct->add_option("--radius", radius);
  construct->add_option("--boundary", boundary_csv, "assignment CSV over the ball")->required();
  construct->add_option("--limit", limit, "max functions to emit");
  construct->add_flag("--emit-functions", emit_functions);

  auto* entropy = app.add_subcommand("entropy", "exact entropy and Shearer bound");
  add_common(entropy, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (count->parsed()) return (cfg.subcommand = "count", run_count(cfg));
    if (sample->parsed()) return (cfg.subcommand = "sample", run_sample(cfg, with_values));
    if (sweep->parsed()) return (cfg.subcommand = "sweep", run_sweep(cfg, sweep_config, plot_data));
    if (verify->parsed()) return (cfg.subcommand = "verify", run_verify(cfg, verify_r, verify_threshold));
    if (construct->parsed())
      return (cfg.subcommand = "construct",
              run_construct(cfg, center, radius, boundary_csv, limit, emit_functions));
    if (entropy->parsed()) return (cfg.subcommand = "entropy", run_entropy(cfg));
  } catch (const lip::EnumerationCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lip::StateCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lip::NoCoalescence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
