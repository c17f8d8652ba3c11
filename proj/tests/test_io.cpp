#include <doctest.h>

#include <liprange/io.hpp>

#include <filesystem>
#include <sstream>

using namespace lip;

TEST_CASE("edge list round trip") {
  Graph g = build_layered_cycle(6, 2);
  std::stringstream buf;
  write_edge_list(buf, g);
  Graph back = read_edge_list(buf);
  REQUIRE(back.vertex_count() == g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) CHECK(back.neighbors(v) == g.neighbors(v));
  std::stringstream bad("3");
  CHECK_THROWS_AS(read_edge_list(bad), std::runtime_error);
}

TEST_CASE("generator specs") {
  Graph g = load_graph("cnk:n=6,k=3");
  CHECK(g.vertex_count() == 18);
  CHECK_THROWS_AS(load_graph("cnk:n=6"), std::runtime_error);
  CHECK_THROWS_AS(load_graph("cnk:n=6,q=3"), std::runtime_error);
  CHECK_THROWS_AS(load_graph("/no/such/file"), std::runtime_error);
}

TEST_CASE("assignment csv round trip with 17 significant digits") {
  std::map<int, double> values{{0, 0.0}, {3, 1.0 / 3.0}, {7, -2.718281828459045}};
  std::stringstream buf;
  write_assignment_csv(buf, values);
  CHECK(buf.str().rfind("vertex,value\n", 0) == 0);
  auto back = read_assignment_csv(buf);
  REQUIRE(back.size() == 3);
  for (const auto& [v, x] : values) CHECK(back.at(v) == x);  // bit-exact
}

TEST_CASE("integer assignment csv") {
  std::stringstream buf("vertex,value\n0,0\n5,-3\n");
  auto values = read_int_assignment_csv(buf);
  CHECK(values.at(5) == -3);
  std::stringstream bad("vertex,value\nnonsense\n");
  CHECK_THROWS_AS(read_int_assignment_csv(bad), std::runtime_error);
}

TEST_CASE("config files: sections, comments, trimming") {
  std::stringstream buf(
      "seed = 7   # master seed\n"
      "\n"
      "[grid]\n"
      "n = 4,6,8\n"
      "k= 1,2\n"
      "[run]\n"
      "method =cftp\n");
  auto config = read_config(buf);
  CHECK(config.at("seed") == "7");
  CHECK(config.at("grid.n") == "4,6,8");
  CHECK(config.at("grid.k") == "1,2");
  CHECK(config.at("run.method") == "cftp");
  std::stringstream bad("[grid]\njust words\n");
  CHECK_THROWS_AS(read_config(bad), std::runtime_error);
}

TEST_CASE("atomic write leaves no temp file behind") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "liprange_io_test.txt";
  write_file_atomic(path.string(), "payload\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "payload");
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  fs::remove(path);
}
