// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "graphcount/clique_poly.hpp"
#include "graphcount/io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string command = env + " " + std::string(GRAPHCOUNT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct Workspace {
  fs::path dir;
  Workspace() : dir(fs::temp_directory_path() / "graphcount_test_cli") {
    fs::create_directories(dir);
    write("chain.json", R"({"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]})");
    write("cycle.json",
          R"({"vertices": ["a", "b", "c", "d"], "edges": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]]})");
    write("counts.csv", "c,a,b\n1,0,2\n0,1,1\n3,0,0\n");
    write("bad.csv", "a,b,c\n1,x,2\n");
  }
  ~Workspace() { fs::remove_all(dir); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("sample and logpmf") {
  const Workspace w;
  const std::string nm = "--graph " + w("chain.json") + " --r 2 --x 0.1,0.2,0.3";
  const Run a = run("sample " + nm + " --n 50 --seed 9");
  CHECK(a.code == 0);
  CHECK(a.out.rfind("a,b,c\n", 0) == 0);
  CHECK(run("sample " + nm + " --n 50 --seed 9").out == a.out);
  CHECK(run("sample " + nm + " --n 50 --seed 10").out != a.out);
  CHECK(run("sample " + nm + " --n 50", "GRAPHCOUNT_SEED=9").out == a.out);
  CHECK(run("sample " + nm + " --n 50", "GRAPHCOUNT_SEED=nine").code == 2);

  // mult draws stay in the support.
  const Run m = run("sample --model mult --graph " + w("chain.json") + " --r 2 --y 0.5,1,2 --n 200 --seed 4");
  REQUIRE(m.code == 0);
  std::istringstream in(m.out);
  const auto table = graphcount::io::parse_csv(in);
  CHECK(table.rows.rows() == 200);
  const graphcount::DecomposableGraph chain(testing::chain3());
  for (Eigen::Index i = 0; i < table.rows.rows(); ++i) {
    CHECK(graphcount::in_mult_support(chain.structure(), table.rows.row(i).transpose(), 2));
  }

  const Run lp = run("logpmf " + nm + " --data " + w("counts.csv"));
  CHECK(lp.code == 0);
  std::istringstream lines(lp.out);
  std::string line;
  int count = 0;
  std::getline(lines, line);
  CHECK(line == "log_pmf");
  while (std::getline(lines, line)) {
    CHECK(std::stod(line) < 0.0);
    ++count;
  }
  CHECK(count == 3);

  CHECK(run("logpmf " + nm + " --data " + w("bad.csv")).code == 2);
  CHECK(run("logpmf " + nm + " --data " + w("missing.csv")).code == 3);
  CHECK(run("sample --graph " + w("cycle.json") + " --r 2 --x 0.1,0.1,0.1,0.1 --n 1").code == 2);
  CHECK(run("sample --graph " + w("chain.json") + " --r 2 --x 0.5,0.5,0.5 --n 1").code == 2);
  CHECK(run("sample --graph " + w("chain.json") + " --r 2 --x 0.1,0.1 --n 1").code == 2);
  CHECK(run("sample " + nm + " --n 1 --bogus").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("fit") {
  const Workspace w;
  const Run f = run("fit --graph " + w("chain.json") + " --data " + w("counts.csv") + " --r 2 --alpha 1 --beta 2");
  REQUIRE(f.code == 0);
  const json report = json::parse(f.out);
  CHECK(report["posterior"]["beta"].get<double>() == doctest::Approx(2.0 + 3 * 2.0));
  // Column order follows the graph, not the CSV header.
  CHECK(report["posterior"]["alpha"][0].get<double>() == doctest::Approx(2.0));
  CHECK(report["posterior"]["alpha"][2].get<double>() == doctest::Approx(5.0));
  CHECK(report.contains("log_marginal_likelihood"));
}

TEST_CASE("select") {
  const Workspace w;
  const std::string base = "select --data " + w("counts.csv") + " --r 2";
  const Run s = run(base + " --steps 2000 --seed 1");
  REQUIRE(s.code == 0);
  const json report = json::parse(s.out);
  CHECK(report["metadata"]["method"] == "mcmc");
  CHECK(report["metadata"]["burn_in"] == 200);
  CHECK(report["graphs"].size() <= 8);
  double total = 0.0;
  for (const auto& g : report["graphs"]) total += g["visit_fraction"].get<double>();
  CHECK(std::abs(total - 1.0) <= 1e-9);
  CHECK(run(base + " --steps 2000 --seed 1").out == s.out);

  const Run e = run(base + " --exact");
  REQUIRE(e.code == 0);
  const json exact = json::parse(e.out);
  CHECK(exact["graphs"].size() == 8);
  total = 0.0;
  for (const auto& g : exact["graphs"]) total += g["probability"].get<double>();
  CHECK(std::abs(total - 1.0) <= 1e-9);

  CHECK(run(base + " --steps 0").code == 2);
  CHECK(run(base + " --steps 100 --burn-in 100").code == 2);
  CHECK(run("select --data " + w("counts.csv") + " --r 1.5 --steps 100").code == 4);
  CHECK(run("select --data " + w("counts.csv") + " --r 0 --steps 100").code == 4);
  CHECK(run("select --data " + w("missing.csv") + " --r 2 --steps 100").code == 3);
}

TEST_CASE("verify") {
  const Run list = run("verify --list");
  CHECK(list.code == 0);
  CHECK(list.out.find("normalization") != std::string::npos);
  const Run one = run("verify --only normalization");
  CHECK(one.code == 0);
  CHECK(one.out.rfind("PASS", 0) == 0);
  const Run js = run("verify --only worked_examples --json");
  REQUIRE(js.code == 0);
  const json report = json::parse(js.out);
  CHECK(report.dump().find("\"passed\":true") != std::string::npos);
  CHECK(run("verify --only nonsense").code == 2);
}
