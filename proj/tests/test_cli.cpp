#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "irrtest/cli.hpp"
#include "reference_tables.hpp"

using irrtest::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

bool has_line(const std::string& text, const std::string& line) {
  const auto all = lines_of(text);
  return std::find(all.begin(), all.end(), line) != all.end();
}

}  // namespace

TEST_CASE("plan") {
  const auto ok = call({"plan", "-q", "5", "-n", "4", "-e", "0.005", "--compat-s258"});
  CHECK(ok.code == 0);
  CHECK(has_line(ok.out, "N=1103"));
  CHECK(has_line(ok.out, "threshold=303"));
  CHECK(has_line(ok.out, "feasible=true"));

  const auto inf = call({"plan", "-q", "2", "-n", "2", "-e", "0.005"});
  CHECK(inf.code == 2);
  CHECK(has_line(inf.out, "feasible=false"));

  CHECK(call({"plan", "-q", "1", "-n", "4"}).code == 1);
  CHECK(call({"plan", "-q", "5"}).code == 1);
  CHECK(call({"plan", "-q", "five", "-n", "4"}).code == 1);
  CHECK(call({}).code == 1);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("table") {
  const auto n = call({"--compat-s258", "table", "-e", "0.005", "--which", "N"});
  CHECK(n.code == 0);
  const auto rows = lines_of(n.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == "n\\q,2,3,5,7,11,13,17");
  for (std::size_t r = 0; r < 10; ++r) {
    std::ostringstream want;
    want << r + 1;
    for (const auto v : reference::kSamples[r]) {
      want << ',';
      if (v == 0) {
        want << "inf";
      } else {
        want << v;
      }
    }
    CHECK(rows[r + 1] == want.str());
  }

  const auto t = call({"table", "--which", "threshold", "--compat-s258"});
  CHECK(t.code == 0);
  CHECK(lines_of(t.out)[10] == "10,125,62,56,55,55,55,55");

  // A loose epsilon makes every cell feasible, and never needs more samples.
  const auto loose = call({"table", "--which", "N", "-e", "0.4"});
  CHECK(loose.code == 0);
  CHECK(loose.out.find("inf") == std::string::npos);
  CHECK(call({"table", "--which", "bogus"}).code == 1);
}

TEST_CASE("run") {
  const auto trap = call({"run", "-q", "7", "--fixture", "trap", "--fixture-seed", "42", "-N", "1000", "--seed", "42"});
  REQUIRE(trap.code == 0);
  const auto j = nlohmann::json::parse(trap.out);
  for (const char* key : {"q", "n", "N", "k", "p_hat", "half_width", "mode", "seed"}) CHECK(j.contains(key));
  CHECK(j["q"] == 7);
  CHECK(j["n"] == 4);
  CHECK(j["N"] == 1000);
  CHECK(j["mode"] == "sampled");
  CHECK(call({"run", "-q", "7", "--fixture", "trap", "--fixture-seed", "42", "-N", "1000", "--seed", "42"}).out ==
        trap.out);

  // The sampled estimate should cover the exact count over all 2401 points.
  const auto exact = nlohmann::json::parse(call({"run", "-q", "7", "--fixture", "trap", "--fixture-seed", "42", "--exact"}).out);
  CHECK(exact["mode"] == "exact");
  CHECK(exact["N"] == 2401);
  const double gamma = exact["p_hat"];
  CHECK(j["lower"].get<double>() <= gamma);
  CHECK(gamma <= j["upper"].get<double>());

  const auto test = call({"run", "-q", "11", "-n", "3", "--poly", "x1*x2 + x3", "--action", "test"});
  CHECK(test.code == 0);
  CHECK(nlohmann::json::parse(test.out)["outcome"] == "likely_irreducible");

  const auto det = call({"run", "-q", "2", "--fixture", "generic-det", "--rows", "2", "--cols", "2", "--exact"});
  CHECK(det.code == 0);
  CHECK(nlohmann::json::parse(det.out)["p_hat"] == 0.625);

  const auto reducible = call({"run", "-q", "11", "-n", "4", "--poly", "x1 + 1", "--poly", "x2", "--action", "test"});
  CHECK(reducible.code == 3);
  CHECK(nlohmann::json::parse(reducible.out)["outcome"] == "likely_reducible");

  const auto infeasible = call({"run", "-q", "11", "-n", "1", "--poly", "x1", "--action", "test"});
  CHECK(infeasible.code == 2);
  CHECK(nlohmann::json::parse(infeasible.out)["outcome"] == "infeasible");

  // Small domains are counted exactly when N would cover them anyway.
  const auto small = nlohmann::json::parse(call({"run", "-q", "3", "-n", "2", "--poly", "x1", "-N", "100"}).out);
  CHECK(small["mode"] == "exact");
  CHECK(small["k"] == 3);

  const auto workers = call({"run", "-q", "5", "-n", "3", "--poly", "x1*x2 - x3^2", "-N", "3000", "--workers", "3"});
  const auto single = call({"run", "-q", "5", "-n", "3", "--poly", "x1*x2 - x3^2", "-N", "3000"});
  CHECK(workers.out == single.out);
}

TEST_CASE("run errors") {
  CHECK(call({"run", "-q", "11", "--poly", "x1"}).code == 1);
  CHECK(call({"run", "-q", "3", "-n", "2", "--poly", "x1 +* 2"}).code == 1);
  CHECK(call({"run", "-q", "3", "-n", "2", "--poly", "x3"}).code == 1);
  CHECK(call({"run", "-q", "6", "-n", "2", "--poly", "x1"}).code == 1);
  CHECK(call({"run", "-n", "2", "--poly", "x1"}).code == 1);
  CHECK(call({"run", "-q", "3", "-n", "2"}).code == 1);
  CHECK(call({"run", "-q", "3", "-n", "2", "--poly", "x1", "--fixture", "trap"}).code == 1);
  CHECK(call({"run", "-q", "3", "--fixture", "nope"}).code == 1);
  CHECK(call({"run", "-q", "3", "-n", "3", "--fixture", "trap"}).code == 1);
  CHECK(call({"run", "-q", "3", "-n", "2", "--poly", "x1", "--action", "guess"}).code == 1);
  CHECK(call({"run", "-q", "3", "-n", "2", "--poly", "x1", "-N", "0"}).code == 1);
  CHECK(call({"run", "-q", "5", "--singular-curve", "8"}).code == 1);
  CHECK(call({"run", "--matrix", "/nonexistent/file"}).code == 1);
}

TEST_CASE("run with a matrix file and extension fields") {
  const std::string path = "test_cli_matrix.txt";
  {
    std::ofstream file(path);
    file << "2 2 4 2\nx1\nx2\nx3\nx4\n";
  }
  const auto r = call({"run", "--matrix", path, "--exact"});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["k"] == 10);
  CHECK(j["N"] == 16);

  const auto ext = nlohmann::json::parse(call({"run", "--field", "2^2:1,1,1", "-n", "2", "--poly", "x1 - g", "--exact"}).out);
  CHECK(ext["q"] == 4);
  CHECK(ext["k"] == 4);
  const auto by_order = nlohmann::json::parse(call({"run", "-q", "9", "-n", "1", "--poly", "x1^2 + 1", "--exact"}).out);
  CHECK(by_order["k"] == 2);

  const auto curve = nlohmann::json::parse(call({"run", "-q", "2", "--singular-curve", "3", "--exact"}).out);
  CHECK(curve["n"] == 10);
  CHECK(curve["k"] == 688);
  const auto c = nlohmann::json::parse(call({"run", "-q", "3", "--fixture", "curve-c", "--exact"}).out);
  CHECK(c["n"] == 5);
}

TEST_CASE("dist") {
  const auto single = call({"dist", "-q", "2", "-n", "1", "--kind", "single"});
  CHECK(single.code == 0);
  const auto rows = lines_of(single.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rfind("# ", 0) == 0);
  CHECK(rows[1] == "k,p_analytic,p_bruteforce");
  CHECK(rows[2] == "0,0.25,0.25");
  CHECK(rows[3] == "1,0.5,0.5");
  CHECK(rows[4] == "2,0.25,0.25");

  const auto product = call({"dist", "-q", "11", "-n", "4", "--kind", "product"});
  CHECK(product.code == 0);
  const auto prows = lines_of(product.out);
  CHECK(prows[0].find("expectation=0.1735537") != std::string::npos);
  CHECK(prows[1] == "k,p_analytic");
  CHECK(prows.size() == 14641 + 3);

  const auto det = call({"dist", "--kind", "det", "-q", "2", "--rows", "2", "--cols", "2"});
  CHECK(det.code == 0);
  CHECK(lines_of(det.out)[0].find("expectation=0.625") != std::string::npos);

  // Brute-force column equals the analytic one wherever both exist.
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"dist", "-q", "3", "-n", "1", "--kind", "intersection", "--x-size", "2"},
           {"dist", "-q", "2", "-n", "1", "--kind", "substitution", "--m", "1", "--x-size", "1"},
           {"dist", "-q", "2", "-n", "1", "--kind", "product"}}) {
    const auto r = call(args);
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    for (std::size_t i = 2; i < lines.size(); ++i) {
      const auto first = lines[i].find(',');
      const auto second = lines[i].find(',', first + 1);
      REQUIRE(second != std::string::npos);
      CHECK(lines[i].substr(first + 1, second - first - 1) == lines[i].substr(second + 1));
    }
  }
  CHECK(call({"dist", "-q", "2", "--kind", "weird"}).code == 1);
  CHECK(call({"dist", "-q", "2", "--kind", "substitution", "--x-size", "5"}).code == 1);
}
