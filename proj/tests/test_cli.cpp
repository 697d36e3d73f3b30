#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "weilsum/cli.hpp"

using weilsum::cli::main_with_args;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = main_with_args(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
  std::ofstream(path) << text;
  return path;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("compute-sum") {
  const auto r = call({"compute-sum", "--gram", "[[2]]", "--alpha", "1/2", "--beta", "1/2", "--m", "1", "--n", "1",
                       "--c", "5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::stod(j["re"].get<std::string>()) == doctest::Approx(2.558336368008463).epsilon(1e-14));
  CHECK(std::abs(std::stod(j["im"].get<std::string>())) < 1e-40);
  CHECK(j["k"] == "1/2");
  CHECK(j["sigma"] == 0);

  // index condition fails
  CHECK(call({"compute-sum", "--gram", "[[2]]", "--alpha", "1/2", "--m", "2", "--c", "3"}).code == 2);
}

TEST_CASE("config files, with flags taking precedence") {
  const std::string lat = temp_file("weilsum_cli_lattice.json", R"({"gram": [[2]]})");
  const std::string cfg = temp_file("weilsum_cli_config.json",
                                    R"({"mode": "compute-sum", "lattice": ")" + lat +
                                        R"(", "alpha": "1/2", "beta": "1/2", "m": 1, "n": 1, "c": 1})");
  const auto a = call({"--config", cfg});
  REQUIRE(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["c"] == 1);
  const auto b = call({"compute-sum", "--config", cfg, "--c", "5"});
  REQUIRE(b.code == 0);
  CHECK(nlohmann::json::parse(b.out)["c"] == 5);
  const auto c = call({"compute-sum", "--c", "5", "--config", cfg});
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["c"] == 5);

  const std::string bad = temp_file("weilsum_cli_bad.json", R"({"mode": "compute-sum", "no_such_flag": 3})");
  CHECK(call({"--config", bad}).code == 2);
  const std::string broken = temp_file("weilsum_cli_broken.json", "{not json");
  CHECK(call({"compute-sum", "--config", broken}).code == 2);
}

TEST_CASE("error exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"no-such-mode"}).code == 2);
  CHECK(call({"compute-sum", "--gram", "[[3]]"}).code == 2);
  CHECK(call({"compute-sum", "--gram", "[[2,1]]"}).code == 2);
  CHECK(call({"compute-sum", "--gram", "not json"}).code == 2);
  CHECK(call({"compute-sum", "--lattice", "/nonexistent/lattice.json"}).code == 2);
  CHECK(call({"compute-sum", "--gram", "[[2]]", "--c", "abc"}).code == 2);
  CHECK(call({"verify-identity", "--gram", "[[2]]", "--m-range", "5:1"}).code == 2);
  CHECK(call({"verify-identity", "--gram", "[[2,0],[0,2]]"}).code == 2);
  // rank five with c^5 beyond the enumeration budget
  const auto r = call({"compute-sum", "--gram", "[[2,0,0,0,0],[0,2,0,0,0],[0,0,2,0,0],[0,0,0,2,0],[0,0,0,0,2]]",
                       "--m", "0", "--n", "0", "--c", "60"});
  CHECK(r.code == 3);
  CHECK(r.err.find("budget") != std::string::npos);
  CHECK(call({"compute-sum", "--help"}).code == 0);
}

TEST_CASE("verify-identity sweeps are deterministic") {
  const std::vector<std::string> base = {"verify-identity", "--gram", "[[6]]", "--m-range", "-12:12", "--n-range",
                                         "-12:12", "--c-max", "4", "--v-max", "5"};
  const auto a = call(base);
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("alpha,beta,m,n,c,v,lhs_re,lhs_im,rhs_re,rhs_im,residual\n", 0) == 0);
  CHECK(lines(a.out) > 100);
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto b = call(threaded);
  const auto c = call(base);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto json = base;
  json.insert(json.end(), {"--format", "json"});
  const auto j = nlohmann::json::parse(call(json).out);
  CHECK(j.size() + 1 == lines(a.out));

  const auto r3 = call({"verify-identity", "--gram", "[[2,0,0],[0,2,0],[0,0,2]]", "--m-range", "-12:12",
                        "--n-range", "-12:12", "--c-max", "3", "--v-max", "3", "--chi-mode", "definition"});
  CHECK(r3.code == 0);
  // a tolerance no sum can meet
  const auto tight = call({"verify-identity", "--gram", "[[2]]", "--m-range", "1:1", "--n-range", "1:1",
                           "--c-max", "1", "--v-max", "0", "--prec-bits", "64", "--tol", "1e-300"});
  CHECK(tight.code == 1);
  CHECK(nlohmann::json::parse(tight.err)["failures"].size() == 1);
}

TEST_CASE("classical identities") {
  const auto k = call({"verify-theta", "--m-range", "-4:8", "--n-range", "0:12", "--c-max", "4", "--v-max", "4"});
  CHECK(k.code == 0);
  CHECK(lines(k.out) > 50);
  const auto a = call({"verify-eta", "--m-range", "1:1", "--n-range", "1:49", "--c-max", "5", "--v-max", "7"});
  CHECK(a.code == 0);
  CHECK(a.out.find("\n1,49,5,7,") != std::string::npos);
}

TEST_CASE("verify-bound") {
  const auto r = call({"verify-bound", "--gram", "[[4]]", "--m-range", "-20:20", "--n-range", "-20:20", "--c-max",
                       "6", "--prec-bits", "96"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("lattice_id,alpha,beta,m0,v,n,c,abs_S,rhs,ratio\n", 0) == 0);
  const auto tight = call({"verify-bound", "--gram", "[[4]]", "--m-range", "1:1", "--n-range", "1:1", "--c-max",
                           "3", "--constant", "0.001"});
  CHECK(tight.code == 1);
  const auto unknown = call({"verify-bound", "--gram", "[[8]]", "--m-range", "1:1", "--n-range", "1:1"});
  CHECK(unknown.code == 0);
  CHECK(unknown.err.find("no recorded constant") != std::string::npos);
}

TEST_CASE("gauss-table and weilrep-matrix") {
  const auto g = call({"gauss-table", "--kind", "plain", "--c-max", "4"});
  REQUIRE(g.code == 0);
  CHECK(g.out.rfind("kind,params,re,im\nplain,c=1,", 0) == 0);
  CHECK(lines(g.out) == 5);
  CHECK(call({"gauss-table", "--kind", "twisted-odd", "--p", "5", "--lambda-max", "2", "--n-range", "0:4"}).code ==
        0);
  CHECK(call({"gauss-table", "--kind", "quadratic-form", "--gram", "[[2,1],[1,2]]", "--c-max", "9"}).code == 0);
  CHECK(call({"gauss-table", "--kind", "pow2", "--lambda-max", "3", "--n-range", "0:2", "--gauss-mode", "brute"})
            .code == 0);
  CHECK(call({"gauss-table", "--kind", "nonsense"}).code == 2);

  const auto w = call({"weilrep-matrix", "--gram", "[[2]]", "--gamma", "0,-1,1,0"});
  REQUIRE(w.code == 0);
  const auto j = nlohmann::json::parse(w.out);
  CHECK(j["index"].size() == 2);
  CHECK(std::stod(j["entries"][1][1]["re"].get<std::string>()) == doctest::Approx(-0.5));
  CHECK(std::stod(j["entries"][1][1]["im"].get<std::string>()) == doctest::Approx(0.5));
  CHECK(call({"weilrep-matrix", "--gram", "[[2]]", "--gamma", "1,1,1,1"}).code == 2);
  CHECK(call({"weilrep-matrix", "--gram", "[[2]]", "--gamma", "1,2"}).code == 2);
}
