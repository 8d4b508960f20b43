#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "olgdet/cli.hpp"
#include "olgdet/errors.hpp"
#include "olgdet/sweep.hpp"

using namespace olgdet;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = std::string(OLGDET_TEST_TMP) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

const char* kCobbDouglasJson =
    R"({"beta":0.5,"production":{"variant":"ces","A":1,"alpha":0.3,"rho":1,"delta":1}})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("steady lists both steady states") {
  const std::string cfg = write_temp("cd.json", kCobbDouglasJson);
  const Run r = run({"steady", "--config", cfg});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const json& ss = doc["steady_states"];
  REQUIRE(ss.size() == 2);
  CHECK(ss[0]["kind"] == "non_monetary");
  CHECK(ss[0]["class"] == "locally_indeterminate_sink");
  CHECK(std::abs(ss[0]["k"].get<double>() - 0.22318686648016773) < 1e-10);
  CHECK(ss[1]["kind"] == "monetary");
  CHECK(ss[1]["class"] == "locally_determinate_saddle");
  CHECK(std::abs(ss[1]["P"].get<double>() - 0.029845517489818969) < 1e-10);
  CHECK(doc["closed_form"]["agrees_with_solver"] == true);
}

TEST_CASE("global flags may follow the subcommand") {
  const std::string cfg = write_temp("cd.json", kCobbDouglasJson);
  CHECK(run({"--config", cfg, "steady"}).out == run({"steady", "--config", cfg}).out);
}

TEST_CASE("domain errors exit 2 with a message") {
  const std::string bad = write_temp(
      "bad.json", R"({"beta":0.5,"production":{"variant":"ces","A":1,"alpha":1.5,"rho":1,"delta":1}})");
  Run r = run({"steady", "--config", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("alpha") != std::string::npos);
  CHECK(r.out.empty());

  const std::string broken = write_temp("broken.json", "{\"beta\": 0.5,");
  CHECK(run({"steady", "--config", broken}).code == 2);
  CHECK(run({"steady", "--bogus"}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({}).code == 2);
  const std::string missing = write_temp("missing.json", R"({"production":{"A":1,"alpha":0.3,"rho":1,"delta":1}})");
  r = run({"steady", "--config", missing});
  CHECK(r.code == 2);
  CHECK(r.err.find("beta") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("classify prints a verdict and a record per steady state") {
  const std::string cfg = write_temp("cd.json", kCobbDouglasJson);
  const Run r = run({"classify", "--config", cfg});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[2].find("locally_determinate_saddle") != std::string::npos);
  const json mss = json::parse(ls[3]);
  CHECK(std::abs(mss["t"].get<double>() - 1.4666666666666667) < 1e-10);
  CHECK(std::abs(mss["d"].get<double>() - 0.35) < 1e-10);
  CHECK(mss["certificate"]["certified"] == true);
}

TEST_CASE("simulate writes the path csv") {
  const std::string cfg = write_temp("cd.json", kCobbDouglasJson);
  const Run r = run({"simulate", "--config", cfg, "--k0", "0.1", "--T", "5"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 7);
  CHECK(ls[0] == "t,k,P,residual1,residual2");
  CHECK(ls[2].rfind("1,1.7541553176954530e-01,", 0) == 0);
}

TEST_CASE("reverse output loads back as a model") {
  const Run r = run({"reverse", "--beta", "0.5", "--delta", "1", "--k", "1", "--lambda1", "1.2", "--lambda2", "1.5"});
  REQUIRE(r.code == 0);
  const std::string cfg = write_temp("rev.json", r.out);
  const Run s = run({"steady", "--config", cfg});
  REQUIRE(s.code == 0);
  const json doc = json::parse(s.out);
  REQUIRE(doc["steady_states"].size() == 3);
  CHECK(std::abs(doc["steady_states"][0]["lambda1"].get<double>() - 1.2) < 1e-8);

  const Run big = run({"reverse", "--kstar", "1", "--R", "0.5", "--w", "1.5"});
  CHECK(big.code == 0);
  CHECK(big.err.find("warning") != std::string::npos);
  CHECK(run({"reverse", "--kstar", "1"}).code == 2);
}

TEST_CASE("shoot and probe") {
  const std::string cfg = write_temp(
      "l2.json",
      R"({"beta":1,"production":{"variant":"local_quadratic","w":2,"R":1.1,"c":0,"kstar":1},"utility":{"u":{"family":"log"},"v":{"family":"log"}}})");
  const Run s = run({"shoot", "--config", cfg, "--k0", "1.001"});
  REQUIRE(s.code == 0);
  CHECK(std::abs(json::parse(s.out)["P0"].get<double>()) < 1e-10);
  const Run p = run({"probe", "--config", cfg, "--ss-index", "0", "--n", "50"});
  REQUIRE(p.code == 0);
  CHECK(json::parse(p.out)["n"] == 50);
  CHECK(run({"probe", "--config", cfg, "--ss-index", "5"}).code == 2);
}

TEST_CASE("endow") {
  const Run r = run({"endow", "--a", "2", "--b", "1", "--beta", "1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc["mss_price"].get<double>() - 0.5) < 1e-10);
  CHECK(doc["nmss_class"] == "locally_indeterminate");
  CHECK(doc["mss_class"] == "locally_determinate");
  CHECK(run({"endow", "--a", "-2", "--b", "1", "--beta", "1"}).code == 2);
}

TEST_CASE("--out writes to a file") {
  const std::string cfg = write_temp("cd.json", kCobbDouglasJson);
  const std::string path = std::string(OLGDET_TEST_TMP) + "/steady_out.json";
  const Run r = run({"steady", "--config", cfg, "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == run({"steady", "--config", cfg}).out);
}

TEST_CASE("one-point sweep") {
  const std::string cfg = write_temp("cd.json", kCobbDouglasJson);
  const Run r = run({"sweep", "--config", cfg});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  const auto h = fields(ls[0]);
  const auto row = fields(ls[1]);
  REQUIRE(h.size() == 25);
  REQUIRE(row.size() == 25);
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < h.size(); ++i) if (h[i] == name) return row[i];
    FAIL("no column " << name);
    return std::string();
  };
  CHECK(col("mss_exists_solver") == "true");
  CHECK(col("mss_agree") == "true");
  CHECK(col("n_nmss") == "1");
  CHECK(col("nmss1_class") == "locally_indeterminate_sink");
  CHECK(col("status") == "ok");
}

TEST_CASE("sweep edge cases") {
  sweep::SweepSpec spec;
  spec.ranges.push_back(sweep::parse_range("A:1:2:0"));
  std::ostringstream os;
  sweep::run_sweep(spec, os);
  CHECK(os.str() == sweep::csv_header() + "\n");

  CHECK_THROWS_AS(sweep::parse_range("A:1:2"), DomainError);
  CHECK_THROWS_AS(sweep::parse_range("A:x:2:3"), DomainError);
  sweep::SweepSpec big;
  big.ranges = {sweep::parse_range("A:1:2:2000"), sweep::parse_range("rho:0.5:2:1000")};
  CHECK_THROWS_AS(sweep::validate(big), DomainError);
  sweep::SweepSpec off;
  off.ranges = {sweep::parse_range("alpha:0.5:1.5:3")};
  CHECK_THROWS_AS(sweep::validate(off), DomainError);
  CHECK(run({"sweep", "--range", "A:1:2:2000", "--range", "rho:0.5:2:1000"}).code == 2);
}

TEST_CASE("rho sweep follows the nmss existence index") {
  sweep::SweepSpec spec;
  spec.fixed = {0.5, 3.5, 3.0 / 7.0, 1.0, 1.0};
  spec.ranges = {sweep::parse_range("rho:0.5:4:36")};
  std::ostringstream os;
  sweep::run_sweep(spec, os);
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 37);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto row = fields(ls[i]);
    const double rho = std::stod(row[3]);
    const int n = std::stoi(row[14]);
    if (rho <= 1.0) {
      CHECK(n == 1);
    } else {
      const double index = std::stod(row[15]);
      CHECK(n == (index < 1.0 ? 2 : 0));
    }
  }
}

TEST_CASE("sweep output does not depend on thread count") {
  sweep::SweepSpec spec;
  spec.fixed = {0.5, 3.5, 3.0 / 7.0, 2.8, 1.0};
  spec.ranges = {sweep::parse_range("A:0.5:8:40:log"), sweep::parse_range("delta:0.3:1:5")};
  std::ostringstream one, many;
  spec.threads = 1;
  sweep::run_sweep(spec, one);
  spec.threads = 7;
  sweep::run_sweep(spec, many);
  CHECK(one.str() == many.str());
}

}
