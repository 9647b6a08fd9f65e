#include <doctest.h>

#include "biharm/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace biharm;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("biharm_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve writes one row per grid point") {
  const auto r = run({"solve", "--problem", "counterexample", "--grid", "16x64"});
  REQUIRE(r.code == kExitOk);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 1 + 16 * 64);
  CHECK(lines[0] == "re_z,im_z,re_f,im_f,abs_f");
}

TEST_CASE("solve on the constant source reproduces (1-|z|^2)^2") {
  const auto r = run({"solve", "--problem", "constant:64", "--grid", "8x8", "--n-r", "128"});
  REQUIRE(r.code == kExitOk);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 65);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    double re_z, im_z, re_f, im_f, abs_f;
    char c;
    std::istringstream row(lines[k]);
    row >> re_z >> c >> im_z >> c >> re_f >> c >> im_f >> c >> abs_f;
    const double d = 1 - re_z * re_z - im_z * im_z;
    CHECK(std::abs(re_f - d * d) < 1e-8);
    CHECK(std::abs(im_f) < 1e-12);
  }
}

TEST_CASE("solve JSON output") {
  const auto r = run({"solve", "--problem", "constant:1", "--grid", "2x4", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["rows"].size() == 8);
  CHECK(doc["problem"] == "constant:1");
}

TEST_CASE("solve reads a problem file") {
  const auto path = temp_file("problem.json");
  {
    std::ofstream f(path);
    f << R"j({"name": "identity", "f_star": "exp(i*t)", "phi": "0", "g": "0"})j";
  }
  const auto r = run({"solve", "--problem", path.string(), "--grid", "3x3"});
  REQUIRE(r.code == kExitOk);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 10);
  double re_z, im_z, re_f, im_f;
  char c;
  std::istringstream row(lines[5]);
  row >> re_z >> c >> im_z >> c >> re_f >> c >> im_f;
  CHECK(re_f == doctest::Approx(re_z).epsilon(1e-10));
  CHECK(im_f == doctest::Approx(im_z).epsilon(1e-10));
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"solve", "--problem", "missing.json"}).code == kExitUsage);
  CHECK(run({"solve", "--grid", "4by4"}).code == kExitUsage);
  CHECK(run({"solve", "--n-theta", "100"}).code == kExitUsage);
  CHECK(run({"solve", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"verify", "thm9"}).code == kExitUsage);
  CHECK(run({"verify", "thm2", "--q", "1.5"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);

  const auto bad = temp_file("bad.json");
  {
    std::ofstream f(bad);
    f << R"j({"f_star": "exp(i*", "phi": "0", "g": "0"})j";
  }
  const auto r = run({"solve", "--problem", bad.string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("offset") != std::string::npos);
  std::filesystem::remove(bad);
}

TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).code == kExitOk); }

TEST_CASE("non-convergence exits with 3 and flushes a status column") {
  const auto r = run({"solve", "--problem", "counterexample", "--grid", "40x4", "--n-theta", "8", "--n-theta-max", "16"});
  CHECK(r.code == kExitNoConvergence);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 161);
  CHECK(lines[0] == "re_z,im_z,re_f,im_f,abs_f,status");
  CHECK(lines[1].ends_with(",ok"));
  CHECK(lines.back().ends_with(",no_convergence"));
}

TEST_CASE("verify thm1 reports the threshold row") {
  const auto r = run({"verify", "thm1"});
  CHECK(r.code == kExitAssertion);
  CHECK(r.out.find("thm1/ratio-above-1e3") != std::string::npos);
  CHECK(r.out.find("# failure: row=") != std::string::npos);
  CHECK(r.out.find("# summary: suite=thm1") != std::string::npos);
}

TEST_CASE("verify lemmas passes") {
  const auto r = run({"verify", "lemmas", "--seed", "7"});
  CHECK(r.code == kExitOk);
  CHECK(data_lines(r.out)[0] == "check_id,re_z1,im_z1,re_z2,im_z2,measured,bound,margin,pass");
}

TEST_CASE("verify writes JSON to a file") {
  const auto path = temp_file("thm1.json");
  const auto r = run({"verify", "thm1", "--format", "json", "--out", path.string()});
  CHECK(r.code == kExitAssertion);
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["suite"] == "thm1");
  CHECK(doc["summary"]["failed"] == 1);
  CHECK(doc["summary"]["failures"][0]["check_id"] == "thm1/ratio-above-1e3");
  std::filesystem::remove(path);
}

TEST_CASE("unwritable output exits with 2") {
  CHECK(run({"verify", "thm1", "--out", "/nonexistent-dir/x.csv"}).code == kExitUsage);
}

TEST_CASE("kernels prints a table") {
  const auto r = run({"kernels", "--z", "0.5,0", "--w", "0,0", "--t", "0"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("poisson,3,0") != std::string::npos);
  CHECK(run({"kernels", "--z", "1,0"}).code == kExitUsage);
  const auto j = run({"kernels", "--format", "json"});
  REQUIRE(j.code == kExitOk);
  CHECK(nlohmann::json::parse(j.out)["values"].contains("green"));
}

TEST_CASE("bench emits timing rows") {
  const auto r = run({"bench", "--problem", "constant:64", "--n-theta", "16"});
  REQUIRE(r.code == kExitOk);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "op,n_r,n_theta,median_ns,p95_ns");
  CHECK(lines[1].starts_with("green_potential,32,16,"));
  const auto j = run({"bench", "--problem", "constant:64", "--n-theta", "16", "--format", "json"});
  REQUIRE(j.code == kExitOk);
  CHECK(nlohmann::json::parse(j.out)["rows"].size() == 8);
}

}  // TEST_SUITE
