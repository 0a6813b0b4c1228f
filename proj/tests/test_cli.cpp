#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nearsq/cli.hpp"

using nearsq::cli::run;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nearsq_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("threshold") {
  const auto r = call({"threshold", "--eta", "1", "--beta", "1", "--delta", "0.0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["k"] == 6);
  CHECK(j["delta_range"]["hi"] == "1/14");
  CHECK(j["alpha"]["exact"] == "1/6");
  CHECK(nlohmann::json::parse(call({"threshold", "--delta", "1/14"}).out)["k"] == 7);
}

TEST_CASE("weighted constant report") {
  const auto r = call({"constant", "--k", "4", "--delta", "0.01"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"delta", "k", "value", "value_unsimplified", "discrepancy", "quad_error"}) CHECK(j.contains(key));
  CHECK(j["k"] == 4);
  CHECK(j["flagged"] == true);
  // ordered fields
  CHECK(r.out.find("\"delta\"") < r.out.find("\"value\""));
}

TEST_CASE("experiment output is reproducible") {
  const std::vector<std::string> args{"experiment", "--N", "1000", "--density", "0.5", "--delta-exp", "0.05", "--seed", "1"};
  const auto a = call(args), b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["config"]["provenance"] == "bernoulli");
  CHECK(j["H"].get<std::uint64_t>() > 0);
  CHECK_FALSE(j.contains("timing"));
  CHECK(nlohmann::json::parse(call({"experiment", "--N", "500", "--delta", "0.1", "--timing"}).out).contains("timing"));
}

TEST_CASE("exit codes") {
  CHECK(call({"no-such-command"}).code == nearsq::cli::kUsage);
  CHECK(call({}).code == nearsq::cli::kUsage);
  CHECK(call({"threshold", "--bogus"}).code == nearsq::cli::kUsage);
  const auto regime = call({"threshold", "--eta", "1/2", "--beta", "1/2"});
  CHECK(regime.code == nearsq::cli::kRegime);
  CHECK(regime.err.find("regime-error") != std::string::npos);
  CHECK(call({"constant", "--k", "5", "--delta", "0.2"}).code == nearsq::cli::kRegime);
  CHECK(call({"experiment", "--N", "5000", "--delta", "0.1", "--budget", "100"}).code == nearsq::cli::kBudget);
  CHECK(call({"expsum-check", "--lemma", "quadruple", "--M", "300", "--N", "300"}).code == nearsq::cli::kBudget);
  CHECK(call({"sieve-fn", "--u", "20"}).code == nearsq::cli::kRange);
  CHECK(call({"sieve-fn", "--step", "0.01", "--tol", "1e-16"}).code == nearsq::cli::kAccuracy);
  CHECK(call({"mertens", "--z", "1000", "--limit", "10"}).code == nearsq::cli::kCoverage);
  CHECK(call({"psi-approx", "--H", "1"}).code == nearsq::cli::kInvalidArgument);
}

TEST_CASE("help names the formula") {
  const auto r = call({"threshold", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("floor(2/((eta+beta)/2 - 2/3 - 2delta/3))") != std::string::npos);
  CHECK(call({"constant", "--help"}).out.find("6/(1-2delta)") != std::string::npos);
  CHECK(call({"experiment", "--help"}).out.find("||sqrt(ab)|| < Delta") != std::string::npos);
  CHECK(call({"psi-approx", "--help"}).out.find("u(h) << 1/|h|") != std::string::npos);
}

TEST_CASE("csv and table formats") {
  const auto csv = call({"psi-approx", "--H", "2", "10", "--grid", "100", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("H,c1,c2,", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);
  CHECK(csv.out.find('\r') == std::string::npos);
  const auto table = call({"mertens", "--z", "10", "--format", "table"});
  CHECK(table.out.find("0.228571428571") != std::string::npos);
  const auto dump = call({"sieve-fn", "--dump", "--u-max", "6", "--step", "0.01", "--format", "csv"});
  CHECK(dump.out.rfind("u,F,f\n", 0) == 0);
}

TEST_CASE("expsum records are JSON lines") {
  const auto r = call({"expsum-check", "--lemma", "pair", "--N", "1000", "--X", "44.72"});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["lemma"] == "L23");
  CHECK(j["ratio"].get<double>() <= 1.0);
}

TEST_CASE("sweeps") {
  const auto empty = call({"sweep", "--what", "c-delta", "--k", "4", "--start", "0.02", "--stop", "0.01", "--step", "0.001"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "delta,k,value,value_unsimplified,discrepancy,quad_error,flagged,authoritative\n");

  const std::vector<std::string> args{"sweep", "--what", "c-delta", "--k", "4", "--start", "0.0001", "--stop", "0.0121",
                                      "--step", "0.0001", "--tol", "1e-7"};
  const auto full = call(args);
  REQUIRE(full.code == 0);
  CHECK(std::count(full.out.begin(), full.out.end(), '\n') == 122);

  // interrupted run: keep the signature and the first 40 rows, then resume
  const auto ck = scratch("sweep.ckpt");
  auto with_ck = args;
  with_ck.insert(with_ck.end(), {"--checkpoint", ck.string()});
  REQUIRE(call(with_ck).code == 0);
  std::ifstream in(ck);
  std::string line, kept;
  for (int i = 0; i < 41 && std::getline(in, line); ++i) kept += line + "\n";
  in.close();
  std::ofstream(ck, std::ios::binary | std::ios::trunc) << kept << "{\"delta\":0.00";
  const auto resumed = call(with_ck);
  CHECK(resumed.code == 0);
  CHECK(resumed.out == full.out);

  auto other = with_ck;
  other[4] = "5";
  CHECK(call(other).code == nearsq::cli::kInvalidArgument);
}

TEST_CASE("config file wins over flags") {
  const auto cfg = scratch("config.json");
  std::ofstream(cfg) << R"({"delta": "1/14", "eta": 1})";
  const auto r = call({"threshold", "--delta", "0", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["k"] == 7);
  CHECK(r.err.find("warning: config file overrides --delta") != std::string::npos);
  std::ofstream(cfg, std::ios::trunc) << R"({"nonsense": 1})";
  CHECK(call({"threshold", "--config", cfg.string()}).code == nearsq::cli::kInvalidArgument);
}

TEST_CASE("output file and output directory") {
  const auto target = scratch("report.json");
  REQUIRE(call({"threshold", "--output", target.string()}).code == 0);
  CHECK(nlohmann::json::parse(slurp(target))["k"] == 6);

  const auto dir = target.parent_path();
  fs::remove(dir / "relative.csv");
  setenv("NEARSQ_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = call({"mertens", "--z", "10", "--format", "csv", "--output", "relative.csv"});
  unsetenv("NEARSQ_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(dir / "relative.csv").rfind("z,V,asymptotic,ratio\n", 0) == 0);
}
