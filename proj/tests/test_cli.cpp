// End-to-end tests of the command-line tool: exit-code contract, JSON shape
// against the shipped schema, determinism, and the documented examples.
#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int rc = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// run the tool through the shell, capturing the streams separately
RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int n = 0;
  const fs::path dir = fs::temp_directory_path();
  const std::string tag =
      "pwl_cli_" + std::to_string(::getpid()) + "_" + std::to_string(n++);
  const fs::path out = dir / (tag + ".out");
  const fs::path err = dir / (tag + ".err");
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += std::string(PWL_CLI_PATH) + " " + args + " >" + out.string() + " 2>" +
         err.string();
  const int st = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(st)) r.rc = WEXITSTATUS(st);
  r.out = slurp(out);
  r.err = slurp(err);
  fs::remove(out);
  fs::remove(err);
  return r;
}

fs::path scratch_file(const std::string& name) {
  return fs::temp_directory_path() /
         ("pwl_scratch_" + std::to_string(::getpid()) + "_" + name);
}

std::set<std::string> enum_values(const json& schema, const std::string& prop) {
  std::set<std::string> vals;
  for (const auto& v : schema.at("items").at("properties").at(prop).at("enum"))
    vals.insert(v.get<std::string>());
  return vals;
}

void validate_against_schema(const json& reports) {
  const json schema = json::parse(slurp(fs::path(PWL_SCHEMA_PATH)));
  REQUIRE(schema.at("type") == "array");
  REQUIRE(schema.at("items").at("additionalProperties") == false);
  std::set<std::string> required;
  for (const auto& f : schema.at("items").at("required"))
    required.insert(f.get<std::string>());
  REQUIRE(required.size() == 7);
  const auto statuses = enum_values(schema, "status");
  const auto modes = enum_values(schema, "mode");
  const auto types = enum_values(schema, "weyl_type");
  REQUIRE(reports.is_array());
  for (const auto& r : reports) {
    std::set<std::string> keys;
    for (auto it = r.begin(); it != r.end(); ++it) keys.insert(it.key());
    CHECK(keys == required);
    CHECK(statuses.count(r.at("status").get<std::string>()) == 1);
    CHECK(modes.count(r.at("mode").get<std::string>()) == 1);
    CHECK(types.count(r.at("weyl_type").get<std::string>()) == 1);
    CHECK(r.at("elapsed_ms").is_number_integer());
    CHECK(r.at("elapsed_ms").get<long long>() >= 0);
    CHECK(r.at("check_id").is_string());
    CHECK(r.at("witness").is_string());
    CHECK(r.at("notes").is_string());
    // witness text accompanies failures only
    if (r.at("status") == "pass" || r.at("status") == "skip")
      CHECK(r.at("witness").get<std::string>().empty());
  }
}

}  // namespace

TEST_CASE("exit-code contract", "[cli]") {
  CHECK(run_cli("").rc == 2);
  CHECK(run_cli("--help").rc == 0);
  CHECK(run_cli("verify --help").rc == 0);
  CHECK(run_cli("verify --type bogus").rc == 2);
  CHECK(run_cli("verify --mode turbo").rc == 2);
  CHECK(run_cli("verify --check no-such-check").rc == 2);
  CHECK(run_cli("verify --term-cap 10").rc == 2);
}

TEST_CASE("verify on one healthy type exits 0", "[cli]") {
  const auto r = run_cli("verify --type d4 --check all --mode auto");
  CHECK(r.rc == 0);
  CHECK(r.out.find("14 checks: 14 pass, 0 fail, 0 blowup, 0 skip") !=
        std::string::npos);
}

TEST_CASE("a skip is not a failure", "[cli]") {
  const auto r = run_cli("verify --type g2 --check holomorphy");
  CHECK(r.rc == 0);
  CHECK(r.out.find("skip\tholomorphy.g2") != std::string::npos);
}

TEST_CASE("the recorded defect makes the full run exit 1", "[cli]") {
  const auto r = run_cli("verify --type c2-piii --check poisson-series");
  CHECK(r.rc == 1);
  CHECK(r.out.find("fail\tpoisson-series.c2-piii") != std::string::npos);
  CHECK(r.out.find("(-f1^2*alpha1 + f1*eta) / (f1^3)") != std::string::npos);
}

TEST_CASE("full verify: schema-valid JSON, deterministic modulo elapsed_ms",
          "[cli]") {
  const fs::path j1 = scratch_file("v1.json"), j2 = scratch_file("v2.json");
  const auto r1 = run_cli("verify --json " + j1.string());
  const auto r2 = run_cli("verify --json " + j2.string());
  CHECK(r1.rc == 1);  // the PIII series defect is part of the full battery
  CHECK(r2.rc == 1);
  json a = json::parse(slurp(j1)), b = json::parse(slurp(j2));
  fs::remove(j1);
  fs::remove(j2);
  REQUIRE(a.size() == 83);
  validate_against_schema(a);
  for (auto& r : a) r.erase("elapsed_ms");
  for (auto& r : b) r.erase("elapsed_ms");
  CHECK(a == b);
}

TEST_CASE("PWL_SEED environment override", "[cli]") {
  CHECK(run_cli("verify --type d4 --check coxeter", "PWL_SEED=999").rc == 0);
  const auto bad = run_cli("verify --type d4 --check coxeter", "PWL_SEED=xyz");
  CHECK(bad.rc == 2);
  CHECK((bad.out + bad.err).find("PWL_SEED must be an unsigned integer") !=
        std::string::npos);
}

TEST_CASE("integrate: healthy run emits CSV and a JSON summary", "[cli]") {
  const fs::path csv = scratch_file("run.csv"), js = scratch_file("run.json");
  const auto r = run_cli(
      "integrate --type d4 --params 0.125,0.125,0.25,0.125,0.125 "
      "--t0 2.1 --t1 2.5 --state 0.3,0.4,0.5 --csv " +
      csv.string() + " --json " + js.string());
  REQUIRE(r.rc == 0);
  // CSV: header then a strictly monotone t column
  std::ifstream is(csv);
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "t,x,y,z");
  double prev = -1e300;
  size_t rows = 0;
  while (std::getline(is, line)) {
    const double t = std::stod(line.substr(0, line.find(',')));
    CHECK(t > prev);
    prev = t;
    ++rows;
  }
  CHECK(rows >= 65);
  const json summary = json::parse(slurp(js));
  fs::remove(csv);
  fs::remove(js);
  CHECK(summary.at("complete") == true);
  CHECK(summary.at("samples").get<long>() == static_cast<long>(rows));
  CHECK(summary.at("events").empty());
  CHECK(summary.at("residual").at("max").get<double>() < 1e-6);
  CHECK(summary.at("accepted").get<long>() >= summary.at("samples").get<long>() - 1);
  CHECK(summary.at("rejected").get<long>() >= 0);
}

TEST_CASE("integrate: the normalization violation is quoted", "[cli]") {
  const auto r = run_cli(
      "integrate --type d4 --params 0.5,0.125,0.25,0.125,0.125 "
      "--t0 2.1 --t1 2.5 --state 0.3,0.4,0.5");
  CHECK(r.rc == 2);
  CHECK((r.out + r.err)
            .find("alpha0 + alpha1 + 2*alpha2 + alpha3 + alpha4 - 1") !=
        std::string::npos);
}

TEST_CASE("integrate: a blowup shows up as a pole event", "[cli]") {
  const fs::path js = scratch_file("pole.json");
  const auto r = run_cli(
      "integrate --type d4 --params 0.125,0.125,0.25,0.125,0.125 "
      "--t0 2.1 --t1 4.0 --state 3,-2,4 --json " +
      js.string());
  REQUIRE(r.rc == 0);  // the event is data, not a tool failure
  const json summary = json::parse(slurp(js));
  fs::remove(js);
  CHECK(summary.at("complete") == false);
  REQUIRE(!summary.at("events").empty());
  CHECK(summary.at("events").back().at("kind") == "pole");
  CHECK(summary.at("residual").is_null());  // too few samples to stencil
}

TEST_CASE("integrate: seed on a pole of b and wrong types are usage errors",
          "[cli]") {
  CHECK(run_cli("integrate --type d4 --params 0.125,0.125,0.25,0.125,0.125 "
                "--t0 1.0 --t1 2.0 --state 0.3,0.4,0.5")
            .rc == 2);
  CHECK(run_cli("integrate --type pv --params 0.25,0.25,0.25,0.25 "
                "--t0 2.1 --t1 2.5 --state 0.3,0.4,0.5")
            .rc == 2);
}

TEST_CASE("orbit: an involution word returns the parameters unchanged",
          "[cli]") {
  const auto r = run_cli("orbit --type d4 --word \"s2 s2\"");
  REQUIRE(r.rc == 0);
  CHECK(r.out ==
        "alpha0 = 1/8\nalpha1 = 1/8\nalpha2 = 1/4\nalpha3 = 1/8\n"
        "alpha4 = 1/8\n");
}

TEST_CASE("orbit: pi swaps the outer PIII parameters", "[cli]") {
  const auto r = run_cli("orbit --type c2-piii --word pi --params 1/2,1/8,1/4");
  REQUIRE(r.rc == 0);
  CHECK(r.out ==
        "eta = 2\nalpha0 = 1/4\nalpha1 = 1/8\nalpha2 = 1/2\n");
}

TEST_CASE("orbit: a translation-flavored word shifts exactly", "[cli]") {
  const auto r = run_cli("orbit --type d4 --word \"s0 s1 s3 s4 s2\"");
  REQUIRE(r.rc == 0);
  CHECK(r.out ==
        "alpha0 = 5/8\nalpha1 = 5/8\nalpha2 = -3/4\nalpha3 = 5/8\n"
        "alpha4 = 5/8\n");
}

TEST_CASE("orbit: exact state transport", "[cli]") {
  const auto r = run_cli("orbit --type d4 --word s2 --state 3/7,5/11,2/9");
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("x = 87/56\n") != std::string::npos);
  CHECK(r.out.find("y = 139/88\n") != std::string::npos);
  CHECK(r.out.find("z = 2/9\n") != std::string::npos);
}

TEST_CASE("orbit: an indeterminate state is a nonzero exit", "[cli]") {
  const auto r = run_cli("orbit --type d4 --word s1 --state 0,1,1");
  CHECK(r.rc == 1);
  CHECK((r.out + r.err)
            .find("indeterminate: a denominator vanishes along the word") !=
        std::string::npos);
  CHECK(run_cli("orbit --type d4 --word s9").rc == 2);
}

TEST_CASE("dump: transcription-diff output", "[cli]") {
  const auto d4 = run_cli("dump --type d4");
  REQUIRE(d4.rc == 0);
  // the pure x^4 monomial with coefficient 1 sits in the first block
  std::string row = "4";
  for (int i = 1; i < 30; ++i) row += " 0";
  CHECK(d4.out.find(row + "\t1\n") != std::string::npos);
  const auto piii = run_cli("dump --type piii");
  REQUIRE(piii.rc == 0);
  size_t blocks = 0;
  std::istringstream is(piii.out);
  for (std::string line; std::getline(is, line);)
    if (!line.empty() && line[0] == '#') ++blocks;
  CHECK(blocks == 3);
  // byte-identical determinism
  CHECK(run_cli("dump --type d4").out == d4.out);
  CHECK(run_cli("dump --type bogus").rc == 2);
}
