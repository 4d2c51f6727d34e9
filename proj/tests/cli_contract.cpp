// Contract tests for the polyadd binary: exit codes, output schemas, manifest
// echo, and byte-for-byte determinism. The binary path arrives in POLYADD_CLI
// (set by the test harness); commands run through /bin/sh so environment
// prefixes work the same way they do for a user.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "polyadd/oracle.hpp"
#include "polyadd/polygamma.hpp"
#include "polyadd/threshold.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_env(const std::string& env_prefix, const std::string& args) {
  const char* cli = std::getenv("POLYADD_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "POLYADD_CLI must point at the binary under test");
  std::string cmd = env_prefix + " \"" + cli + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunResult run(const std::string& args) { return run_env("", args); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    const std::size_t nl = s.find('\n', start);
    if (nl == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

// The manifest rides in a comment on the first CSV line.
json manifest_of(const std::string& out) {
  const std::string prefix = "# manifest: ";
  const std::vector<std::string> ls = lines(out);
  REQUIRE(!ls.empty());
  REQUIRE(ls[0].rfind(prefix, 0) == 0);
  return json::parse(ls[0].substr(prefix.size()));
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TEST_CASE("eval prints the value pair and echoes its manifest") {
  const RunResult r = run("eval -k 1 -x 1");
  CHECK(r.code == 0);
  const json m = manifest_of(r.out);
  CHECK(m["command"] == "eval");
  CHECK(m["parameters"]["k"] == 1);
  CHECK(m["parameters"]["point"] == 1.0);
  CHECK(m["parameters"]["oracle"] == false);
  CHECK(m["parameters"]["output"] == "-");
  CHECK(m["parameters"]["rel_tol"] == 1e-13);
  CHECK(r.out.find("psi = " + fmt17(polyadd::polygamma(1, 1.0)) + "\n") != std::string::npos);
  CHECK(r.out.find("abs = " + fmt17(polyadd::abs_polygamma(1, 1.0)) + "\n") != std::string::npos);
}

TEST_CASE("eval with k = 0 routes to digamma") {
  const RunResult r = run("eval -k 0 -x 0.5");
  CHECK(r.code == 0);
  CHECK(r.out.find("psi = " + fmt17(polyadd::digamma(0.5)) + "\n") != std::string::npos);
}

TEST_CASE("eval --oracle reports the reference value and its bound") {
  const RunResult r = run("eval -k 2 -x 0.3 --oracle");
  CHECK(r.code == 0);
  const polyadd::OracleValue ov = polyadd::oracle_polygamma(2, 0.3, 30);
  CHECK(r.out.find("oracle_abs = " + fmt17(ov.to_double()) + "\n") != std::string::npos);
  CHECK(r.out.find("oracle_bound = " + fmt17(ov.abs_error_bound) + "\n") != std::string::npos);
}

TEST_CASE("eval rejects bad usage with exit 2") {
  CHECK(run("eval -k 1 -x -1").code == 2);        // domain
  CHECK(run("eval -k 1 -x 0").code == 2);         // domain edge
  CHECK(run("eval -k 1").code == 2);              // missing required option
  CHECK(run("eval -k -3 -x 1").code == 2);        // negative order
  CHECK(run("eval -k 0 -x 1 --oracle").code == 2);  // oracle has no digamma path
  CHECK(run("eval -k 1 -x 1 -o /nonexistent-dir/sub/out.txt").code == 2);
  CHECK(run("nosuchcommand").code == 2);
  CHECK(run("").code == 2);  // a subcommand is required
}

TEST_CASE("POLYADD_RELTOL is honored, echoed, and validated") {
  const RunResult ok = run_env("POLYADD_RELTOL=1e-10", "eval -k 1 -x 1");
  CHECK(ok.code == 0);
  CHECK(manifest_of(ok.out)["parameters"]["rel_tol"] == 1e-10);

  for (const char* bad : {"abc", "1e-6", "0", "-1e-9", "1e-10junk", ""}) {
    const RunResult r = run_env(std::string("POLYADD_RELTOL=") + bad, "eval -k 1 -x 1");
    CHECK(r.code == 2);
  }
}

TEST_CASE("theta CSV carries the fixed header and certified rows") {
  const RunResult r = run("theta -n 3 --tol 1e-10");
  CHECK(r.code == 0);
  const std::vector<std::string> ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[1] == "i,theta_lo,theta_hi,theta_mid,residual,certified,iterations");
  CHECK(ls[2].rfind("1,", 0) == 0);
  CHECK(ls[2].find(",true,") != std::string::npos);
  // theta_mid is the fourth field.
  std::size_t pos = 0;
  for (int field = 0; field < 3; ++field) pos = ls[2].find(',', pos) + 1;
  const double mid = std::strtod(ls[2].c_str() + pos, nullptr);
  CHECK(std::abs(mid - 0.6618988401768102) <= 1e-9);
}

TEST_CASE("theta JSON round-trips the solver's doubles losslessly") {
  const RunResult r = run("theta -n 2 --tol 1e-12 --format json");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["manifest"]["command"] == "theta");
  CHECK(j["manifest"]["parameters"]["max_order"] == 2);
  REQUIRE(j["results"].size() == 2);

  const polyadd::ThresholdResult solo = polyadd::solve_theta(1, 1e-12);
  const json& row = j["results"][0];
  CHECK(row["i"] == 1);
  CHECK(row["certified"] == true);
  // %.17g is lossless for doubles, so equality here is exact, not approximate.
  CHECK(row["theta_lo"].get<double>() == solo.lo);
  CHECK(row["theta_hi"].get<double>() == solo.hi);
  CHECK(row["theta_mid"].get<double>() == solo.mid());
  CHECK(row["iterations"].get<int>() == solo.iterations);
}

TEST_CASE("the table alias is the same subcommand") {
  const RunResult a = run("theta -n 1 --tol 1e-8");
  const RunResult b = run("table -n 1 --tol 1e-8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("theta rejects bad usage with exit 2") {
  CHECK(run("theta -n 0").code == 2);
  CHECK(run("theta -n 13").code == 2);
  CHECK(run("theta -n 2 --format xml").code == 2);
  CHECK(run("theta -n 2 --tol 1e-16").code == 2);
}

TEST_CASE("an uncertifiable bracket exits 3 and writes nothing") {
  // A rel_tol this coarse drags the bisection off the true root by more than
  // the 1e-15 bracket width, so the oracle refuses to certify order 1.
  const RunResult r = run_env("POLYADD_RELTOL=9.9e-7", "theta -n 8 --tol 1e-15");
  CHECK(r.code == 3);
  CHECK(r.out.empty());
}

TEST_CASE("verify CSV lists the twelve checks in order with zero violations") {
  const RunResult r = run("verify -i 1 -n 800 --seed 42");
  CHECK(r.code == 0);
  const std::vector<std::string> ls = lines(r.out);
  REQUIRE(ls.size() == 14);
  CHECK(ls[1] == "check,samples,violations,worst_margin");
  const char* expected[] = {"additivity_sub",       "additivity_super",
                            "additivity_mixed",     "case_inequalities",
                            "monotone_alpha_upper", "monotone_alpha_lower",
                            "monotone_alpha_half",  "limit_y_half",
                            "limit_y_two",          "derivative_sign_law",
                            "derivative_fd_agreement", "positivity_y_gt_1"};
  for (int row = 0; row < 12; ++row) {
    const std::string& line = ls[static_cast<std::size_t>(row) + 2];
    CHECK(line.rfind(std::string(expected[row]) + ",", 0) == 0);
    // violations is the third field.
    std::size_t pos = line.find(',');
    pos = line.find(',', pos + 1);
    CHECK(line.compare(pos, 3, ",0,") == 0);
  }
}

TEST_CASE("verify JSON carries sign tallies only on the mixed row") {
  const RunResult r = run("verify -i 2 -n 500 --seed 7 --format json");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["manifest"]["parameters"]["order"] == 2);
  CHECK(j["manifest"]["parameters"]["assume_theta"].is_null());
  CHECK(j["manifest"]["parameters"]["sub_range"].is_null());
  REQUIRE(j["results"].size() == 12);
  for (const json& row : j["results"]) {
    CHECK(row["violations"] == 0);
    const bool mixed = row["check"] == "additivity_mixed";
    CHECK(row.contains("sign_negative") == mixed);
    CHECK(row.contains("sign_positive") == mixed);
    if (mixed)
      CHECK(row["sign_negative"].get<long>() + row["sign_positive"].get<long>() <= 500);
  }
}

TEST_CASE("a wrong threshold hypothesis is refuted with exit 1") {
  // theta_1 is near 0.662; claiming 0.9 puts part of the claimed sub-additive
  // region on the wrong side of the real boundary, and near-diagonal pairs
  // just below ln(0.9) expose it.
  const RunResult r =
      run("verify -i 1 --assume-theta 0.9 --super-range -3 -0.15 -n 10000 --seed 0");
  CHECK(r.code == 1);
  bool super_failed = false;
  for (const std::string& line : lines(r.out)) {
    if (line.rfind("additivity_super,", 0) != 0) continue;
    std::size_t pos = line.find(',');
    pos = line.find(',', pos + 1);
    super_failed = std::strtol(line.c_str() + pos + 1, nullptr, 10) > 0;
  }
  CHECK(super_failed);
}

TEST_CASE("an understated threshold hypothesis survives closure sampling") {
  // With the boundary guessed at 0.5 (below the true 0.662), every pair the
  // closure rule admits still satisfies its asserted inequality, so exit 0:
  // the probe can refute an overstated threshold but not an understated one.
  CHECK(run("verify -i 1 --assume-theta 0.5 -n 2000 --seed 3").code == 0);
}

TEST_CASE("verify rejects bad usage with exit 2") {
  CHECK(run("verify -i 0 -n 100").code == 2);
  CHECK(run("verify -i 13 -n 100").code == 2);
  CHECK(run("verify -i 1 --assume-theta 1.5 -n 100").code == 2);
  CHECK(run("verify -i 1 --sub-range 1 -n 100").code == 2);  // needs two values
  CHECK(run("verify -i 1 -n 0").code == 2);
}

TEST_CASE("identical invocations are byte-identical") {
  const char* cmds[] = {
      "eval -k 3 -x 0.37 --oracle",
      "theta -n 2 --tol 1e-10 --format json",
      "verify -i 1 -n 600 --seed 5",
      "verify -i 2 -n 400 --seed 9 --format json",
  };
  for (const char* cmd : cmds) {
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("file output matches stdout output modulo the echoed sink") {
  const std::string path = "/tmp/polyadd_cli_contract_out.txt";
  std::remove(path.c_str());
  const RunResult to_file = run("eval -k 1 -x 2 -o " + path);
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());

  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string content;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) content.append(buf, n);
  std::fclose(f);
  std::remove(path.c_str());

  const RunResult to_stdout = run("eval -k 1 -x 2");
  // Manifests differ in the output field; everything after the first line
  // must agree byte for byte.
  const std::string tail_file = content.substr(content.find('\n'));
  const std::string tail_stdout = to_stdout.out.substr(to_stdout.out.find('\n'));
  CHECK(tail_file == tail_stdout);
  CHECK(manifest_of(content)["parameters"]["output"] == path);
}
