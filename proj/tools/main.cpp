// polyadd: evaluate polygamma functions, locate additivity thresholds, and
// verify the sub/super-additivity properties of |psi^(i)(exp t)| by sampling.
//
// Exit codes: 0 success, 1 property violation, 2 domain/usage error,
// 3 solver failure. Output is a pure function of the manifest echoed in its
// first line (CSV) or under the "manifest" key (JSON).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyadd/errors.hpp"
#include "polyadd/eval_config.hpp"
#include "polyadd/oracle.hpp"
#include "polyadd/polygamma.hpp"
#include "polyadd/threshold.hpp"
#include "polyadd/verify.hpp"
#include "polyadd/version.hpp"

namespace {

using polyadd::AdditivityReport;
using polyadd::ArgumentError;
using polyadd::EvalConfig;
using polyadd::Region;
using polyadd::SampleSpec;
using polyadd::ThresholdResult;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string jstr(const std::string& s) { return "\"" + json_escape(s) + "\""; }

// JSON number token; non-finite doubles have no JSON spelling, so they
// degrade to null (CSV keeps the C spelling, e.g. -inf).
std::string jnum(double v) { return std::isfinite(v) ? fmt17(v) : "null"; }

// Manifest parameters are pre-rendered JSON tokens in a sorted map, so two
// runs with the same effective knobs serialize byte-identically.
struct Manifest {
  std::string command;
  std::map<std::string, std::string> params;
};

std::string manifest_json(const Manifest& m) {
  std::string out = "{\"command\":" + jstr(m.command) + ",\"parameters\":{";
  bool first = true;
  for (const auto& [key, val] : m.params) {
    if (!first) out += ",";
    first = false;
    out += jstr(key) + ":" + val;
  }
  out += "},\"version\":" + jstr(POLYADD_VERSION) + "}";
  return out;
}

void write_out(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open output file: " + path);
  f << content;
}

EvalConfig config_from_env() {
  EvalConfig cfg;
  if (const char* s = std::getenv("POLYADD_RELTOL")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(v > 0.0) || !(v < 1e-6))
      throw ArgumentError("POLYADD_RELTOL must be a decimal in (0, 1e-6), got \"" +
                          std::string(s) + "\"");
    cfg.rel_tol = v;
  }
  return cfg;
}

// ----- eval ---------------------------------------------------------------

struct EvalOpts {
  int k = 0;
  double x = 0.0;
  bool oracle = false;
  int digits = 30;
  std::string output = "-";
};

int cmd_eval(const EvalOpts& o, const EvalConfig& cfg) {
  Manifest m;
  m.command = "eval";
  m.params["digits"] = std::to_string(o.digits);
  m.params["k"] = std::to_string(o.k);
  m.params["oracle"] = o.oracle ? "true" : "false";
  m.params["output"] = jstr(o.output);
  m.params["point"] = fmt17(o.x);
  m.params["rel_tol"] = fmt17(cfg.rel_tol);

  if (o.k == 0 && o.oracle)
    throw ArgumentError("--oracle covers k >= 1 only (the oracle sums k! zeta(k+1, x))");

  std::string out = "# manifest: " + manifest_json(m) + "\n";
  if (o.k == 0) {
    const double v = polyadd::digamma(o.x, cfg);
    out += "psi = " + fmt17(v) + "\n";
    out += "abs = " + fmt17(std::abs(v)) + "\n";
  } else {
    out += "psi = " + fmt17(polyadd::polygamma(o.k, o.x, cfg)) + "\n";
    out += "abs = " + fmt17(polyadd::abs_polygamma(o.k, o.x, cfg)) + "\n";
    if (o.oracle) {
      const polyadd::OracleValue ov = polyadd::oracle_polygamma(o.k, o.x, o.digits);
      out += "oracle_abs = " + fmt17(ov.to_double()) + "\n";
      out += "oracle_bound = " + fmt17(ov.abs_error_bound) + "\n";
    }
  }
  write_out(o.output, out);
  return 0;
}

// ----- theta --------------------------------------------------------------

struct ThetaOpts {
  int i_max = 0;
  double tol = 1e-12;
  std::string format = "csv";
  std::string output = "-";
};

int cmd_theta(const ThetaOpts& o, const EvalConfig& cfg) {
  Manifest m;
  m.command = "theta";
  m.params["format"] = jstr(o.format);
  m.params["max_order"] = std::to_string(o.i_max);
  m.params["output"] = jstr(o.output);
  m.params["rel_tol"] = fmt17(cfg.rel_tol);
  m.params["tol"] = fmt17(o.tol);

  const std::vector<ThresholdResult> rows = polyadd::theta_table(o.i_max, o.tol, cfg);
  for (const ThresholdResult& r : rows)
    if (!r.certified)
      throw polyadd::SolverError(
          r.order, "theta: oracle could not certify the bracket at order " +
                       std::to_string(r.order) + " (try a looser --tol or tighter rel_tol)");

  std::string out;
  if (o.format == "csv") {
    out = "# manifest: " + manifest_json(m) + "\n";
    out += "i,theta_lo,theta_hi,theta_mid,residual,certified,iterations\n";
    for (const ThresholdResult& r : rows)
      out += std::to_string(r.order) + "," + fmt17(r.lo) + "," + fmt17(r.hi) + "," +
             fmt17(r.mid()) + "," + fmt17(r.residual) + "," +
             (r.certified ? "true" : "false") + "," + std::to_string(r.iterations) + "\n";
  } else {
    out = "{\"manifest\":" + manifest_json(m) + ",\"results\":[";
    bool first = true;
    for (const ThresholdResult& r : rows) {
      if (!first) out += ",";
      first = false;
      out += "{\"i\":" + std::to_string(r.order) + ",\"theta_lo\":" + jnum(r.lo) +
             ",\"theta_hi\":" + jnum(r.hi) + ",\"theta_mid\":" + jnum(r.mid()) +
             ",\"residual\":" + jnum(r.residual) +
             ",\"certified\":" + (r.certified ? "true" : "false") +
             ",\"iterations\":" + std::to_string(r.iterations) + "}";
    }
    out += "]}\n";
  }
  write_out(o.output, out);
  return 0;
}

// ----- verify ---------------------------------------------------------------

struct VerifyOpts {
  int i = 0;
  int samples = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  double slack = 1e-9;
  std::string format = "csv";
  std::string output = "-";
  double assume_theta = 0.0;  // 0 means: solve and certify
  std::vector<double> sub_range, super_range, mixed_range;
};

struct Row {
  std::string check;
  long samples = 0;
  long violations = 0;
  double worst = 0.0;
  bool has_signs = false;
  long sign_negative = 0;
  long sign_positive = 0;
};

Row from_report(const AdditivityReport& r) {
  Row row;
  row.check = r.check;
  row.samples = r.samples;
  row.violations = static_cast<long>(r.violations.size());
  row.worst = r.worst_margin;
  if (r.region == Region::MIXED && r.check == "additivity_mixed") {
    row.has_signs = true;
    row.sign_negative = r.sign_negative;
    row.sign_positive = r.sign_positive;
  }
  return row;
}

Row limit_row(int i, double y, const char* name, const EvalConfig& cfg) {
  const std::array<double, 4> d = polyadd::check_limit(i, y, cfg);
  const double ay = polyadd::abs_polygamma(i, y, cfg);
  Row row;
  row.check = name;
  row.samples = 4;
  row.worst = -std::numeric_limits<double>::infinity();
  double prev = std::abs(d[0] - ay);
  for (int j = 1; j < 4; ++j) {
    const double err = std::abs(d[static_cast<std::size_t>(j)] - ay);
    row.worst = std::max(row.worst, (err - prev) / (prev + 1e-300));
    if (err >= prev) ++row.violations;
    prev = err;
  }
  return row;
}

Row monotone_row(int i, double alpha, polyadd::MonotoneClass expected, const char* name,
                 const std::vector<double>& grid, const EvalConfig& cfg) {
  const polyadd::MonotoneClass got = polyadd::check_monotone_alpha(i, alpha, grid, cfg);
  Row row;
  row.check = name;
  row.samples = static_cast<long>(grid.size());
  row.violations = (got == expected) ? 0 : 1;
  row.worst = (got == expected) ? 0.0 : 1.0;
  return row;
}

SampleSpec make_spec(Region region, const VerifyOpts& o, std::uint64_t seed_offset,
                     const std::vector<double>& range) {
  SampleSpec s;
  s.region = region;
  s.count = o.samples;
  s.seed = o.seed + seed_offset;
  if (range.size() == 2) {
    s.log_lo = range[0];
    s.log_hi = range[1];
  }
  return s;
}

std::string range_token(const std::vector<double>& r) {
  return r.size() == 2 ? "[" + jnum(r[0]) + "," + jnum(r[1]) + "]" : "null";
}

int cmd_verify(const VerifyOpts& o, const EvalConfig& cfg) {
  Manifest m;
  m.command = "verify";
  m.params["assume_theta"] = o.assume_theta > 0.0 ? fmt17(o.assume_theta) : "null";
  m.params["format"] = jstr(o.format);
  m.params["mixed_range"] = range_token(o.mixed_range);
  m.params["order"] = std::to_string(o.i);
  m.params["output"] = jstr(o.output);
  m.params["rel_tol"] = fmt17(cfg.rel_tol);
  m.params["samples"] = std::to_string(o.samples);
  m.params["seed"] = std::to_string(o.seed);
  m.params["slack"] = fmt17(o.slack);
  m.params["sub_range"] = range_token(o.sub_range);
  m.params["super_range"] = range_token(o.super_range);
  m.params["tol"] = fmt17(o.tol);

  const SampleSpec sub = make_spec(Region::SUB, o, 0, o.sub_range);
  const SampleSpec super_ = make_spec(Region::SUPER, o, 1, o.super_range);
  const SampleSpec mixed = make_spec(Region::MIXED, o, 2, o.mixed_range);

  std::vector<Row> rows;
  if (o.assume_theta > 0.0) {
    if (!(o.assume_theta < 1.0))
      throw ArgumentError("--assume-theta must lie in (0, 1)");
    const double boundary = std::log(o.assume_theta);
    rows.push_back(from_report(
        polyadd::check_additivity_on(o.i, Region::SUB, boundary, 0.0, sub, cfg, o.slack)));
    rows.push_back(from_report(polyadd::check_additivity_on(o.i, Region::SUPER, boundary,
                                                            0.0, super_, cfg, o.slack)));
    rows.push_back(from_report(polyadd::check_additivity_on(o.i, Region::MIXED, boundary,
                                                            0.0, mixed, cfg, o.slack)));
  } else {
    const ThresholdResult th = polyadd::solve_theta(o.i, o.tol, cfg);
    if (!th.certified)
      throw polyadd::SolverError(o.i, "verify: threshold bracket failed certification");
    rows.push_back(from_report(polyadd::check_additivity(o.i, th, sub, cfg, o.slack)));
    rows.push_back(from_report(polyadd::check_additivity(o.i, th, super_, cfg, o.slack)));
    rows.push_back(from_report(polyadd::check_additivity(o.i, th, mixed, cfg, o.slack)));
  }

  SampleSpec aux;
  aux.count = o.samples;
  aux.seed = o.seed + 3;
  rows.push_back(from_report(polyadd::check_case_inequalities(o.i, aux, cfg, o.slack)));

  const std::vector<double> grid = polyadd::make_log_grid(1e-2, 1e2, 100);
  rows.push_back(monotone_row(o.i, o.i + 1.0, polyadd::MonotoneClass::INCREASING,
                              "monotone_alpha_upper", grid, cfg));
  rows.push_back(monotone_row(o.i, static_cast<double>(o.i), polyadd::MonotoneClass::DECREASING,
                              "monotone_alpha_lower", grid, cfg));
  rows.push_back(monotone_row(o.i, o.i + 0.5, polyadd::MonotoneClass::NON_MONOTONE,
                              "monotone_alpha_half", grid, cfg));

  rows.push_back(limit_row(o.i, 0.5, "limit_y_half", cfg));
  rows.push_back(limit_row(o.i, 2.0, "limit_y_two", cfg));

  aux.seed = o.seed + 4;
  rows.push_back(from_report(polyadd::check_derivative_sign(o.i, aux, cfg)));
  aux.seed = o.seed + 5;
  rows.push_back(from_report(polyadd::check_derivative_fd(o.i, aux, cfg)));
  aux.seed = o.seed + 6;
  rows.push_back(from_report(polyadd::check_positivity(o.i, aux, cfg)));

  long total_violations = 0;
  for (const Row& r : rows) total_violations += r.violations;

  std::string out;
  if (o.format == "csv") {
    out = "# manifest: " + manifest_json(m) + "\n";
    out += "check,samples,violations,worst_margin\n";
    for (const Row& r : rows)
      out += r.check + "," + std::to_string(r.samples) + "," +
             std::to_string(r.violations) + "," + fmt17(r.worst) + "\n";
  } else {
    out = "{\"manifest\":" + manifest_json(m) + ",\"results\":[";
    bool first = true;
    for (const Row& r : rows) {
      if (!first) out += ",";
      first = false;
      out += "{\"check\":" + jstr(r.check) + ",\"samples\":" + std::to_string(r.samples) +
             ",\"violations\":" + std::to_string(r.violations) +
             ",\"worst_margin\":" + jnum(r.worst);
      if (r.has_signs)
        out += ",\"sign_negative\":" + std::to_string(r.sign_negative) +
               ",\"sign_positive\":" + std::to_string(r.sign_positive);
      out += "}";
    }
    out += "]}\n";
  }
  write_out(o.output, out);
  return total_violations > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polygamma additivity toolkit"};
  app.require_subcommand(1);

  EvalOpts eo;
  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate psi^(k)(x), optionally against the reference oracle");
  eval->add_option("-k,--order", eo.k, "derivative order (0 = digamma)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  eval->add_option("-x,--point", eo.x, "evaluation point, must be > 0")->required();
  eval->add_flag("--oracle", eo.oracle, "also print the oracle value and its error bound");
  eval->add_option("--digits", eo.digits, "oracle truncation target in decimal digits");
  eval->add_option("-o,--output", eo.output, "output file ('-' = stdout)");

  ThetaOpts to;
  CLI::App* theta = app.add_subcommand(
      "theta", "solve the additivity thresholds theta_1..theta_n with certified brackets");
  theta->alias("table");
  theta->add_option("-n,--max-order", to.i_max, "solve orders 1..n")->required();
  theta->add_option("--tol", to.tol, "bracket width tolerance");
  theta->add_option("--format", to.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  theta->add_option("-o,--output", to.output, "output file ('-' = stdout)");

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the sampled additivity/monotonicity suite for one order");
  verify->add_option("-i,--order", vo.i, "derivative order under test")->required();
  verify->add_option("-n,--samples", vo.samples, "samples per sampled check");
  verify->add_option("--seed", vo.seed, "base seed; each check derives its own stream");
  verify->add_option("--tol", vo.tol, "threshold bracket tolerance");
  verify->add_option("--slack", vo.slack, "relative slack for the strict inequalities");
  verify->add_option("--format", vo.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("-o,--output", vo.output, "output file ('-' = stdout)");
  verify->add_option("--assume-theta", vo.assume_theta,
                     "test this boundary hypothesis instead of solving (exit 1 refutes it)");
  verify->add_option("--sub-range", vo.sub_range,
                     "SUB window in t = ln(argument), two values")
      ->expected(2);
  verify->add_option("--super-range", vo.super_range, "SUPER window in t, two values")
      ->expected(2);
  verify->add_option("--mixed-range", vo.mixed_range, "MIXED window in t, two values")
      ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const EvalConfig cfg = config_from_env();
    if (eval->parsed()) return cmd_eval(eo, cfg);
    if (theta->parsed()) return cmd_theta(to, cfg);
    return cmd_verify(vo, cfg);
  } catch (const polyadd::SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
