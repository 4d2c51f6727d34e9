#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polyadd/eval_config.hpp"
#include "polyadd/threshold.hpp"

namespace polyadd {

// Sampling regions in the additive variable t (arguments are exp(t)):
//   SUB   - both samples and their sum above ln(theta_i): sub-additivity asserted.
//   SUPER - both samples below ln(theta_i) (the sum then is too): super-additivity
//           asserted.
//   MIXED - samples straddling the boundary: nothing is asserted, only the
//           empirical sign of the deficit is reported.
enum class Region { SUB, SUPER, MIXED };

// A seeded sampling plan. log_range is the window for t; empty (lo >= hi) means
// the region default: SUB (ln theta_i + 1e-3, 5), SUPER (-20, ln theta_i - 1e-3),
// MIXED (ln theta_i - 1, ln theta_i + 1). Whatever the window, SUB sampling is
// clamped away from the certified bracket by 10x its width and rejects pairs
// whose closure sum t_x + t_y does not clear ln theta_i by that same margin.
// The case-inequality and derivative sweeps use only count/seed/log_range and
// draw the y side themselves; region is ignored there.
struct SampleSpec {
  Region region = Region::SUB;
  int count = 10000;
  std::uint64_t seed = 0;
  double log_lo = 0.0;
  double log_hi = 0.0;

  bool has_range() const { return log_lo < log_hi; }

  void validate() const {
    if (count < 1) throw ArgumentError("SampleSpec: count must be positive");
  }
};

struct Violation {
  double x = 0.0;
  double y = 0.0;
  double margin = 0.0;  // relative overshoot past the inequality, see report
};

// Outcome of one sampled check. Margins are relative: for SUB,
// (F(x+y) - F(x) - F(y)) / (F(x) + F(y)); for SUPER the mirror image. A sample
// is a violation when its margin exceeds slack, so for the asserting regions
// violations is nonempty iff worst_margin > slack. MIXED asserts nothing:
// violations stays empty there and worst_margin is informational, while
// sign_negative/sign_positive tally the empirical deficit signs.
struct AdditivityReport {
  int order = 0;
  Region region = Region::SUB;
  std::string check;
  int samples = 0;
  std::vector<Violation> violations;
  double worst_margin = 0.0;
  double slack = 0.0;
  long sign_negative = 0;
  long sign_positive = 0;

  bool passed() const { return violations.empty(); }
};

enum class MonotoneClass { INCREASING, DECREASING, NON_MONOTONE };

// f(x, y) = |psi^(i)(x)| + |psi^(i)(y)| - |psi^(i)(xy)| on x, y > 0.
// Symmetric bit-for-bit: arguments are sorted before evaluation, and IEEE
// multiplication is commutative, so deficit(i,x,y) == deficit(i,y,x) exactly.
double deficit(int i, double x, double y, const EvalConfig& cfg = {});

// Analytic partial derivative of the deficit in its first argument:
// y|psi^(i+1)(xy)| - |psi^(i+1)(x)|. Strictly negative for y > 1, positive for
// y < 1, zero at y = 1.
double partial_x(int i, double x, double y, const EvalConfig& cfg = {});

// Classification of x -> x^alpha |psi^(i)(x)| on a strictly increasing grid:
// INCREASING if every consecutive difference is > 0, DECREASING if every one is
// < 0, NON_MONOTONE otherwise. The grid must have >= 50 points and span at
// least [1e-2, 1e2]. The function is strictly increasing iff alpha >= i+1 and
// strictly decreasing iff alpha <= i; in between it dips and rises again.
MonotoneClass check_monotone_alpha(int i, double alpha,
                                   const std::vector<double>& grid,
                                   const EvalConfig& cfg = {});

std::vector<double> make_log_grid(double lo, double hi, int points);

// deficit(i, x, y) for x in {10, 1e2, 1e3, 1e4}: the tail of the deficit in its
// first argument, which converges to |psi^(i)(y)| from one side.
std::array<double, 4> check_limit(int i, double y, const EvalConfig& cfg = {});

// The four ordering facts behind the threshold argument, sampled with y < 1:
//   x > 1:      f(1,y) < f(x,y) < |psi^(i)(y)|
//   x < 1:      f(x,y) < f(1,y)
//   y < x < 1:  f(y,y) < f(x,y)
//   x < y < 1:  f(x,x) < f(x,y)
// Strict inequalities carry the cfg-independent relative slack.
AdditivityReport check_case_inequalities(int i, const SampleSpec& samples,
                                         const EvalConfig& cfg = {},
                                         double slack = 1e-9);

// Sub/super-additivity of F(t) = |psi^(i)(exp t)| against a certified
// threshold. theta must be certified (precondition error otherwise); use
// check_additivity_on below to probe a hypothesis instead.
AdditivityReport check_additivity(int i, const ThresholdResult& theta,
                                  const SampleSpec& samples,
                                  const EvalConfig& cfg = {},
                                  double slack = 1e-9);

// The raw predicate: is F sub-additive (or super-additive, per region) when t
// is confined to the given window with closure handled the same way? This is
// what check_additivity runs against the certified intervals; exposed so a
// false hypothesis (a wrong threshold) can be tested and refuted.
AdditivityReport check_additivity_on(int i, Region region, double boundary_log_theta,
                                     double bracket_width, const SampleSpec& samples,
                                     const EvalConfig& cfg = {}, double slack = 1e-9);

// sign(partial_x) == sign(1 - y), sampled with y kept outside [1-1e-6, 1+1e-6]
// where the derivative degenerates. Margins are +-1 (wrong/right sign), so any
// violation shows up as worst_margin = 1 against slack 0.
AdditivityReport check_derivative_sign(int i, const SampleSpec& samples,
                                       const EvalConfig& cfg = {});

// partial_x against a central difference of the deficit with step h = 1e-5 x,
// differencing only the x-dependent terms (the |psi^(i)(y)| term is constant
// in x; kept in, it can bury the difference under its own rounding).
// y is kept outside |ln y| < 0.02 and samples with |partial_x| below 1e-8 times
// the deficit scale are skipped: both regimes divide by a vanishing derivative.
// Margin is the relative FD mismatch, slack is fd_rel_tol.
AdditivityReport check_derivative_fd(int i, const SampleSpec& samples,
                                     const EvalConfig& cfg = {},
                                     double fd_rel_tol = 1e-5);

// deficit(i, x, y) > 0 whenever y > 1: x follows the sample window, y is drawn
// log-uniformly from (1, 100). Margin is -deficit scaled by |psi| magnitudes.
AdditivityReport check_positivity(int i, const SampleSpec& samples,
                                  const EvalConfig& cfg = {});

}  // namespace polyadd
