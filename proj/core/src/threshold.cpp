#include "polyadd/threshold.hpp"

#include <cmath>
#include <limits>

#include "polyadd/errors.hpp"
#include "polyadd/oracle.hpp"
#include "polyadd/polygamma.hpp"

namespace polyadd {
namespace {

// A bracket certifies only if the oracle pins both endpoint signs strictly
// outside its own error bound; anything weaker stays uncertified.
bool certified_sign_change(int i, double lo, double hi) {
  try {
    const OracleValue glo = oracle_gap(i, lo, 30);
    const OracleValue ghi = oracle_gap(i, hi, 30);
    return glo.to_double() < -glo.abs_error_bound &&
           ghi.to_double() > ghi.abs_error_bound;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

double gap(int i, double theta, const EvalConfig& cfg) {
  cfg.validate();
  if (i < 1) throw ArgumentError("gap: order must be >= 1");
  if (!std::isfinite(theta) || !(theta > 0.0) || theta > 1.0)
    throw ArgumentError("gap: theta must lie in (0, 1]");
  const double theta2 = theta * theta;
  // Far below the crossover |psi^(i)(theta^2)| dwarfs 2|psi^(i)(theta)|; once
  // the larger side stops being representable the sign is already decided, so
  // report negative by dominance instead of failing.
  if (theta2 == 0.0) return -std::numeric_limits<double>::infinity();
  double big;
  try {
    big = abs_polygamma(i, theta2, cfg);
  } catch (const EvalOverflow&) {
    return -std::numeric_limits<double>::infinity();
  }
  return 2.0 * abs_polygamma(i, theta, cfg) - big;
}

ThresholdResult solve_theta(int i, double tol, const EvalConfig& cfg) {
  cfg.validate();
  if (i < 1 || i > 12)
    throw ArgumentError("solve_theta: order must be in [1, 12]");
  if (!(tol >= 1e-15 && tol <= 1e-3))
    throw ArgumentError("solve_theta: tol must be in [1e-15, 1e-3]");

  // gap(1) = |psi^(i)(1)| > 0 exactly, so only the low edge needs hunting;
  // 0.5 is already on the negative side for every supported order, the
  // halving loop is insurance.
  double lo = 0.5;
  double hi = 1.0;
  double glo = gap(i, lo, cfg);
  while (glo >= 0.0) {
    hi = lo;
    lo *= 0.5;
    if (lo < 0x1p-900) throw SolverError(i, "no sign change found below 0.5");
    glo = gap(i, lo, cfg);
  }

  int iterations = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket is one ulp wide
    if (gap(i, mid, cfg) <= 0.0)
      lo = mid;
    else
      hi = mid;
    ++iterations;
  }

  ThresholdResult r;
  r.order = i;
  r.lo = lo;
  r.hi = hi;
  r.residual = gap(i, 0.5 * (lo + hi), cfg);
  r.iterations = iterations;
  r.certified = certified_sign_change(i, lo, hi);
  return r;
}

std::vector<ThresholdResult> theta_table(int i_max, double tol, const EvalConfig& cfg) {
  if (i_max < 1 || i_max > 12)
    throw ArgumentError("theta_table: max order must be in [1, 12]");
  std::vector<ThresholdResult> out;
  out.reserve(static_cast<std::size_t>(i_max));
  for (int i = 1; i <= i_max; ++i) out.push_back(solve_theta(i, tol, cfg));
  return out;
}

}  // namespace polyadd
