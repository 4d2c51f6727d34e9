#pragma once

#include <vector>

#include "polyadd/eval_config.hpp"

namespace polyadd {

// Certified enclosure of one additivity threshold theta_i.
// Invariants: 0 < lo < hi < 1; hi - lo <= the requested tolerance; when
// certified, the reference oracle confirmed gap(lo) < 0 < gap(hi) beyond its
// own error bounds.
struct ThresholdResult {
  int order = 0;
  double lo = 0.0;
  double hi = 0.0;
  double residual = 0.0;  // fast-path gap at the midpoint
  bool certified = false;
  int iterations = 0;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

// 2|psi^(i)(theta)| - |psi^(i)(theta^2)| on 0 < theta <= 1, via the fast
// evaluator. Exactly |psi^(i)(1)| at theta = 1 (2v - v is exact in IEEE).
// Near theta = 0 the evaluation overflows; since the leading terms give
// 2 i!/theta^(i+1) < i!/theta^(2i+2) there, the gap is negative by asymptotic
// dominance and the sentinel -infinity is returned (orderable, so bracket
// halving keeps working). Errors: i < 1 or theta outside (0,1] -> ArgumentError.
double gap(int i, double theta, const EvalConfig& cfg = {});

// Pure bisection for the unique root of gap(i, .) in (0, 1): bracket discovery
// starts from [0.5, 1] (gap(1) = |psi^(i)(1)| > 0 guarantees the right end) and
// halves the left end until the gap goes negative; then bisects to width <= tol
// and re-checks the endpoint signs with oracle_gap at digits = 30. No Newton:
// d/dtheta costs more polygamma orders than the extra iterations save, and
// bisection keeps the enclosure property the certification relies on.
// tol must lie in [1e-15, 1e-3]; i in [1, 12]. Bracket exhaustion -> SolverError.
ThresholdResult solve_theta(int i, double tol = 1e-12, const EvalConfig& cfg = {});

// Thresholds for i = 1..i_max, ordered by i regardless of computation order.
// Failures are rethrown annotated with the failing order.
std::vector<ThresholdResult> theta_table(int i_max, double tol = 1e-12,
                                         const EvalConfig& cfg = {});

}  // namespace polyadd
