#pragma once

#include <optional>

#include "polyadd/errors.hpp"

namespace polyadd {

// Precision/strategy knobs for the fast polygamma evaluator.
//
// shift_target: the recurrence shifts the argument upward until it reaches this
// magnitude before switching to the asymptotic expansion. Empty means automatic,
// 16 + k (the default depends on the derivative order, so it cannot live in a
// plain double field). An explicit value must be >= 2.
//
// asymptotic_terms: cap on the number of Bernoulli-series terms (B_2..B_{2n}).
//
// rel_tol: target relative accuracy. The asymptotic tail exits early once the
// next term falls below 0.1*rel_tol of the accumulated value; since the series
// alternates with decreasing magnitude at the shifted argument, the remainder
// is bounded by that first omitted term. Loosening rel_tol therefore genuinely
// cheapens and degrades the evaluation.
struct EvalConfig {
  std::optional<double> shift_target{};
  int asymptotic_terms = 12;
  double rel_tol = 1e-13;

  double effective_shift_target(int k) const {
    return shift_target ? *shift_target : 16.0 + static_cast<double>(k);
  }

  void validate() const {
    if (shift_target && !(*shift_target >= 2.0))
      throw ArgumentError("EvalConfig: shift_target must be >= 2");
    if (asymptotic_terms < 4 || asymptotic_terms > 60)
      throw ArgumentError("EvalConfig: asymptotic_terms must be in [4, 60]");
    if (!(rel_tol > 0.0) || !(rel_tol < 1e-6))
      throw ArgumentError("EvalConfig: rel_tol must satisfy 0 < rel_tol < 1e-6");
  }
};

}  // namespace polyadd
