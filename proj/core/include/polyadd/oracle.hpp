#pragma once

#include "polyadd/ddouble.hpp"

namespace polyadd {

// A reference value with a rigorous absolute error bound (truncation plus an
// over-counted rounding allowance). The value is kept in double-double form so
// that self-consistency between digit settings can be observed below double
// epsilon; abs_error_bound is plain double, it only needs an order of magnitude.
struct OracleValue {
  DDouble value;
  double abs_error_bound = 0.0;

  double to_double() const { return value.to_double(); }
};

// |psi^(k)(x)| = k! * zeta(k+1, x), evaluated by direct Hurwitz-zeta summation
// in double-double arithmetic with a four-term Euler-Maclaurin tail. This path
// shares nothing with the fast evaluator: no recurrence shift, no Bernoulli
// asymptotics, different arithmetic. Deliberately slow, auditable, and bounded.
//
// digits in [20, 50] steers how many direct terms are taken (the arithmetic
// itself floors useful precision near 31 digits; the bound reports honestly).
// Errors: x <= 0 / non-finite -> DomainError; k < 1 or digits out of range ->
// ArgumentError.
OracleValue oracle_polygamma(int k, double x, int digits = 30);

// Signed gap 2|psi^(i)(theta)| - |psi^(i)(theta^2)| whose unique root in (0,1)
// is the additivity threshold. theta^2 is formed exactly (two_prod), so the
// bound does not inherit a double squaring error. Requires 0 < theta <= 1.
OracleValue oracle_gap(int i, double theta, int digits = 30);

}  // namespace polyadd
