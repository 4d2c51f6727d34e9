#pragma once

#include "polyadd/eval_config.hpp"

namespace polyadd {

// psi(x) for x > 0: recurrence shift past cfg's target, then the log-asymptotic
// series ln z - 1/(2z) - sum B_2j/(2j z^2j). Errors: x <= 0 or non-finite -> DomainError.
double digamma(double x, const EvalConfig& cfg = {});

// psi^(k)(x) for k >= 1, x > 0, signed: sign is (-1)^(k+1) on the whole positive axis.
// Shift terms k!/(x+j)^(k+1) are same-signed and accumulated with compensated
// summation before the Bernoulli tail takes over at the shifted argument.
// Errors: DomainError as above; EvalOverflow when k!/x^(k+1) exceeds double range.
double polygamma(int k, double x, const EvalConfig& cfg = {});

// |psi^(k)(x)|, k >= 1: the quantity whose additivity structure is under study. Strictly
// positive and strictly decreasing in x.
double abs_polygamma(int k, double x, const EvalConfig& cfg = {});

// F(t) = |psi^(k)(exp(t))|: the function whose sub/super-additivity in t is under
// test. Guards that exp(t) is a positive normal double; overflow as in polygamma.
double polygamma_exp(int k, double t, const EvalConfig& cfg = {});

}  // namespace polyadd
