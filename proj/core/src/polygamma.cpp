#include "polyadd/polygamma.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "polyadd/bernoulli.hpp"
#include "polyadd/errors.hpp"

namespace polyadd {
namespace {

constexpr int kMaxOrder = 150;  // factorial(k+1) must stay finite

// Neumaier-compensated accumulator: exact running error of every add is kept
// in a side channel, so long same-signed shift sums do not drift.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  double result() const { return sum + comp; }
};

double ipow(double base, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// Exact through 18!, good to a few ulps beyond (orders past the solver's range).
double factorial(int n) {
  static constexpr double exact[] = {
      1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0,
      3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0,
      1307674368000.0, 20922789888000.0, 355687428096000.0, 6402373705728000.0};
  if (n < 19) return exact[n];
  double r = exact[18];
  for (int m = 19; m <= n; ++m) r *= m;
  return r;
}

void check_point(const char* who, double x) {
  if (!std::isfinite(x) || !(x > 0.0))
    throw DomainError(std::string(who) + ": argument must be a finite positive real");
}

[[noreturn]] void throw_overflow(int k, double x) {
  double log_leading = std::lgamma(k + 1.0) - (k + 1) * std::log(x);
  throw EvalOverflow(k, x, log_leading,
                     "polygamma: |psi^(" + std::to_string(k) + ")(" +
                         std::to_string(x) + ")| exceeds double range; leading term " +
                         "k!/x^(k+1) has natural log " + std::to_string(log_leading));
}

// Bernoulli tail of |psi^(k)(z)| for k >= 1 at the shifted argument:
//   (k-1)!/z^k + k!/(2 z^(k+1)) + sum_j B_2j (2j+k-1)!/(2j)! z^(-2j-k).
// The series alternates with strictly decreasing magnitude for z >= 16+k, so
// it stops at the tolerance or at the smallest term, and the remainder is
// bounded by the first omitted term either way.
void accumulate_abs_tail(CompensatedSum& acc, int k, double z, const EvalConfig& cfg) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  const double lead = factorial(k - 1) * ipow(inv, k);
  acc.add(lead);
  acc.add(0.5 * k * lead * inv);
  const auto bern = bernoulli_even(cfg.asymptotic_terms);
  double q = 0.5 * factorial(k + 1);  // (2j+k-1)!/(2j)! at j = 1
  double p = ipow(inv, k + 2);        // inv^(2j+k) at j = 1
  const double stop = 0.1 * cfg.rel_tol;
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= cfg.asymptotic_terms; ++j) {
    const double term = bern[static_cast<std::size_t>(j - 1)] * q * p;
    const double mag = std::abs(term);
    if (mag >= prev) break;  // past the asymptotic turning point
    acc.add(term);
    prev = mag;
    if (mag < stop * acc.sum) break;
    q *= static_cast<double>(2 * j + k) * static_cast<double>(2 * j + k + 1) /
         (static_cast<double>(2 * j + 1) * static_cast<double>(2 * j + 2));
    p *= inv2;
  }
}

// |psi^(k)(x)| for k >= 1: every contribution is positive, so the recurrence
// shift terms k!/(x+j)^(k+1) and the tail share one compensated accumulator.
double abs_polygamma_impl(int k, double x, const EvalConfig& cfg) {
  // Diagnose overflow before touching 1/x^(k+1): for x < 1 the result is
  // lead*(1 + O(x^(k+1))), so the leading term alone decides.
  if (x < 1.0) {
    const double log_leading = std::lgamma(k + 1.0) - (k + 1) * std::log(x);
    if (log_leading > 708.5) throw_overflow(k, x);
  }
  const double target = cfg.effective_shift_target(k);
  CompensatedSum acc;
  double z = x;
  if (z < target) {
    int m = static_cast<int>(target - z) + 1;
    const double kfac = factorial(k);
    for (int j = 0; j < m; ++j) acc.add(kfac * ipow(1.0 / (x + j), k + 1));
    z = x + m;
  }
  accumulate_abs_tail(acc, k, z, cfg);
  const double r = acc.result();
  if (!std::isfinite(r)) throw_overflow(k, x);
  return r;
}

}  // namespace

double digamma(double x, const EvalConfig& cfg) {
  cfg.validate();
  check_point("digamma", x);
  if (x < std::numeric_limits<double>::min())  // 1/x already out of range
    throw EvalOverflow(0, x, -std::log(x),
                       "digamma: |psi(x)| exceeds double range for subnormal x");
  const double target = std::max(cfg.effective_shift_target(0), 2.0);
  CompensatedSum acc;
  double z = x;
  if (z < target) {
    int m = static_cast<int>(target - z) + 1;
    for (int j = 0; j < m; ++j) acc.add(-1.0 / (x + j));
    z = x + m;
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  acc.add(std::log(z));
  acc.add(-0.5 * inv);
  const auto bern = bernoulli_even(cfg.asymptotic_terms);
  const double scale = std::log(z);  // z >= 16 keeps this away from 0
  const double stop = 0.1 * cfg.rel_tol;
  double p = inv2;
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= cfg.asymptotic_terms; ++j) {
    const double term = bern[static_cast<std::size_t>(j - 1)] / (2 * j) * p;
    const double mag = std::abs(term);
    if (mag >= prev) break;
    acc.add(-term);
    prev = mag;
    if (mag < stop * scale) break;
    p *= inv2;
  }
  return acc.result();
}

double polygamma(int k, double x, const EvalConfig& cfg) {
  cfg.validate();
  if (k < 1)
    throw ArgumentError("polygamma: order must be >= 1 (use digamma for k = 0)");
  if (k > kMaxOrder) throw ArgumentError("polygamma: order out of supported range");
  check_point("polygamma", x);
  const double a = abs_polygamma_impl(k, x, cfg);
  return (k & 1) ? a : -a;  // sign is (-1)^(k+1) on x > 0
}

double abs_polygamma(int k, double x, const EvalConfig& cfg) {
  cfg.validate();
  if (k < 1)
    throw ArgumentError("abs_polygamma: order must be >= 1 (use digamma for k = 0)");
  if (k > kMaxOrder) throw ArgumentError("abs_polygamma: order out of supported range");
  check_point("abs_polygamma", x);
  return abs_polygamma_impl(k, x, cfg);
}

double polygamma_exp(int k, double t, const EvalConfig& cfg) {
  // exp(t) must be a positive normal double; beyond either edge the composite
  // is not evaluable at all, which is a domain problem, not an overflow.
  static const double t_min = std::log(std::numeric_limits<double>::min());
  static const double t_max = std::log(std::numeric_limits<double>::max());
  if (!std::isfinite(t) || t < t_min || t > t_max)
    throw DomainError("polygamma_exp: exp(t) is not representable as a positive normal double");
  return abs_polygamma(k, std::exp(t), cfg);
}

}  // namespace polyadd
