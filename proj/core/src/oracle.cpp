#include "polyadd/oracle.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "polyadd/ddouble.hpp"
#include "polyadd/errors.hpp"

namespace polyadd {
namespace {

constexpr int kMaxOracleOrder = 18;  // k! stays exactly representable
constexpr long kMaxDirectTerms = 20000000;

double factorial(int n) {
  static constexpr double exact[] = {
      1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0,
      3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0,
      1307674368000.0, 20922789888000.0, 355687428096000.0, 6402373705728000.0};
  return exact[n];
}

// (s)_m = s (s+1) ... (s+m-1); exact in double for s <= 19, m <= 9.
double rising(int s, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= static_cast<double>(s + i);
  return r;
}

struct ZetaDD {
  DDouble value;
  double bound;  // |true zeta - value|, truncation plus rounding
};

// Hurwitz zeta(s, a) for integer s >= 2 and a > 0, in double-double:
// N direct terms, then the Euler-Maclaurin tail at w = a + N,
//   w^(1-s)/(s-1) + w^(-s)/2 + sum_{j=1..4} B_2j/(2j)! (s)_(2j-1) w^(-s-2j+1).
// (a+x)^(-s) is completely monotone in x, so the remainder after the j = 4
// correction is bounded by the magnitude of the dropped j = 5 term.
ZetaDD hurwitz_zeta(int s, DDouble a, int digits) {
  const double ad = a.hi;

  // Choose N so the dropped term is below 10^-digits of a zeta lower bound
  // (the first summand, or the tail integral, whichever is larger).
  const double c5 = (5.0 / 66.0) / 3628800.0 * rising(s, 9);  // B_10/10! (s)_9
  const double log_lb = std::max(-s * std::log(ad),
                                 (1.0 - s) * std::log(ad) - std::log(2.0 * (s - 1.0)));
  const double log_target = -digits * std::log(10.0) + log_lb;
  const double ln_w_needed = (std::log(c5) - log_target) / (s + 9);

  long n_terms = 50;
  if (ad < 0.2)
    n_terms = std::max(n_terms, static_cast<long>(std::ceil(10.0 / ad)));
  if (ln_w_needed > std::log(static_cast<double>(kMaxDirectTerms) + 1.0))
    throw ArgumentError("oracle: digits/argument combination needs too many direct terms");
  n_terms = std::max(n_terms, static_cast<long>(std::ceil(std::exp(ln_w_needed) - ad)));
  if (n_terms > kMaxDirectTerms)
    throw ArgumentError("oracle: digits/argument combination needs too many direct terms");

  DDouble sum{0.0, 0.0};
  for (long n = 0; n < n_terms; ++n)
    sum = dd::add(sum, dd::reciprocal(dd::ipow(dd::add(a, static_cast<double>(n)), s)));

  const DDouble w = dd::add(a, static_cast<double>(n_terms));
  const DDouble winv = dd::reciprocal(w);
  const DDouble winv2 = dd::mul(winv, winv);
  const DDouble wpow_s = dd::ipow(winv, s);
  sum = dd::add(sum, dd::div(dd::mul(w, wpow_s), DDouble{static_cast<double>(s - 1), 0.0}));
  sum = dd::add(sum, dd::mul(wpow_s, 0.5));

  // B_2j/(2j)! as exact rationals, divided in double-double so the
  // correction coefficients carry no single-precision rounding.
  static constexpr double denom[4] = {12.0, 720.0, 30240.0, 1209600.0};
  DDouble p = dd::mul(wpow_s, winv);  // w^(-s-2j+1) at j = 1
  for (int j = 1; j <= 4; ++j) {
    const double numer = (j & 1) ? rising(s, 2 * j - 1) : -rising(s, 2 * j - 1);
    const DDouble coef = dd::div(DDouble{numer, 0.0}, DDouble{denom[j - 1], 0.0});
    sum = dd::add(sum, dd::mul(coef, p));
    if (j < 4) p = dd::mul(p, winv2);
  }

  const double trunc = 1.02 * c5 * std::pow(w.hi, -static_cast<double>(s + 9));
  const double round = (static_cast<double>(n_terms) + 64.0) * 0x1p-100 * std::abs(sum.hi);
  return {sum, trunc + round};
}

void check_oracle_args(const char* who, int k, double x, int digits) {
  if (k < 1 || k > kMaxOracleOrder)
    throw ArgumentError(std::string(who) + ": order must be in [1, 18]");
  if (digits < 20 || digits > 50)
    throw ArgumentError(std::string(who) + ": digits must be in [20, 50]");
  if (!std::isfinite(x) || !(x > 0.0))
    throw DomainError(std::string(who) + ": argument must be a finite positive real");
}

void check_representable(int k, double x) {
  const double log_leading = std::lgamma(k + 1.0) - (k + 1) * std::log(x);
  if (log_leading > 708.5)
    throw EvalOverflow(k, x, log_leading,
                       "oracle: value exceeds double range; leading term k!/x^(k+1) "
                       "has natural log " + std::to_string(log_leading));
}

}  // namespace

OracleValue oracle_polygamma(int k, double x, int digits) {
  check_oracle_args("oracle_polygamma", k, x, digits);
  check_representable(k, x);
  const ZetaDD z = hurwitz_zeta(k + 1, DDouble{x, 0.0}, digits);
  const double kfac = factorial(k);
  const DDouble v = dd::mul(z.value, kfac);
  const double bound = kfac * z.bound * 1.0000000001 + 1e-320;
  return {v, bound};
}

OracleValue oracle_gap(int i, double theta, int digits) {
  check_oracle_args("oracle_gap", i, theta, digits);
  if (theta > 1.0) throw ArgumentError("oracle_gap: theta must be in (0, 1]");
  check_representable(i, theta * theta);
  const DDouble theta2 = dd::two_prod(theta, theta);  // exact square
  const ZetaDD z1 = hurwitz_zeta(i + 1, DDouble{theta, 0.0}, digits);
  const ZetaDD z2 = hurwitz_zeta(i + 1, theta2, digits);
  const DDouble d = dd::sub(dd::add(z1.value, z1.value), z2.value);
  const double ifac = factorial(i);
  const DDouble v = dd::mul(d, ifac);
  // The 2*Z1 - Z2 cancellation leaves rounding at the scale of the operands,
  // not of the difference, so charge it against |Z2|.
  const double bound =
      ifac * (2.0 * z1.bound + z2.bound + std::abs(z2.value.hi) * 1e-31) * 1.0000000001 +
      1e-320;
  return {v, bound};
}

}  // namespace polyadd
