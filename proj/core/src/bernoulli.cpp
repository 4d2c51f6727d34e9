#include "polyadd/bernoulli.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <vector>

#include "polyadd/errors.hpp"

namespace polyadd {
namespace {

constexpr int kMaxEven = 60;  // table holds B_2 .. B_120

using Rational = boost::multiprecision::cpp_rational;

// B_m from sum_{j=0..m} C(m+1, j) B_j = 0, entirely in exact rationals. The
// recurrence is catastrophically ill-conditioned in floating point (each step
// multiplies the relative error by ~6.6), which is why rounding happens only
// once, at the very end.
std::array<double, kMaxEven> build_table() {
  const int top = 2 * kMaxEven;
  std::vector<Rational> b(top + 1);
  b[0] = 1;
  b[1] = Rational(-1, 2);
  std::vector<boost::multiprecision::cpp_int> binom(top + 2);
  for (int m = 2; m <= top; ++m) {
    // binomials C(m+1, j) by the rolling Pascal update
    binom[0] = 1;
    for (int j = 1; j <= m + 1; ++j)
      binom[j] = binom[j - 1] * (m + 2 - j) / j;
    Rational acc = 0;
    for (int j = 0; j < m; ++j) {
      if (j > 1 && (j & 1)) continue;  // odd-index B vanish past B_1
      acc += Rational(binom[j]) * b[j];
    }
    b[m] = -acc / Rational(m + 1);
  }
  std::array<double, kMaxEven> out{};
  for (int n = 1; n <= kMaxEven; ++n)
    out[static_cast<std::size_t>(n - 1)] = static_cast<double>(b[2 * n]);
  return out;
}

}  // namespace

std::span<const double> bernoulli_even(int n) {
  if (n < 1 || n > kMaxEven)
    throw ArgumentError("bernoulli_even: n must be in [1, 60]");
  static const std::array<double, kMaxEven> table = build_table();
  return {table.data(), static_cast<std::size_t>(n)};
}

}  // namespace polyadd
