#pragma once

#include <cmath>

namespace polyadd {

/**
 * Unevaluated sum of two doubles, giving roughly 31 decimal digits.
 *
 * Invariant: hi = fl(hi + lo), i.e. lo is at most half an ulp of hi.
 * Built on the usual error-free transforms; products use FMA so the
 * multiplication error is exact in one instruction. Only the operations the
 * reference summation needs are provided (+, -, *, /, integer pow); there are
 * deliberately no transcendentals here.
 */
struct DDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DDouble() = default;
  constexpr DDouble(double h) : hi(h), lo(0.0) {}
  constexpr DDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace dd {

// fl(a+b) and the exact rounding error (Knuth two-sum, no magnitude ordering).
inline DDouble two_sum(double a, double b) {
  double s = a + b;
  double v = s - a;
  double e = (a - (s - v)) + (b - v);
  return {s, e};
}

// two_sum specialization valid when |a| >= |b|.
inline DDouble quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

// fl(a*b) and the exact error via FMA.
inline DDouble two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DDouble add(const DDouble& a, const DDouble& b) {
  DDouble s = two_sum(a.hi, b.hi);
  DDouble t = two_sum(a.lo, b.lo);
  double e = s.lo + t.hi;
  DDouble r = quick_two_sum(s.hi, e);
  return quick_two_sum(r.hi, r.lo + t.lo);
}

inline DDouble add(const DDouble& a, double b) {
  DDouble s = two_sum(a.hi, b);
  return quick_two_sum(s.hi, s.lo + a.lo);
}

inline DDouble sub(const DDouble& a, const DDouble& b) {
  return add(a, DDouble{-b.hi, -b.lo});
}

inline DDouble mul(const DDouble& a, const DDouble& b) {
  DDouble p = two_prod(a.hi, b.hi);
  double e = p.lo + (a.hi * b.lo + a.lo * b.hi);
  return quick_two_sum(p.hi, e);
}

inline DDouble mul(const DDouble& a, double b) {
  DDouble p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DDouble div(const DDouble& a, const DDouble& b) {
  // Long division: two quotient digits plus a correction from the remainder.
  double q1 = a.hi / b.hi;
  DDouble r = sub(a, mul(b, q1));
  double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  double q3 = r.hi / b.hi;
  DDouble q = quick_two_sum(q1, q2);
  return add(q, q3);
}

inline DDouble reciprocal(const DDouble& b) { return div(DDouble{1.0}, b); }

// a^n for n >= 0 by binary exponentiation.
inline DDouble ipow(DDouble a, int n) {
  DDouble r{1.0};
  while (n > 0) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

inline bool less(const DDouble& a, const DDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

}  // namespace dd
}  // namespace polyadd
