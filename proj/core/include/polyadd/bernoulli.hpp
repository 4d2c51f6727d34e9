#pragma once

#include <span>

namespace polyadd {

// Even-index Bernoulli numbers B_2, B_4, ..., B_{2n} (signed convention:
// 1/6, -1/30, 1/42, -1/30, 5/66, ...). Requires 1 <= n <= 60.
//
// The table is built once from the defining recurrence sum_j C(m+1,j) B_j = 0
// in exact rational arithmetic and rounded to double at the very end, so the
// recurrence's catastrophic cancellation never touches floating point. First
// access is thread-safe; afterwards reads are free.
std::span<const double> bernoulli_even(int n);

}  // namespace polyadd
