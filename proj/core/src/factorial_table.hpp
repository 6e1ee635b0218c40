#pragma once

#include <stdexcept>

namespace qfilter::detail {

// Exact in double up to 18! (< 2^53); photon counts stay far below that.
inline constexpr int kMaxFactorialArg = 18;

inline double factorial(int n) {
  if (n < 0 || n > kMaxFactorialArg) {
    throw std::invalid_argument("factorial argument out of supported range");
  }
  double result = 1.0;
  for (int k = 2; k <= n; ++k) result *= k;
  return result;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace qfilter::detail
