#pragma once

// Reference implementations kept deliberately naive and independent of the
// library code paths they check.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Poly = std::vector<Z>;  // coefficient of q^i at index i

/// p(0..n) by Euler's pentagonal recurrence.
inline std::vector<Z> partitions(int n) {
  std::vector<Z> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Z s = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const int sign = (k % 2 == 1) ? 1 : -1;
      s += sign * p[m - g1];
      if (g2 <= m) s += sign * p[m - g2];
    }
    p[m] = s;
  }
  return p;
}

/// Double-loop truncated product through q^n.
inline Poly convolve(const Poly& a, const Poly& b, int n) {
  Poly c(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(n); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(n); ++j) {
      c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

/// prod_{b, r} prod_{m >= 1} (1 - q^{b m})^r through q^n, one factor at a time.
/// Negative exponents use the geometric series 1/(1 - q^s) = sum q^{s j}.
inline Poly j_product(const std::vector<std::pair<int, int>>& factors, int n) {
  Poly f(static_cast<std::size_t>(n) + 1, 0);
  f[0] = 1;
  for (auto [b, r] : factors) {
    for (int m = 1; b * m <= n; ++m) {
      const int s = b * m;
      for (int rep = 0; rep < (r < 0 ? -r : r); ++rep) {
        if (r > 0) {
          for (int i = n; i >= s; --i) f[i] -= f[i - s];
        } else {
          for (int i = s; i <= n; ++i) f[i] += f[i - s];
        }
      }
    }
  }
  return f;
}

/// d_k(0..n) from J_2^k / J_1^{3k+1}.
inline Poly diamond_counts(int k, int n) { return j_product({{2, k}, {1, -(3 * k + 1)}}, n); }

}  // namespace oracle
