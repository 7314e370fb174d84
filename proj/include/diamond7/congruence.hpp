#pragma once

#include <cstdint>

#include "diamond7/bigint.hpp"
#include "diamond7/ell.hpp"
#include "diamond7/report.hpp"

namespace diamond7 {

struct LambdaSpec {
  Family family;
  int alpha;
  BigInt value;
};

/// K3: (5*7^a + 1)/6. K5: (1 + 7^a)/4 for odd a, (1 + 3*7^a)/4 for even a.
LambdaSpec lambda(Family f, int alpha);

/// Largest d_k argument any scan will expand to.
inline constexpr std::int64_t kScanBudget = 20'000'000;

/// 7^{floor(a/2)} | d_3(7^a n + lambda_a) for 0 <= n <= n_max.
/// Scans residues modulo 7^{mod_exponent} (at least the target exponent) and
/// rechecks any failure with exact integers.
Report check_theorem_d3(int alpha, std::int64_t n_max, int mod_exponent = 0);

/// d_5(7^{a+2}n + l_{a+2}) d_5(l_a) == d_5(7^a n + l_a) d_5(l_{a+2})
/// modulo 7^{floor(a/2)+2} for 0 <= n <= n_max.
Report check_theorem_d5(int alpha, std::int64_t n_max, int mod_exponent = 0);

/// d_{7k}(7n+5) == 0 and d_{7k+5}(7n+2) == 0 modulo 7 for k <= k_max, n <= n_max,
/// plus D_{7k} == J_14^k / (J_7^{3k} J_1) modulo 7 on the window.
Report check_corollary(int k_max, std::int64_t n_max);

/// L_a from the U_7 iteration equals the prefactor times sum d_k(7^a n + lambda_a) q^n.
Report check_prefactor_identity(Family f, int alpha, std::int64_t through);

}  // namespace diamond7
