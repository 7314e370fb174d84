#pragma once

#include <cstdint>
#include <vector>

#include "diamond7/qseries.hpp"

namespace diamond7 {

/// Truncated Laurent series with coefficients in Z/mZ, m < 2^62.
/// Used for large congruence scans and deep L-sequence cross-checks where the
/// exact integers are far too large. Any congruence f = 0 (mod 7^s) with
/// 7^s | m is decided exactly.
///
/// Unlike QSeries, the storage start is not normalized: `start()` is simply
/// the first stored exponent; coefficients below it are zero.
class ResidueSeries {
 public:
  ResidueSeries(std::uint64_t modulus, std::int64_t start, std::vector<std::uint64_t> coeffs,
                std::int64_t valid_through);

  static ResidueSeries from_exact(const QSeries& f, std::uint64_t modulus);
  static ResidueSeries one(std::uint64_t modulus, std::int64_t valid_through);

  std::uint64_t modulus() const { return modulus_; }
  std::int64_t start() const { return start_; }
  std::int64_t valid_through() const { return valid_through_; }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }

  /// Residue of the coefficient of q^n; throws PrecisionError above the window.
  std::uint64_t coeff(std::int64_t n) const;

  ResidueSeries truncated(std::int64_t through) const;
  ResidueSeries shifted(std::int64_t s) const;

  /// True when every coefficient through the window is zero.
  bool is_zero() const;

 private:
  std::uint64_t modulus_;
  std::int64_t start_;
  std::vector<std::uint64_t> coeffs_;
  std::int64_t valid_through_;
};

ResidueSeries add(const ResidueSeries& a, const ResidueSeries& b);
ResidueSeries sub(const ResidueSeries& a, const ResidueSeries& b);
ResidueSeries scale(const ResidueSeries& a, std::uint64_t c);
ResidueSeries mul(const ResidueSeries& a, const ResidueSeries& b);
/// Inverse when the first stored coefficient is a unit modulo m.
ResidueSeries invert(const ResidueSeries& a, std::int64_t through);
ResidueSeries u_operator(const ResidueSeries& f, std::int64_t m);
ResidueSeries substitute_power(const ResidueSeries& f, std::int64_t d);
/// f * J_b^r by sparse pentagonal passes.
ResidueSeries mul_j_power(const ResidueSeries& f, std::int64_t b, std::int64_t r,
                          std::int64_t through = kUnbounded);
/// J_1^e as a dense series through `through`, via NTT squaring for long windows.
ResidueSeries j1_power(std::int64_t e, std::uint64_t modulus, std::int64_t through);

std::uint64_t to_residue(const BigInt& v, std::uint64_t modulus);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

}  // namespace diamond7
