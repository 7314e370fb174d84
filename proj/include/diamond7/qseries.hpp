#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "diamond7/bigint.hpp"

namespace diamond7 {

/// Marker for "known to every order" (exact polynomials, exact products).
inline constexpr std::int64_t kUnbounded = std::int64_t{1} << 60;

/// Saturating addition on precision bounds.
constexpr std::int64_t prec_add(std::int64_t a, std::int64_t b) {
  if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
  return a + b;
}

/// Truncated Laurent series in q with exact integer coefficients.
///
/// Coefficients are stored densely from min_exp() upward. Exponents above the
/// last stored one but not above valid_through() are zero. Coefficients above
/// valid_through() are unknown and reading them throws PrecisionError.
/// The zero series has no stored coefficients and min_exp = valid_through + 1
/// (or an arbitrary large value if the precision is unbounded).
class QSeries {
 public:
  /// The zero series, exact to every order.
  QSeries();

  /// Series with the given coefficients starting at `min_exp`, correct
  /// through `valid_through`. Coefficients above valid_through are dropped.
  QSeries(std::int64_t min_exp, std::vector<BigInt> coeffs, std::int64_t valid_through);

  static QSeries zero(std::int64_t valid_through = kUnbounded);
  static QSeries monomial(const BigInt& c, std::int64_t e,
                          std::int64_t valid_through = kUnbounded);
  static QSeries one(std::int64_t valid_through = kUnbounded) {
    return monomial(BigInt(1), 0, valid_through);
  }

  std::int64_t min_exp() const { return min_exp_; }
  std::int64_t valid_through() const { return valid_through_; }
  /// Highest exponent with a stored coefficient (min_exp - 1 when empty).
  std::int64_t max_stored() const {
    return min_exp_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  /// Coefficient of q^n. Throws PrecisionError when n > valid_through().
  BigInt coeff(std::int64_t n) const;
  /// Same without the bounds check; returns a reference to a shared zero.
  const BigInt& at(std::int64_t n) const;

  /// Copy restricted to exponents <= through (precision lowered accordingly).
  QSeries truncated(std::int64_t through) const;
  /// Multiply by q^s.
  QSeries shifted(std::int64_t s) const;

  QSeries operator-() const;
  QSeries& operator*=(const BigInt& c);

 private:
  void normalize();

  std::int64_t min_exp_;
  std::vector<BigInt> coeffs_;
  std::int64_t valid_through_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, const BigInt& c);
/// Exact division of every coefficient by `d`; throws IntegralityViolation
/// when some coefficient is not divisible.
QSeries divexact(const QSeries& a, const BigInt& d);

/// Multiplicative inverse. The leading coefficient must be +1 or -1.
/// `through` caps the result window; it is required when the input is exact.
QSeries invert(const QSeries& a, std::int64_t through = kUnbounded);

/// a^e for integer e (negative exponents invert first).
QSeries power(const QSeries& a, std::int64_t e, std::int64_t through = kUnbounded);

/// Coefficient of q^n in the result is f's coefficient of q^(m n).
QSeries u_operator(const QSeries& f, std::int64_t m);

/// q -> q^d.
QSeries substitute_power(const QSeries& f, std::int64_t d);

/// Every stored coefficient replaced by its least nonnegative residue.
QSeries reduce_mod(const QSeries& f, const BigInt& modulus);

SevenAdicOrder min_valuation(const QSeries& f);

/// Generalized pentagonal exponents b*k(3k-1)/2 (k = 1,-1,2,-2,...) that are
/// <= limit, with their signs (-1)^k. The k = 0 term is implied.
struct PentagonalTerm {
  std::int64_t exponent;
  int sign;
};
std::vector<PentagonalTerm> pentagonal_terms(std::int64_t b, std::int64_t limit);

/// f * J_b^r where J_b = prod (1 - q^{b n}), computed by r sparse passes.
/// The result is valid through min(f.valid_through(), through).
QSeries mul_j_power(const QSeries& f, std::int64_t b, std::int64_t r,
                    std::int64_t through = kUnbounded);

/// First exponent <= through at which a and b differ, if any. Only the
/// common window min(a.vt, b.vt, through) is compared.
struct SeriesMismatch {
  std::int64_t exponent;
  BigInt left;
  BigInt right;
};
std::optional<SeriesMismatch> first_difference(const QSeries& a, const QSeries& b,
                                               std::int64_t through = kUnbounded);

bool equal_on_window(const QSeries& a, const QSeries& b, std::int64_t through = kUnbounded);

}  // namespace diamond7
