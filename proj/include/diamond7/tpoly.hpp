#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diamond7/bigint.hpp"
#include "diamond7/qseries.hpp"

namespace diamond7 {

/// Coefficient arithmetic regime for symbolic objects.
///
/// Exact mode keeps full integers. With r7 > 0 every coefficient is kept as
/// its least nonnegative residue mod 7^r7; a coefficient reported as zero is
/// then only known to be divisible by 7^r7. A finite max_degree drops every
/// t-power above it; forward recurrences never move high powers down, so the
/// retained coefficients stay exact.
struct Precision {
  unsigned r7 = 0;
  std::int64_t max_degree = kUnbounded;

  static Precision exact() { return {}; }
  static Precision mod7(unsigned r) { return {r, kUnbounded}; }

  bool is_exact() const { return r7 == 0; }
  bool degree_capped() const { return max_degree < kUnbounded; }
  /// 7^r7 (only meaningful when !is_exact()).
  const BigInt& modulus() const { return pow7(r7); }
  std::string describe() const;

  friend bool operator==(const Precision&, const Precision&) = default;
};

/// Laurent polynomial in t with integer coefficients, stored densely from
/// its lowest nonzero power. No stored zero at either end.
class TPoly {
 public:
  TPoly() = default;
  TPoly(std::int64_t lo, std::vector<BigInt> coeffs);
  static TPoly monomial(const BigInt& c, std::int64_t power);

  bool is_zero() const { return c_.empty(); }
  /// Lowest / highest power with a nonzero coefficient (undefined when zero).
  std::int64_t low() const { return lo_; }
  std::int64_t high() const { return lo_ + static_cast<std::int64_t>(c_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& coeff(std::int64_t n) const;
  /// Number of nonzero coefficients.
  std::size_t support_size() const;

  void add_term(const BigInt& c, std::int64_t power);

  TPoly operator-() const;
  TPoly& operator+=(const TPoly& o);
  TPoly& operator-=(const TPoly& o);
  TPoly& operator*=(const BigInt& s);

  /// Multiply by t^s.
  TPoly shifted(std::int64_t s) const;
  /// Coefficient reduction and degree cap under `p`.
  TPoly reduced(const Precision& p) const;

  std::string to_string(const std::string& var = "t") const;

  friend bool operator==(const TPoly& a, const TPoly& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }

 private:
  void trim();
  std::int64_t lo_ = 0;
  std::vector<BigInt> c_;
};

TPoly operator+(TPoly a, const TPoly& b);
TPoly operator-(TPoly a, const TPoly& b);
TPoly operator*(const TPoly& a, const TPoly& b);
TPoly operator*(TPoly a, const BigInt& s);
/// Product with coefficients reduced and degree capped under `p`; powers
/// above the cap are never formed.
TPoly mul(const TPoly& a, const TPoly& b, const Precision& p);

/// Evaluate sum c_n base^n as a q-series. Negative powers use the inverse of
/// base, which must have leading coefficient +-1.
QSeries eval_tpoly(const TPoly& p, const QSeries& base);

}  // namespace diamond7
