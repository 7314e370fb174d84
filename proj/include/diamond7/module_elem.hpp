#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "diamond7/tpoly.hpp"

namespace diamond7 {

/// Output basis of the module: c0 p0 + c1 p1 + c2 * 1.
enum class Out : int { P0 = 0, P1 = 1, ONE = 2 };
inline constexpr std::array<Out, 3> kOuts{Out::P0, Out::P1, Out::ONE};
std::string_view out_label(Out o);  // "p0", "p1", "1"
Out parse_out(std::string_view s);

/// c0(t) p0 + c1(t) p1 + c2(t): the symbolic normal form of U-images.
class ModuleElem {
 public:
  ModuleElem() = default;
  ModuleElem(TPoly c0, TPoly c1, TPoly c2) : c_{std::move(c0), std::move(c1), std::move(c2)} {}
  static ModuleElem constant_one() { return ModuleElem({}, {}, TPoly::monomial(BigInt(1), 0)); }

  const TPoly& operator[](Out o) const { return c_[static_cast<int>(o)]; }
  TPoly& operator[](Out o) { return c_[static_cast<int>(o)]; }
  const TPoly& component(int i) const { return c_[i]; }
  TPoly& component(int i) { return c_[i]; }

  bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }
  /// Coefficient l_{n,i}: power n of t in component i.
  const BigInt& coeff(std::int64_t n, Out o) const { return (*this)[o].coeff(n); }
  std::size_t term_count() const;
  /// Lowest / highest t-power over all components (0 when zero).
  std::int64_t low() const;
  std::int64_t high() const;

  ModuleElem& operator+=(const ModuleElem& o);
  ModuleElem& operator-=(const ModuleElem& o);
  ModuleElem operator-() const;
  ModuleElem shifted(std::int64_t s) const;
  ModuleElem reduced(const Precision& p) const;
  ModuleElem scaled(const BigInt& s, const Precision& p) const;

  /// Text display "p0*(...) + p1*(...) + (...)".
  std::string to_string() const;
  /// Display with coefficients factored as m*7^e, mirroring printed tables.
  std::string to_display_string() const;

  friend bool operator==(const ModuleElem& a, const ModuleElem& b) { return a.c_ == b.c_; }

 private:
  std::array<TPoly, 3> c_;
};

ModuleElem operator+(ModuleElem a, const ModuleElem& b);
ModuleElem operator-(ModuleElem a, const ModuleElem& b);
/// p(t) * m componentwise under precision `prec`.
ModuleElem mul(const TPoly& p, const ModuleElem& m, const Precision& prec);

/// Splits c into (mantissa, e) with c = mantissa * 7^e and 7 not dividing
/// the mantissa.
std::pair<BigInt, std::int64_t> split_seven_power(const BigInt& c);

}  // namespace diamond7
