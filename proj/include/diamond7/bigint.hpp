#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace diamond7 {

using BigInt = mpz_class;

/// 7^e as a BigInt. Cached for small exponents.
const BigInt& pow7(unsigned e);

/// Least nonnegative residue of `value` modulo `modulus` (modulus > 0).
BigInt mod_floor(const BigInt& value, const BigInt& modulus);

/// Parses a base-10 integer with optional leading '-'; throws on junk.
BigInt parse_bigint(const std::string& text);

inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// floor(a / b) and ceil(a / b) for b > 0 on machine integers.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

/// 7-adic order of an integer: a natural number, or infinity for zero.
class SevenAdicOrder {
 public:
  constexpr SevenAdicOrder() = default;  // infinity
  constexpr explicit SevenAdicOrder(std::int64_t v) : value_(v) {}
  static constexpr SevenAdicOrder infinity() { return SevenAdicOrder(); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  /// Finite value; throws PreconditionError on infinity.
  std::int64_t value() const;

  /// True when this order is at least `bound`.
  constexpr bool at_least(std::int64_t bound) const {
    return is_infinite() || *value_ >= bound;
  }

  friend constexpr bool operator==(const SevenAdicOrder&, const SevenAdicOrder&) = default;
  friend constexpr std::strong_ordering operator<=>(const SevenAdicOrder& a,
                                                    const SevenAdicOrder& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const;

 private:
  std::optional<std::int64_t> value_;
};

SevenAdicOrder seven_adic_order(const BigInt& n);

}  // namespace diamond7
