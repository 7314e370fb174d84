#include "diamond7/bigint.hpp"

#include <deque>
#include <mutex>

#include "diamond7/errors.hpp"

namespace diamond7 {

const BigInt& pow7(unsigned e) {
  static std::mutex mu;
  static std::deque<BigInt> cache{BigInt(1)};
  std::lock_guard lock(mu);
  while (cache.size() <= e) cache.push_back(cache.back() * 7);
  return cache[e];
}

BigInt mod_floor(const BigInt& value, const BigInt& modulus) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw PreconditionError("empty integer literal: '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw PreconditionError("malformed integer literal: '" + text + "'");
    }
  }
  BigInt v;
  v.set_str(text[0] == '+' ? text.substr(1) : text, 10);
  return v;
}

std::int64_t SevenAdicOrder::value() const {
  if (!value_) throw PreconditionError("7-adic order is infinite");
  return *value_;
}

std::string SevenAdicOrder::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("inf");
}

SevenAdicOrder seven_adic_order(const BigInt& n) {
  if (sgn(n) == 0) return SevenAdicOrder::infinity();
  std::int64_t e = 0;
  BigInt m = n;
  while (mpz_divisible_ui_p(m.get_mpz_t(), 7)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), 7);
    ++e;
  }
  return SevenAdicOrder(e);
}

}  // namespace diamond7
