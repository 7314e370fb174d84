#include "diamond7/module_elem.hpp"

#include <algorithm>
#include <sstream>

#include "diamond7/errors.hpp"

namespace diamond7 {

std::string_view out_label(Out o) {
  switch (o) {
    case Out::P0: return "p0";
    case Out::P1: return "p1";
    case Out::ONE: return "1";
  }
  return "?";
}

Out parse_out(std::string_view s) {
  if (s == "p0") return Out::P0;
  if (s == "p1") return Out::P1;
  if (s == "1") return Out::ONE;
  throw SchemaError("unknown basis label '" + std::string(s) + "'");
}

std::size_t ModuleElem::term_count() const {
  return c_[0].support_size() + c_[1].support_size() + c_[2].support_size();
}

std::int64_t ModuleElem::low() const {
  std::int64_t lo = kUnbounded;
  for (const auto& p : c_) {
    if (!p.is_zero()) lo = std::min(lo, p.low());
  }
  return lo == kUnbounded ? 0 : lo;
}

std::int64_t ModuleElem::high() const {
  std::int64_t hi = -kUnbounded;
  for (const auto& p : c_) {
    if (!p.is_zero()) hi = std::max(hi, p.high());
  }
  return hi == -kUnbounded ? 0 : hi;
}

ModuleElem& ModuleElem::operator+=(const ModuleElem& o) {
  for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
  return *this;
}

ModuleElem& ModuleElem::operator-=(const ModuleElem& o) {
  for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
  return *this;
}

ModuleElem ModuleElem::operator-() const { return ModuleElem(-c_[0], -c_[1], -c_[2]); }

ModuleElem ModuleElem::shifted(std::int64_t s) const {
  return ModuleElem(c_[0].shifted(s), c_[1].shifted(s), c_[2].shifted(s));
}

ModuleElem ModuleElem::reduced(const Precision& p) const {
  return ModuleElem(c_[0].reduced(p), c_[1].reduced(p), c_[2].reduced(p));
}

ModuleElem ModuleElem::scaled(const BigInt& s, const Precision& p) const {
  ModuleElem r = *this;
  for (auto& x : r.c_) x *= s;
  return r.reduced(p);
}

std::string ModuleElem::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (Out o : kOuts) {
    const TPoly& p = (*this)[o];
    if (p.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (o == Out::ONE) {
      os << '(' << p.to_string() << ')';
    } else {
      os << out_label(o) << "*(" << p.to_string() << ')';
    }
  }
  return os.str();
}

std::pair<BigInt, std::int64_t> split_seven_power(const BigInt& c) {
  if (sgn(c) == 0) return {BigInt(0), 0};
  BigInt m = c;
  std::int64_t e = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), 7)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), 7);
    ++e;
  }
  return {m, e};
}

std::string ModuleElem::to_display_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (Out o : kOuts) {
    const TPoly& p = (*this)[o];
    for (std::int64_t n = p.is_zero() ? 1 : p.low(); !p.is_zero() && n <= p.high(); ++n) {
      const BigInt& c = p.coeff(n);
      if (sgn(c) == 0) continue;
      auto [m, e] = split_seven_power(c);
      BigInt am = abs(m);
      if (first) {
        if (sgn(m) < 0) os << '-';
      } else {
        os << (sgn(m) < 0 ? " - " : " + ");
      }
      first = false;
      std::vector<std::string> parts;
      if (am != 1 || (e == 0 && o == Out::ONE && n == 0)) parts.push_back(am.get_str());
      if (e == 1) parts.push_back("7");
      if (e > 1) parts.push_back("7^" + std::to_string(e));
      if (o != Out::ONE) parts.emplace_back(out_label(o));
      if (n == 1) parts.push_back("t");
      if (n != 0 && n != 1) parts.push_back("t^" + std::to_string(n));
      if (parts.empty()) parts.push_back("1");
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << '*';
        os << parts[i];
      }
    }
  }
  return os.str();
}

ModuleElem operator+(ModuleElem a, const ModuleElem& b) { return a += b; }
ModuleElem operator-(ModuleElem a, const ModuleElem& b) { return a -= b; }

ModuleElem mul(const TPoly& p, const ModuleElem& m, const Precision& prec) {
  return ModuleElem(mul(p, m[Out::P0], prec), mul(p, m[Out::P1], prec), mul(p, m[Out::ONE], prec));
}

}  // namespace diamond7
