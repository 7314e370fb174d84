#include "diamond7/tpoly.hpp"

#include <algorithm>
#include <sstream>

#include "diamond7/errors.hpp"

namespace diamond7 {

namespace {
const BigInt kZero(0);
}

std::string Precision::describe() const {
  std::string s = is_exact() ? "exact" : "mod 7^" + std::to_string(r7);
  if (degree_capped()) s += ", t-degree <= " + std::to_string(max_degree);
  return s;
}

TPoly::TPoly(std::int64_t lo, std::vector<BigInt> coeffs) : lo_(lo), c_(std::move(coeffs)) {
  trim();
}

TPoly TPoly::monomial(const BigInt& c, std::int64_t power) { return TPoly(power, {c}); }

void TPoly::trim() {
  std::size_t lead = 0;
  while (lead < c_.size() && sgn(c_[lead]) == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    lo_ += static_cast<std::int64_t>(lead);
  }
  while (sgn(c_.back()) == 0) c_.pop_back();
}

const BigInt& TPoly::coeff(std::int64_t n) const {
  if (c_.empty() || n < lo_ || n > high()) return kZero;
  return c_[static_cast<std::size_t>(n - lo_)];
}

std::size_t TPoly::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(c_.begin(), c_.end(), [](const BigInt& x) { return sgn(x) != 0; }));
}

void TPoly::add_term(const BigInt& c, std::int64_t power) {
  if (sgn(c) == 0) return;
  if (c_.empty()) {
    lo_ = power;
    c_.assign(1, c);
    return;
  }
  if (power < lo_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - power), BigInt(0));
    lo_ = power;
  } else if (power > high()) {
    c_.resize(static_cast<std::size_t>(power - lo_ + 1));
  }
  c_[static_cast<std::size_t>(power - lo_)] += c;
  trim();
}

TPoly TPoly::operator-() const {
  TPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

TPoly& TPoly::operator+=(const TPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  const std::int64_t lo = std::min(lo_, o.lo_);
  const std::int64_t hi = std::max(high(), o.high());
  if (lo < lo_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - lo), BigInt(0));
    lo_ = lo;
  }
  if (static_cast<std::int64_t>(c_.size()) < hi - lo_ + 1) c_.resize(static_cast<std::size_t>(hi - lo_ + 1));
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    c_[static_cast<std::size_t>(o.lo_ - lo_) + i] += o.c_[i];
  }
  trim();
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) { return *this += -o; }

TPoly& TPoly::operator*=(const BigInt& s) {
  for (auto& x : c_) x *= s;
  trim();
  return *this;
}

TPoly TPoly::shifted(std::int64_t s) const {
  TPoly r = *this;
  if (!r.is_zero()) r.lo_ += s;
  return r;
}

TPoly TPoly::reduced(const Precision& p) const {
  if (is_zero()) return *this;
  std::vector<BigInt> c = c_;
  if (p.degree_capped() && high() > p.max_degree) {
    if (lo_ > p.max_degree) return TPoly();
    c.resize(static_cast<std::size_t>(p.max_degree - lo_ + 1));
  }
  if (!p.is_exact()) {
    const BigInt& m = p.modulus();
    for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  }
  return TPoly(lo_, std::move(c));
}

std::string TPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const BigInt& c = c_[i];
    if (sgn(c) == 0) continue;
    const std::int64_t e = lo_ + static_cast<std::int64_t>(i);
    BigInt a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << var;
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
TPoly operator*(TPoly a, const BigInt& s) { return a *= s; }

TPoly mul(const TPoly& a, const TPoly& b, const Precision& p) {
  if (a.is_zero() || b.is_zero()) return TPoly();
  const std::int64_t lo = a.low() + b.low();
  std::int64_t hi = a.high() + b.high();
  if (p.degree_capped()) hi = std::min(hi, p.max_degree);
  if (hi < lo) return TPoly();
  std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1));
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  const std::int64_t span = hi - lo;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(ac.size()) && i <= span; ++i) {
    if (sgn(ac[i]) == 0) continue;
    const std::int64_t jmax = std::min<std::int64_t>(static_cast<std::int64_t>(bc.size()) - 1, span - i);
    mpz_srcptr x = ac[i].get_mpz_t();
    for (std::int64_t j = 0; j <= jmax; ++j) mpz_addmul(c[i + j].get_mpz_t(), x, bc[j].get_mpz_t());
  }
  if (!p.is_exact()) {
    const BigInt& m = p.modulus();
    for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  }
  return TPoly(lo, std::move(c));
}

TPoly operator*(const TPoly& a, const TPoly& b) { return mul(a, b, Precision::exact()); }

QSeries eval_tpoly(const TPoly& p, const QSeries& base) {
  if (p.is_zero()) return QSeries::zero(base.valid_through());
  // Horner in base over the nonnegative part; inverse powers for the rest.
  QSeries result = QSeries::zero();
  if (p.high() >= 0) {
    const std::int64_t from = std::max<std::int64_t>(p.low(), 0);
    QSeries acc = QSeries::monomial(p.coeff(p.high()), 0);
    for (std::int64_t e = p.high() - 1; e >= from; --e) {
      acc = add(mul(acc, base), QSeries::monomial(p.coeff(e), 0));
    }
    if (from > 0) {
      for (std::int64_t e = 0; e < from; ++e) acc = mul(acc, base);
    }
    result = acc;
  }
  if (p.low() < 0) {
    const std::int64_t vt = base.valid_through();
    const QSeries inv = invert(base, vt >= kUnbounded ? kUnbounded : vt);
    const std::int64_t top = std::min<std::int64_t>(p.high(), -1);
    QSeries acc = QSeries::monomial(p.coeff(top), 0);
    for (std::int64_t e = top - 1; e >= p.low(); --e) {
      acc = add(mul(acc, base), QSeries::monomial(p.coeff(e), 0));
    }
    // acc = sum c_e base^{e - low}; multiply by base^{low}.
    for (std::int64_t e = 0; e < -p.low(); ++e) acc = mul(acc, inv);
    result = add(result, acc);
  }
  return result;
}

}  // namespace diamond7
