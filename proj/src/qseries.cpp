#include "diamond7/qseries.hpp"

#include <algorithm>
#include <utility>

#include "diamond7/errors.hpp"

namespace diamond7 {

namespace {

const BigInt kZero(0);

std::int64_t floor_div_i(std::int64_t a, std::int64_t b) { return floor_div(a, b); }

}  // namespace

QSeries::QSeries() : min_exp_(kUnbounded), valid_through_(kUnbounded) {}

QSeries::QSeries(std::int64_t min_exp, std::vector<BigInt> coeffs, std::int64_t valid_through)
    : min_exp_(min_exp), coeffs_(std::move(coeffs)), valid_through_(valid_through) {
  if (valid_through_ > kUnbounded) valid_through_ = kUnbounded;
  if (valid_through_ < kUnbounded) {
    std::int64_t keep = valid_through_ - min_exp_ + 1;
    if (keep < 0) keep = 0;
    if (static_cast<std::int64_t>(coeffs_.size()) > keep) coeffs_.resize(keep);
  }
  normalize();
}

void QSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    min_exp_ = valid_through_ >= kUnbounded ? kUnbounded : valid_through_ + 1;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    min_exp_ += static_cast<std::int64_t>(lead);
  }
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

QSeries QSeries::zero(std::int64_t valid_through) { return QSeries(0, {}, valid_through); }

QSeries QSeries::monomial(const BigInt& c, std::int64_t e, std::int64_t valid_through) {
  if (e > valid_through) return zero(valid_through);
  return QSeries(e, {c}, valid_through);
}

BigInt QSeries::coeff(std::int64_t n) const {
  if (n > valid_through_) {
    throw PrecisionError("coefficient of q^" + std::to_string(n) +
                         " requested beyond valid_through " + std::to_string(valid_through_));
  }
  return at(n);
}

const BigInt& QSeries::at(std::int64_t n) const {
  if (coeffs_.empty() || n < min_exp_ || n > max_stored()) return kZero;
  return coeffs_[static_cast<std::size_t>(n - min_exp_)];
}

QSeries QSeries::truncated(std::int64_t through) const {
  if (through >= valid_through_) return *this;
  if (coeffs_.empty() || through < min_exp_) return zero(through);
  std::vector<BigInt> c(coeffs_.begin(),
                        coeffs_.begin() + std::min<std::int64_t>(
                                              static_cast<std::int64_t>(coeffs_.size()),
                                              through - min_exp_ + 1));
  return QSeries(min_exp_, std::move(c), through);
}

QSeries QSeries::shifted(std::int64_t s) const {
  QSeries r = *this;
  if (r.valid_through_ < kUnbounded) r.valid_through_ += s;
  if (!r.coeffs_.empty() || r.min_exp_ < kUnbounded) r.min_exp_ += s;
  if (r.coeffs_.empty()) r.normalize();
  return r;
}

QSeries QSeries::operator-() const {
  QSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

QSeries& QSeries::operator*=(const BigInt& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

QSeries add(const QSeries& a, const QSeries& b) {
  const std::int64_t vt = std::min(a.valid_through(), b.valid_through());
  if (a.is_zero()) return b.truncated(vt);
  if (b.is_zero()) return a.truncated(vt);
  const std::int64_t lo = std::min(a.min_exp(), b.min_exp());
  std::int64_t hi = std::max(a.max_stored(), b.max_stored());
  hi = std::min(hi, vt);
  if (hi < lo) return QSeries::zero(vt);
  std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = a.min_exp(); n <= std::min(a.max_stored(), hi); ++n) {
    c[static_cast<std::size_t>(n - lo)] = a.at(n);
  }
  for (std::int64_t n = b.min_exp(); n <= std::min(b.max_stored(), hi); ++n) {
    c[static_cast<std::size_t>(n - lo)] += b.at(n);
  }
  return QSeries(lo, std::move(c), vt);
}

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, -b); }

QSeries mul(const QSeries& a, const QSeries& b) {
  const std::int64_t amin = a.is_zero() ? prec_add(a.valid_through(), 1) : a.min_exp();
  const std::int64_t bmin = b.is_zero() ? prec_add(b.valid_through(), 1) : b.min_exp();
  const std::int64_t vt =
      std::min(prec_add(a.valid_through(), bmin), prec_add(b.valid_through(), amin));
  if (a.is_zero() || b.is_zero()) return QSeries::zero(vt);
  const std::int64_t lo = a.min_exp() + b.min_exp();
  std::int64_t hi = std::min(a.max_stored() + b.max_stored(), vt);
  if (hi < lo) return QSeries::zero(vt);
  std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1));
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  const std::int64_t span = hi - lo;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(ac.size()) && i <= span; ++i) {
    if (sgn(ac[i]) == 0) continue;
    const std::int64_t jmax = std::min<std::int64_t>(static_cast<std::int64_t>(bc.size()) - 1, span - i);
    mpz_srcptr x = ac[i].get_mpz_t();
    for (std::int64_t j = 0; j <= jmax; ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), x, bc[j].get_mpz_t());
    }
  }
  return QSeries(lo, std::move(c), vt);
}

QSeries scale(const QSeries& a, const BigInt& c) {
  QSeries r = a;
  r *= c;
  return r;
}

QSeries divexact(const QSeries& a, const BigInt& d) {
  std::vector<BigInt> c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mpz_divisible_p(c[i].get_mpz_t(), d.get_mpz_t())) {
      throw IntegralityViolation("coefficient of q^" +
                                 std::to_string(a.min_exp() + static_cast<std::int64_t>(i)) +
                                 " is not divisible by " + d.get_str());
    }
    mpz_divexact(c[i].get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
  }
  return QSeries(a.min_exp(), std::move(c), a.valid_through());
}

QSeries invert(const QSeries& a, std::int64_t through) {
  if (a.is_zero()) throw NonUnitLeading("cannot invert the zero series");
  const BigInt& lead = a.coeffs().front();
  if (lead != 1 && lead != -1) {
    throw NonUnitLeading("leading coefficient " + lead.get_str() + " is not a unit");
  }
  const std::int64_t m = a.min_exp();
  std::int64_t vt = a.valid_through() >= kUnbounded ? kUnbounded : a.valid_through() - 2 * m;
  vt = std::min(vt, through);
  if (vt >= kUnbounded) {
    throw PreconditionError("invert of an exact series needs an explicit window");
  }
  const std::int64_t bmin = -m;
  if (vt < bmin) return QSeries::zero(vt);
  const std::int64_t len = vt - bmin + 1;
  const bool neg = lead < 0;
  // Nonzero tail of the normalized input.
  std::vector<std::pair<std::int64_t, const BigInt*>> tail;
  for (std::int64_t i = 1; i < static_cast<std::int64_t>(a.coeffs().size()) && i < len; ++i) {
    if (sgn(a.coeffs()[i]) != 0) tail.emplace_back(i, &a.coeffs()[i]);
  }
  std::vector<BigInt> b(static_cast<std::size_t>(len));
  b[0] = neg ? -1 : 1;
  BigInt acc;
  for (std::int64_t n = 1; n < len; ++n) {
    acc = 0;
    for (const auto& [i, v] : tail) {
      if (i > n) break;
      mpz_addmul(acc.get_mpz_t(), v->get_mpz_t(), b[n - i].get_mpz_t());
    }
    // b_n = -lead^{-1} * acc, and lead^{-1} = lead.
    if (neg) {
      b[n] = acc;
    } else {
      b[n] = -acc;
    }
  }
  return QSeries(bmin, std::move(b), vt);
}

QSeries power(const QSeries& a, std::int64_t e, std::int64_t through) {
  if (e == 0) return QSeries::one().truncated(std::min(through, a.valid_through()));
  QSeries base = e < 0 ? invert(a, through) : a.truncated(through);
  std::uint64_t n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  std::optional<QSeries> r;
  while (n > 0) {
    if (n & 1) r = r ? mul(*r, base) : base;
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return r->truncated(through);
}

QSeries u_operator(const QSeries& f, std::int64_t m) {
  if (m <= 0) throw PreconditionError("u_operator needs a positive index");
  const std::int64_t vt =
      f.valid_through() >= kUnbounded ? kUnbounded : floor_div_i(f.valid_through(), m);
  if (f.is_zero()) return QSeries::zero(vt);
  const std::int64_t lo = ceil_div(f.min_exp(), m);
  const std::int64_t hi = std::min(floor_div_i(f.max_stored(), m), vt);
  if (hi < lo) return QSeries::zero(vt);
  std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) c[n - lo] = f.at(m * n);
  return QSeries(lo, std::move(c), vt);
}

QSeries substitute_power(const QSeries& f, std::int64_t d) {
  if (d <= 0) throw PreconditionError("substitute_power needs a positive degree");
  const std::int64_t vt =
      f.valid_through() >= kUnbounded ? kUnbounded : f.valid_through() * d + (d - 1);
  if (f.is_zero()) return QSeries::zero(vt);
  const std::int64_t lo = f.min_exp() * d;
  const std::int64_t hi = f.max_stored() * d;
  std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) c[i * static_cast<std::size_t>(d)] = f.coeffs()[i];
  return QSeries(lo, std::move(c), vt);
}

QSeries reduce_mod(const QSeries& f, const BigInt& modulus) {
  if (modulus < 2) throw PreconditionError("reduce_mod needs a modulus >= 2");
  std::vector<BigInt> c = f.coeffs();
  for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return QSeries(f.min_exp(), std::move(c), f.valid_through());
}

SevenAdicOrder min_valuation(const QSeries& f) {
  SevenAdicOrder best = SevenAdicOrder::infinity();
  for (const auto& c : f.coeffs()) {
    if (sgn(c) == 0) continue;
    SevenAdicOrder o = seven_adic_order(c);
    if (o < best) best = o;
    if (best == SevenAdicOrder(0)) break;
  }
  return best;
}

std::vector<PentagonalTerm> pentagonal_terms(std::int64_t b, std::int64_t limit) {
  std::vector<PentagonalTerm> out;
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t e1 = b * (k * (3 * k - 1) / 2);
    const std::int64_t e2 = b * (k * (3 * k + 1) / 2);
    const int s = (k % 2 == 0) ? 1 : -1;
    if (e1 > limit) break;
    out.push_back({e1, s});
    if (e2 <= limit) out.push_back({e2, s});
  }
  return out;
}

QSeries mul_j_power(const QSeries& f, std::int64_t b, std::int64_t r, std::int64_t through) {
  if (b <= 0) throw PreconditionError("J_b needs a positive scale");
  const std::int64_t vt = std::min(f.valid_through(), through);
  if (vt >= kUnbounded) throw PreconditionError("mul_j_power of an exact series needs a window");
  if (f.is_zero() || r == 0) return f.truncated(vt);
  const std::int64_t lo = f.min_exp();
  if (vt < lo) return QSeries::zero(vt);
  const std::int64_t len = vt - lo + 1;
  std::vector<BigInt> c(static_cast<std::size_t>(len));
  for (std::size_t i = 0; i < f.coeffs().size() && static_cast<std::int64_t>(i) < len; ++i) {
    c[i] = f.coeffs()[i];
  }
  const auto pent = pentagonal_terms(b, len - 1);
  const std::int64_t passes = r < 0 ? -r : r;
  for (std::int64_t pass = 0; pass < passes; ++pass) {
    if (r > 0) {
      for (std::int64_t n = len - 1; n >= 1; --n) {
        mpz_ptr dst = c[n].get_mpz_t();
        for (const auto& t : pent) {
          if (t.exponent > n) break;
          if (t.sign > 0) {
            mpz_add(dst, dst, c[n - t.exponent].get_mpz_t());
          } else {
            mpz_sub(dst, dst, c[n - t.exponent].get_mpz_t());
          }
        }
      }
    } else {
      for (std::int64_t n = 1; n < len; ++n) {
        mpz_ptr dst = c[n].get_mpz_t();
        for (const auto& t : pent) {
          if (t.exponent > n) break;
          if (t.sign > 0) {
            mpz_sub(dst, dst, c[n - t.exponent].get_mpz_t());
          } else {
            mpz_add(dst, dst, c[n - t.exponent].get_mpz_t());
          }
        }
      }
    }
  }
  return QSeries(lo, std::move(c), vt);
}

std::optional<SeriesMismatch> first_difference(const QSeries& a, const QSeries& b,
                                               std::int64_t through) {
  const std::int64_t vt = std::min({a.valid_through(), b.valid_through(), through});
  std::int64_t lo = std::min(a.is_zero() ? kUnbounded : a.min_exp(),
                             b.is_zero() ? kUnbounded : b.min_exp());
  std::int64_t hi = std::max(a.is_zero() ? -kUnbounded : a.max_stored(),
                             b.is_zero() ? -kUnbounded : b.max_stored());
  hi = std::min(hi, vt);
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (a.at(n) != b.at(n)) return SeriesMismatch{n, a.at(n), b.at(n)};
  }
  return std::nullopt;
}

bool equal_on_window(const QSeries& a, const QSeries& b, std::int64_t through) {
  return !first_difference(a, b, through).has_value();
}

}  // namespace diamond7
