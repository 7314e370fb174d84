#include "diamond7/evaluate.hpp"

#include "diamond7/errors.hpp"
#include "diamond7/eta.hpp"

namespace diamond7 {

ModuleEvaluator::ModuleEvaluator(std::int64_t through) : through_(through) {}

// Caller holds mu_.
const QSeries& ModuleEvaluator::tpow(std::int64_t n) {
  auto it = t_.find(n);
  if (it != t_.end()) return it->second;
  QSeries s;
  // p1 has min_exp -1, so t^n with n <= through + 1 can still contribute.
  if (n > through_ + 1) {
    s = QSeries::zero(through_ + 1);
  } else if (n > 0 && t_.count(n - 1)) {
    s = apply(specs::t(), t_.at(n - 1), through_ + 1);
  } else {
    s = expand(specs::t().pow(n), through_ + 1);
  }
  return t_.emplace(n, std::move(s)).first->second;
}

QSeries ModuleEvaluator::basis_series(Out o, std::int64_t n) {
  std::lock_guard lock(mu_);
  const auto key = std::make_pair(static_cast<int>(o), n);
  auto it = basis_.find(key);
  if (it != basis_.end()) return it->second;
  // Walk up from the nearest cached power so that t^n is built incrementally.
  if (n > 0 && !t_.count(n)) {
    std::int64_t start = n;
    while (start > 0 && !t_.count(start - 1)) --start;
    for (std::int64_t m = start; m < n; ++m) tpow(m);
  }
  const QSeries& tn = tpow(n);
  QSeries s;
  switch (o) {
    case Out::ONE: s = tn.truncated(through_); break;
    case Out::P1: s = apply(specs::p1(), tn, through_); break;
    case Out::P0: {
      QSeries x = apply(specs::x(), tn, through_);
      s = divexact(sub(scale(x, BigInt(8)), tn.truncated(through_)), BigInt(7));
      break;
    }
  }
  return basis_.emplace(key, s).first->second;
}

QSeries ModuleEvaluator::evaluate(const ModuleElem& m) {
  QSeries acc = QSeries::zero(through_);
  std::vector<BigInt> buf;
  std::int64_t lo = kUnbounded;
  for (Out o : kOuts) {
    const TPoly& p = m[o];
    for (std::int64_t n = p.is_zero() ? 1 : p.low(); !p.is_zero() && n <= p.high(); ++n) {
      const BigInt& c = p.coeff(n);
      if (sgn(c) == 0) continue;
      if (n > through_ + 1) break;
      const QSeries b = basis_series(o, n);
      if (b.valid_through() < through_) {
        throw PrecisionError("basis expansion of t^" + std::to_string(n) + " short of the window");
      }
      if (b.is_zero()) continue;
      if (lo == kUnbounded) {
        // Dense accumulator over [lo, through].
        lo = std::min<std::int64_t>(m.low() - 1, 0);
        buf.assign(static_cast<std::size_t>(through_ - lo + 1), BigInt(0));
      }
      for (std::int64_t e = b.min_exp(); e <= b.max_stored(); ++e) {
        mpz_addmul(buf[static_cast<std::size_t>(e - lo)].get_mpz_t(), c.get_mpz_t(),
                   b.at(e).get_mpz_t());
      }
    }
  }
  if (lo == kUnbounded) return acc;
  return QSeries(lo, std::move(buf), through_);
}

}  // namespace diamond7
