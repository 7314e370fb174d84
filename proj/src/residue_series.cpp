#include "diamond7/residue_series.hpp"

#include <algorithm>
#include <cmath>

#include "diamond7/errors.hpp"
#include "diamond7/ntt.hpp"

namespace diamond7 {

namespace {

using u64 = std::uint64_t;

u64 addm(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}
u64 subm(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

void check_same_modulus(const ResidueSeries& a, const ResidueSeries& b) {
  if (a.modulus() != b.modulus()) throw PreconditionError("residue series moduli differ");
}

// Dense coefficient vector of f on [lo, hi].
std::vector<u64> window(const ResidueSeries& f, std::int64_t lo, std::int64_t hi) {
  std::vector<u64> out(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo + 1, 0)), 0);
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t e = f.start() + static_cast<std::int64_t>(i);
    if (e >= lo && e <= hi) out[static_cast<std::size_t>(e - lo)] = c[i];
  }
  return out;
}

std::vector<u64> mul_vectors(const std::vector<u64>& a, const std::vector<u64>& b, u64 m,
                             std::size_t len) {
  const std::size_t la = std::min(a.size(), len), lb = std::min(b.size(), len);
  if (la == 0 || lb == 0) return std::vector<u64>(len, 0);
  if (std::min(la, lb) <= 48 || la * lb <= 200000) {
    std::vector<u64> out(len, 0);
    for (std::size_t i = 0; i < la; ++i) {
      if (a[i] == 0) continue;
      const std::size_t jmax = std::min(lb, len - i);
      for (std::size_t j = 0; j < jmax; ++j) {
        out[i + j] = static_cast<u64>(
            (static_cast<unsigned __int128>(a[i]) * b[j] + out[i + j]) % m);
      }
    }
    return out;
  }
  return ntt::multiply_mod(a, b, m, len);
}

u64 inverse_unit(u64 a, u64 m) {
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, nt = 1, r = m, nr = a;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw NonUnitLeading("leading coefficient is not a unit modulo m");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t to_residue(const BigInt& v, std::uint64_t modulus) {
  BigInt r;
  BigInt mm;
  mpz_import(mm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &modulus);
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mm.get_mpz_t());
  u64 out = 0;
  mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
  return out;
}

ResidueSeries::ResidueSeries(std::uint64_t modulus, std::int64_t start,
                             std::vector<std::uint64_t> coeffs, std::int64_t valid_through)
    : modulus_(modulus), start_(start), coeffs_(std::move(coeffs)), valid_through_(valid_through) {
  if (modulus_ < 2 || modulus_ >= (u64{1} << 62)) {
    throw PreconditionError("residue modulus must lie in [2, 2^62)");
  }
  if (valid_through_ >= kUnbounded) throw PreconditionError("residue series need a finite window");
  const std::int64_t keep = std::max<std::int64_t>(valid_through_ - start_ + 1, 0);
  if (static_cast<std::int64_t>(coeffs_.size()) > keep) coeffs_.resize(static_cast<std::size_t>(keep));
  for (auto& c : coeffs_) c %= modulus_;
}

ResidueSeries ResidueSeries::from_exact(const QSeries& f, std::uint64_t modulus) {
  if (f.valid_through() >= kUnbounded) throw PreconditionError("exact source needs a finite window");
  std::vector<u64> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_residue(f.coeffs()[i], modulus);
  const std::int64_t start = f.is_zero() ? f.valid_through() + 1 : f.min_exp();
  return ResidueSeries(modulus, start, std::move(c), f.valid_through());
}

ResidueSeries ResidueSeries::one(std::uint64_t modulus, std::int64_t valid_through) {
  return ResidueSeries(modulus, 0, {1}, valid_through);
}

std::uint64_t ResidueSeries::coeff(std::int64_t n) const {
  if (n > valid_through_) {
    throw PrecisionError("residue coefficient of q^" + std::to_string(n) +
                         " requested beyond valid_through " + std::to_string(valid_through_));
  }
  if (n < start_ || n >= start_ + static_cast<std::int64_t>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(n - start_)];
}

ResidueSeries ResidueSeries::truncated(std::int64_t through) const {
  if (through >= valid_through_) return *this;
  return ResidueSeries(modulus_, start_, coeffs_, through);
}

ResidueSeries ResidueSeries::shifted(std::int64_t s) const {
  return ResidueSeries(modulus_, start_ + s, coeffs_, valid_through_ + s);
}

bool ResidueSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

ResidueSeries add(const ResidueSeries& a, const ResidueSeries& b) {
  check_same_modulus(a, b);
  const std::int64_t vt = std::min(a.valid_through(), b.valid_through());
  const std::int64_t lo = std::min(a.start(), b.start());
  if (vt < lo) return ResidueSeries(a.modulus(), vt + 1, {}, vt);
  std::vector<u64> c = window(a, lo, vt);
  const u64 m = a.modulus();
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) {
    const std::int64_t e = b.start() + static_cast<std::int64_t>(i);
    if (e > vt) break;
    auto& x = c[static_cast<std::size_t>(e - lo)];
    x = addm(x, b.coeffs()[i], m);
  }
  return ResidueSeries(m, lo, std::move(c), vt);
}

ResidueSeries scale(const ResidueSeries& a, std::uint64_t c) {
  std::vector<u64> v = a.coeffs();
  for (auto& x : v) x = mulmod(x, c % a.modulus(), a.modulus());
  return ResidueSeries(a.modulus(), a.start(), std::move(v), a.valid_through());
}

ResidueSeries sub(const ResidueSeries& a, const ResidueSeries& b) {
  return add(a, scale(b, b.modulus() - 1));
}

ResidueSeries mul(const ResidueSeries& a, const ResidueSeries& b) {
  check_same_modulus(a, b);
  const std::int64_t lo = a.start() + b.start();
  const std::int64_t vt = std::min(a.valid_through() + b.start(), b.valid_through() + a.start());
  if (vt < lo) return ResidueSeries(a.modulus(), vt + 1, {}, vt);
  const std::size_t len = static_cast<std::size_t>(vt - lo + 1);
  return ResidueSeries(a.modulus(), lo, mul_vectors(a.coeffs(), b.coeffs(), a.modulus(), len), vt);
}

ResidueSeries invert(const ResidueSeries& a, std::int64_t through) {
  const u64 m = a.modulus();
  std::size_t lead = 0;
  while (lead < a.coeffs().size() && a.coeffs()[lead] == 0) ++lead;
  if (lead == a.coeffs().size()) throw NonUnitLeading("cannot invert a zero residue series");
  const std::int64_t mexp = a.start() + static_cast<std::int64_t>(lead);
  const std::int64_t bmin = -mexp;
  const std::int64_t vt = std::min(a.valid_through() - 2 * mexp, through);
  if (vt < bmin) return ResidueSeries(m, vt + 1, {}, vt);
  const std::size_t len = static_cast<std::size_t>(vt - bmin + 1);
  std::vector<u64> f(a.coeffs().begin() + static_cast<std::ptrdiff_t>(lead), a.coeffs().end());
  if (f.size() > len) f.resize(len);
  const u64 inv0 = inverse_unit(f[0], m);
  std::vector<u64> g{inv0};
  // Newton iteration g <- g (2 - f g).
  while (g.size() < len) {
    const std::size_t n = std::min(2 * g.size(), len);
    std::vector<u64> fn(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(std::min(f.size(), n)));
    std::vector<u64> fg = mul_vectors(fn, g, m, n);
    for (auto& x : fg) x = x == 0 ? 0 : m - x;
    fg[0] = addm(fg[0], 2, m);
    g = mul_vectors(g, fg, m, n);
  }
  return ResidueSeries(m, bmin, std::move(g), vt);
}

ResidueSeries u_operator(const ResidueSeries& f, std::int64_t m) {
  if (m <= 0) throw PreconditionError("u_operator needs a positive index");
  const std::int64_t lo = ceil_div(f.start(), m);
  const std::int64_t vt = floor_div(f.valid_through(), m);
  const std::int64_t hi = std::min(vt, floor_div(f.start() + static_cast<std::int64_t>(f.coeffs().size()) - 1, m));
  std::vector<u64> c;
  if (hi >= lo) {
    c.resize(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n) c[n - lo] = f.coeffs()[static_cast<std::size_t>(m * n - f.start())];
  }
  return ResidueSeries(f.modulus(), lo, std::move(c), vt);
}

ResidueSeries substitute_power(const ResidueSeries& f, std::int64_t d) {
  if (d <= 0) throw PreconditionError("substitute_power needs a positive degree");
  std::vector<u64> c(f.coeffs().empty() ? 0 : (f.coeffs().size() - 1) * d + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) c[i * d] = f.coeffs()[i];
  return ResidueSeries(f.modulus(), f.start() * d, std::move(c), f.valid_through() * d + (d - 1));
}

ResidueSeries mul_j_power(const ResidueSeries& f, std::int64_t b, std::int64_t r,
                          std::int64_t through) {
  if (b <= 0) throw PreconditionError("J_b needs a positive scale");
  const std::int64_t vt = std::min(f.valid_through(), through);
  const u64 m = f.modulus();
  const std::int64_t lo = f.start();
  if (vt < lo) return ResidueSeries(m, vt + 1, {}, vt);
  const std::int64_t len = vt - lo + 1;
  std::vector<u64> c = window(f, lo, vt);
  const auto pent = pentagonal_terms(b, len - 1);
  const std::int64_t passes = r < 0 ? -r : r;
  for (std::int64_t pass = 0; pass < passes; ++pass) {
    if (r > 0) {
      for (std::int64_t n = len - 1; n >= 1; --n) {
        u64 x = c[n];
        for (const auto& t : pent) {
          if (t.exponent > n) break;
          x = t.sign > 0 ? addm(x, c[n - t.exponent], m) : subm(x, c[n - t.exponent], m);
        }
        c[n] = x;
      }
    } else {
      for (std::int64_t n = 1; n < len; ++n) {
        u64 x = c[n];
        for (const auto& t : pent) {
          if (t.exponent > n) break;
          x = t.sign > 0 ? subm(x, c[n - t.exponent], m) : addm(x, c[n - t.exponent], m);
        }
        c[n] = x;
      }
    }
  }
  return ResidueSeries(m, lo, std::move(c), vt);
}

ResidueSeries j1_power(std::int64_t e, std::uint64_t modulus, std::int64_t through) {
  const u64 m = modulus;
  if (through < 0) return ResidueSeries(m, through + 1, {}, through);
  if (e == 0) return ResidueSeries::one(m, through);
  const std::int64_t len = through + 1;
  if (e == 3) {
    // Jacobi: J1^3 = sum (-1)^n (2n+1) q^{n(n+1)/2}.
    std::vector<u64> c(static_cast<std::size_t>(len), 0);
    for (std::int64_t n = 0; n * (n + 1) / 2 <= through; ++n) {
      const u64 v = static_cast<u64>(2 * n + 1) % m;
      c[static_cast<std::size_t>(n * (n + 1) / 2)] = (n & 1) ? (m - v) % m : v;
    }
    return ResidueSeries(m, 0, std::move(c), through);
  }
  const std::int64_t ae = e < 0 ? -e : e;
  // Sparse passes cost about len * sqrt(len) per unit exponent.
  const double sparse_cost = static_cast<double>(ae) * len * 1.7 * std::sqrt(static_cast<double>(len));
  const double ntt_cost = 40.0 * len * std::log2(static_cast<double>(len) + 2) *
                          (std::log2(static_cast<double>(ae) + 1) + (e < 0 ? 4 : 0));
  if (sparse_cost <= ntt_cost) {
    return mul_j_power(ResidueSeries::one(m, through), 1, e, through);
  }
  std::vector<u64> j(static_cast<std::size_t>(len), 0);
  j[0] = 1;
  for (const auto& t : pentagonal_terms(1, through)) j[t.exponent] = t.sign > 0 ? 1 : m - 1;
  std::vector<u64> acc;
  std::vector<u64> base = j;
  std::int64_t n = ae;
  while (n > 0) {
    if (n & 1) acc = acc.empty() ? base : mul_vectors(acc, base, m, len);
    n >>= 1;
    if (n > 0) base = ntt::square_mod(base, m, len);
  }
  ResidueSeries pos(m, 0, std::move(acc), through);
  return e < 0 ? invert(pos, through) : pos;
}

}  // namespace diamond7
