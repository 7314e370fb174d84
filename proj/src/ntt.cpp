#include "diamond7/ntt.hpp"

#include <algorithm>
#include <array>

#include "diamond7/errors.hpp"

namespace diamond7::ntt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Montgomery arithmetic for an odd modulus p < 2^62.
struct Mont {
  u64 p;
  u64 pinv;  // -p^{-1} mod 2^64
  u64 r2;    // 2^128 mod p

  explicit Mont(u64 mod) : p(mod) {
    u64 inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    pinv = ~inv + 1;
    u128 r = (static_cast<u128>(1) << 64) % p;
    r2 = static_cast<u64>((r * r) % p);
  }
  u64 reduce(u128 t) const {
    u64 m = static_cast<u64>(t) * pinv;
    u64 u = static_cast<u64>((t + static_cast<u128>(m) * p) >> 64);
    return u >= p ? u - p : u;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 a) const { return mul(a % p, r2); }
  u64 from(u64 a) const { return reduce(a); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 pow(u64 a, u64 e) const {
    u64 r = to(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

struct PrimeInfo {
  u64 p;
  u64 g;
};
constexpr std::array<PrimeInfo, 3> kPrimes{{{4611686009971671041ULL, 6},
                                             {4611686007555751937ULL, 3},
                                             {4611686004066091009ULL, 13}}};
constexpr int kMaxLog = 27;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Powers root_n^k for k < n/2; stage h uses stride n/(2h).
std::vector<u64> root_table(const Mont& mt, u64 g, std::size_t n) {
  std::vector<u64> w(std::max<std::size_t>(n / 2, 1));
  const u64 root = mt.pow(mt.to(g), (mt.p - 1) / n);
  w[0] = mt.to(1);
  for (std::size_t k = 1; k < w.size(); ++k) w[k] = mt.mul(w[k - 1], root);
  return w;
}

// Decimation in frequency: natural order in, bit-reversed order out.
void forward(std::vector<u64>& a, const Mont& mt, const std::vector<u64>& w) {
  const std::size_t n = a.size();
  std::vector<u64> wh(std::max<std::size_t>(n / 2, 1));
  for (std::size_t h = n >> 1; h >= 1; h >>= 1) {
    const std::size_t stride = n / (2 * h);
    for (std::size_t k = 0; k < h; ++k) wh[k] = w[k * stride];
    for (std::size_t i = 0; i < n; i += 2 * h) {
      u64* x = a.data() + i;
      u64* y = x + h;
      for (std::size_t k = 0; k < h; ++k) {
        const u64 u = x[k];
        const u64 v = y[k];
        x[k] = mt.add(u, v);
        y[k] = mt.mul(mt.sub(u, v), wh[k]);
      }
    }
  }
}

// Decimation in time: bit-reversed order in, natural order out (unscaled).
// Uses root^{-j} = -root^{n/2 - j}.
void inverse(std::vector<u64>& a, const Mont& mt, const std::vector<u64>& w) {
  const std::size_t n = a.size();
  const std::size_t half = n / 2;
  std::vector<u64> wh(std::max<std::size_t>(half, 1));
  for (std::size_t h = 1; h < n; h <<= 1) {
    const std::size_t stride = n / (2 * h);
    for (std::size_t k = 1; k < h; ++k) wh[k] = w[half - k * stride];
    for (std::size_t i = 0; i < n; i += 2 * h) {
      u64* x = a.data() + i;
      u64* y = x + h;
      {
        const u64 u = x[0];
        const u64 v = y[0];
        x[0] = mt.add(u, v);
        y[0] = mt.sub(u, v);
      }
      for (std::size_t k = 1; k < h; ++k) {
        const u64 u = x[k];
        const u64 v = mt.mul(y[k], wh[k]);
        // x + root^{-j} y = x - root^{n/2-j} y
        x[k] = mt.sub(u, v);
        y[k] = mt.add(u, v);
      }
    }
  }
}

std::vector<u64> convolve_prime(const std::vector<u64>& a, const std::vector<u64>* b,
                                std::size_t len, std::size_t n, int pi) {
  const Mont mt(kPrimes[pi].p);
  const std::vector<u64> w = root_table(mt, kPrimes[pi].g, n);
  std::vector<u64> fa(n, 0);
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i) fa[i] = mt.to(a[i]);
  forward(fa, mt, w);
  if (b != nullptr) {
    std::vector<u64> fb(n, 0);
    for (std::size_t i = 0; i < std::min(b->size(), len); ++i) fb[i] = mt.to((*b)[i]);
    forward(fb, mt, w);
    for (std::size_t i = 0; i < n; ++i) fa[i] = mt.mul(fa[i], fb[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) fa[i] = mt.mul(fa[i], fa[i]);
  }
  inverse(fa, mt, w);
  // 1/n folded into the conversion out of Montgomery form.
  const u64 ninv = mt.to(powmod(n % mt.p, mt.p - 2, mt.p));
  fa.resize(len);
  fa.shrink_to_fit();
  for (std::size_t i = 0; i < len; ++i) fa[i] = mt.from(mt.mul(fa[i], ninv));
  return fa;
}

std::vector<u64> run(const std::vector<u64>& a, const std::vector<u64>* b, u64 m,
                     std::size_t len) {
  if (m >= (u64{1} << 62)) throw PreconditionError("NTT modulus must be below 2^62");
  std::size_t need = std::min(a.size(), len) + std::min(b ? b->size() : a.size(), len);
  std::size_t n = 1;
  int lg = 0;
  while (n < need) {
    n <<= 1;
    ++lg;
  }
  if (lg > kMaxLog) throw PreconditionError("NTT length exceeds the supported maximum");
  const u64 p0 = kPrimes[0].p, p1 = kPrimes[1].p, p2 = kPrimes[2].p;
  std::vector<u64> r0 = convolve_prime(a, b, len, n, 0);
  std::vector<u64> r1 = convolve_prime(a, b, len, n, 1);
  std::vector<u64> r2 = convolve_prime(a, b, len, n, 2);
  // Garner reconstruction, reduced modulo m.
  const Mont m1(p1), m2(p2);
  const u64 inv_p0_mod_p1 = m1.to(powmod(p0 % p1, p1 - 2, p1));
  const u64 p0_mod_p2 = m2.to(p0 % p2);
  const u64 inv_p0p1_mod_p2 = m2.to(powmod(mulmod(p0 % p2, p1 % p2, p2), p2 - 2, p2));
  std::vector<u64> out(len);
  const bool odd = (m & 1) != 0 && m > 1;
  if (odd) {
    const Mont mm(m);
    const u64 p0_m = mm.to(p0 % m);
    const u64 p0p1_m = mm.to(mulmod(p0 % m, p1 % m, m));
    for (std::size_t i = 0; i < len; ++i) {
      const u64 x0 = r0[i];
      const u64 t1 = m1.mul(m1.sub(r1[i], x0 % p1), inv_p0_mod_p1);
      const u64 v = m2.add(x0 % p2, m2.mul(p0_mod_p2, t1 % p2));
      const u64 t2 = m2.mul(m2.sub(r2[i], v), inv_p0p1_mod_p2);
      // mm.mul(x, mm.to(y)) == x*y mod m for plain x.
      u64 res = x0 % m;
      res = mm.add(res, mm.mul(t1 % m, p0_m));
      res = mm.add(res, mm.mul(t2 % m, p0p1_m));
      out[i] = res;
    }
  } else {
    const u64 p0_mod_m = p0 % m;
    const u64 p0p1_mod_m = mulmod(p0 % m, p1 % m, m);
    for (std::size_t i = 0; i < len; ++i) {
      const u64 x0 = r0[i];
      const u64 t1 = m1.mul(m1.sub(r1[i], x0 % p1), inv_p0_mod_p1);
      const u64 v = m2.add(x0 % p2, m2.mul(p0_mod_p2, t1 % p2));
      const u64 t2 = m2.mul(m2.sub(r2[i], v), inv_p0p1_mod_p2);
      u64 res = x0 % m;
      res = (res + mulmod(p0_mod_m, t1 % m, m)) % m;
      res = (res + mulmod(p0p1_mod_m, t2 % m, m)) % m;
      out[i] = res;
    }
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> multiply_mod(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b, std::uint64_t m,
                                        std::size_t len) {
  if (a.empty() || b.empty() || len == 0) return std::vector<std::uint64_t>(len, 0);
  return run(a, &b, m, len);
}

std::vector<std::uint64_t> square_mod(const std::vector<std::uint64_t>& a, std::uint64_t m,
                                      std::size_t len) {
  if (a.empty() || len == 0) return std::vector<std::uint64_t>(len, 0);
  return run(a, nullptr, m, len);
}

}  // namespace diamond7::ntt
