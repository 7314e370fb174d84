#include <doctest.h>

#include <random>

#include "diamond7/ntt.hpp"
#include "diamond7/residue_series.hpp"
#include "oracles.hpp"

using namespace diamond7;

TEST_SUITE("residue") {
  TEST_CASE("NTT product matches schoolbook convolution") {
    std::mt19937_64 rng(7);
    for (std::uint64_t m : {std::uint64_t{3909821048582988049ULL}, std::uint64_t{49}, std::uint64_t{1} << 40}) {
      std::vector<std::uint64_t> a(300), b(257);
      for (auto& x : a) x = rng() % m;
      for (auto& x : b) x = rng() % m;
      const auto c = ntt::multiply_mod(a, b, m, 400);
      for (std::size_t n = 0; n < 400; ++n) {
        unsigned __int128 s = 0;
        for (std::size_t i = 0; i <= n && i < a.size(); ++i) {
          if (n - i < b.size()) s = (s + static_cast<unsigned __int128>(a[i]) * b[n - i]) % m;
        }
        CHECK(c[n] == static_cast<std::uint64_t>(s));
      }
      const auto sq = ntt::square_mod(a, m, 300);
      const auto sq2 = ntt::multiply_mod(a, a, m, 300);
      CHECK(sq == sq2);
    }
  }

  TEST_CASE("J_1 powers by every route agree") {
    const std::uint64_t m = 282475249;  // 7^10
    for (int e : {-10, -3, 3, 7, 10}) {
      const ResidueSeries r = j1_power(e, m, 400);
      const auto want = oracle::j_product({{1, e}}, 400);
      for (int n = 0; n <= 400; ++n) {
        mpz_class w = want[n] % mpz_class(m);
        if (w < 0) w += mpz_class(m);
        CHECK(r.coeff(n) == w.get_ui());
      }
    }
  }

  TEST_CASE("U_7 and substitution on residues") {
    const std::uint64_t m = 2401;
    const ResidueSeries f = j1_power(-1, m, 700);
    const ResidueSeries u = u_operator(f, 7);
    const auto p = oracle::partitions(700);
    for (int n = 0; n <= 100; ++n) CHECK(u.coeff(n) == mpz_class(p[7 * n] % 2401).get_ui());
    const ResidueSeries s = substitute_power(f, 7);
    CHECK(s.coeff(14) == 2);
    CHECK(s.coeff(15) == 0);
  }
}
