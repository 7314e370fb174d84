#include <doctest.h>

#include "diamond7/errors.hpp"
#include "diamond7/eta.hpp"
#include "oracles.hpp"

using namespace diamond7;

TEST_SUITE("eta-lab") {
  TEST_CASE("J_1 matches the direct product") {
    const QSeries j = expand(EtaQuotientSpec({{1, 1}}, false), 12);
    const std::vector<long> want{1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1};
    for (int i = 0; i <= 12; ++i) CHECK(j.coeff(i) == want[i]);
    const auto direct = oracle::j_product({{1, 1}}, 12);
    for (int i = 0; i <= 12; ++i) CHECK(j.coeff(i) == direct[i]);
  }

  TEST_CASE("prefactor exponents") {
    CHECK(specs::a3().q_shift() == 8);
    CHECK(expand(specs::a3(), 30).min_exp() == 8);
    CHECK(specs::a5().q_shift() == 12);
    const EtaQuotientSpec bad({{1, 4}, {2, -4}});
    CHECK_THROWS_AS(expand(bad, 10), FractionalExponent);
  }

  TEST_CASE("spec text form round-trips and merges scales") {
    const EtaQuotientSpec s = EtaQuotientSpec::parse("7^4 * 1^-4");
    CHECK(EtaQuotientSpec::parse(s.to_string()) == s);
    CHECK(s == specs::t());
    const EtaQuotientSpec merged = EtaQuotientSpec::parse("2^3 * 2^2 * 1^-1");
    CHECK(merged.factors().size() == 2);
    CHECK(EtaQuotientSpec::parse("2^1 noprefactor").with_prefactor() == false);
  }

  TEST_CASE("generators") {
    const QSeries t = generator(GeneratorName::T, 40);
    CHECK(t.min_exp() == 1);
    CHECK(t.coeff(1) == 1);
    CHECK(generator(GeneratorName::P1, 40).min_exp() == -1);
    const QSeries p0 = generator(GeneratorName::P0, 40);
    CHECK(p0.coeff(0) == 1);
    // 7 p0 + 1 == 8 X
    const QSeries x = expand(specs::x(), 40);
    for (int i = 0; i <= 40; ++i) CHECK(7 * p0.coeff(i) + (i == 0 ? 1 : 0) == 8 * x.coeff(i));
  }

  TEST_CASE("generic eta quotient against the product oracle") {
    const QSeries f = expand(EtaQuotientSpec::parse("2^5 * 1^-16 * 7^3 * 3^3"), 80);
    const auto want = oracle::j_product({{2, 5}, {1, -16}, {7, 3}, {3, 3}}, 80 - f.min_exp());
    for (int i = 0; i + f.min_exp() <= 80; ++i) CHECK(f.coeff(i + f.min_exp()) == want[i]);
  }

  TEST_CASE("d_k series") {
    const auto p = oracle::partitions(60);
    const QSeries d0 = dk_series(0, 60);
    for (int n = 0; n <= 60; ++n) CHECK(d0.coeff(n) == p[n]);
    for (int k : {1, 3, 5, 7}) {
      const QSeries d = dk_series(k, 80);
      CHECK(d.coeff(0) == 1);
      const auto want = oracle::diamond_counts(k, 80);
      for (int n = 0; n <= 80; ++n) CHECK(d.coeff(n) == want[n]);
    }
    const std::uint64_t m = 823543;
    const ResidueSeries r = dk_series_residue(3, 500, m);
    const auto want = oracle::diamond_counts(3, 500);
    for (int n = 0; n <= 500; ++n) {
      mpz_class w = want[n] % mpz_class(m);
      if (w < 0) w += mpz_class(m);
      CHECK(r.coeff(n) == w.get_ui());
    }
  }

  TEST_CASE("residue expansion agrees with exact expansion") {
    const std::uint64_t m = 1977326743;  // 7^11
    for (GeneratorName g : {GeneratorName::T, GeneratorName::P0, GeneratorName::P1, GeneratorName::A5}) {
      const QSeries e = generator(g, 300);
      const ResidueSeries r = generator_residue(g, m, 300);
      for (std::int64_t n = e.min_exp(); n <= 300; ++n) CHECK(r.coeff(n) == to_residue(e.at(n), m));
    }
  }
}
