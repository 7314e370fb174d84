#include <doctest.h>

#include "diamond7/errors.hpp"
#include "diamond7/eta.hpp"
#include "diamond7/qseries.hpp"
#include "oracles.hpp"

using namespace diamond7;

namespace {

QSeries poly(std::int64_t lo, std::vector<long> c, std::int64_t vt = kUnbounded) {
  std::vector<BigInt> b;
  for (long x : c) b.emplace_back(x);
  return QSeries(lo, b, vt);
}

bool eq(const QSeries& a, const QSeries& b) {
  return a.min_exp() == b.min_exp() && a.coeffs() == b.coeffs();
}

QSeries j1(std::int64_t through) { return expand(EtaQuotientSpec({{1, 1}}, false), through); }

}  // namespace

TEST_SUITE("series-core") {
  TEST_CASE("add cancels and keeps identities") {
    CHECK(eq(add(poly(0, {1, 1}), poly(0, {1, -1})), poly(0, {2})));
    const QSeries f = poly(-2, {3, 0, 5}, 40);
    CHECK(eq(add(f, QSeries::zero()), f));
    const QSeries j = j1(30);
    const QSeries z = add(j, -j);
    CHECK(z.is_zero());
    CHECK(z.valid_through() == 30);
  }

  TEST_CASE("mul: Laurent exponents and the convolution oracle") {
    CHECK(eq(mul(poly(0, {1, 1}), poly(0, {1, -1})), poly(0, {1, 0, -1})));
    CHECK(eq(mul(QSeries::monomial(1, -1), QSeries::monomial(1, 1)), QSeries::one()));
    const QSeries j = j1(19);
    const QSeries sq = mul(j, j);
    oracle::Poly a(20);
    for (int i = 0; i < 20; ++i) a[i] = j.coeff(i);
    const oracle::Poly want = oracle::convolve(a, a, 19);
    for (int i = 0; i < 20; ++i) CHECK(sq.coeff(i) == want[i]);
  }

  TEST_CASE("invert") {
    const QSeries g = invert(poly(0, {1, -1}), 25);
    for (int i = 0; i <= 25; ++i) CHECK(g.coeff(i) == 1);
    const QSeries t = generator(GeneratorName::T, 60);
    const QSeries ti = invert(t);
    CHECK(ti.min_exp() == -1);
    const QSeries back = mul(t, ti);
    CHECK(equal_on_window(back, QSeries::one(), back.valid_through()));
    CHECK(back.valid_through() >= 50);
    CHECK_THROWS_AS(invert(poly(0, {2, 1}), 10), NonUnitLeading);
  }

  TEST_CASE("u_operator") {
    const QSeries ones = poly(0, std::vector<long>(700, 1), 699);
    const QSeries u = u_operator(ones, 7);
    CHECK(u.valid_through() == 99);
    for (int i = 0; i <= 99; ++i) CHECK(u.coeff(i) == 1);
    CHECK(eq(u_operator(QSeries::monomial(1, 21), 7), QSeries::monomial(1, 3)));
    CHECK(u_operator(QSeries::monomial(1, 5), 7).is_zero());
    const QSeries pj = u_operator(invert(j1(140)), 7);
    const auto p = oracle::partitions(140);
    CHECK(pj.coeff(0) == 1);
    CHECK(pj.coeff(1) == 15);
    CHECK(pj.coeff(2) == 135);
    for (int n = 0; n <= 20; ++n) CHECK(pj.coeff(n) == p[7 * n]);
  }

  TEST_CASE("substitute_power") {
    CHECK(eq(substitute_power(poly(0, {1, 1}), 7), poly(0, {1, 0, 0, 0, 0, 0, 0, 1})));
    const QSeries t = generator(GeneratorName::T, 30);
    const QSeries t7 = substitute_power(t, 7);
    const QSeries direct = expand(EtaQuotientSpec::parse("49^4 * 7^-4"), t7.valid_through());
    CHECK(equal_on_window(t7, direct, t7.valid_through()));
    CHECK(eq(substitute_power(t, 1), t));
  }

  TEST_CASE("reduce_mod") {
    CHECK(eq(reduce_mod(poly(0, {7, 50}), BigInt(7)), poly(0, {0, 1})));
    CHECK_THROWS_AS(reduce_mod(poly(0, {7}), BigInt(1)), PreconditionError);
  }

  TEST_CASE("seven-adic orders") {
    CHECK(seven_adic_order(BigInt(49)) == SevenAdicOrder(2));
    CHECK(seven_adic_order(BigInt(0)).is_infinite());
    CHECK(seven_adic_order(BigInt(122010)) == SevenAdicOrder(2));
    CHECK(seven_adic_order(BigInt(-7 * 7 * 7 * 3)) == SevenAdicOrder(3));
    CHECK(min_valuation(poly(0, {7, 49})) == SevenAdicOrder(1));
    CHECK(min_valuation(QSeries::zero()).is_infinite());
    // 8X - 1 is divisible by 7 coefficientwise.
    const QSeries x = expand(specs::x(), 200);
    const QSeries v = sub(scale(x, BigInt(8)), QSeries::one());
    CHECK(min_valuation(v).at_least(1));
  }

  TEST_CASE("precision window is enforced") {
    const QSeries f = poly(0, {1, 2, 3}, 5);
    CHECK(f.coeff(5) == 0);
    CHECK_THROWS_AS(f.coeff(6), PrecisionError);
    CHECK(mul(f, poly(0, {1}, 3)).valid_through() == 3);
  }
}
