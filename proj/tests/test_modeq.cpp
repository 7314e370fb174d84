#include <doctest.h>

#include "diamond7/errors.hpp"
#include "diamond7/eta.hpp"
#include "diamond7/evaluate.hpp"
#include "diamond7/modeq.hpp"
#include "diamond7/relations.hpp"

using namespace diamond7;

namespace {
TPoly tp(std::int64_t lo, std::vector<long> c) {
  std::vector<BigInt> b;
  for (long x : c) b.emplace_back(x);
  return TPoly(lo, b);
}
}  // namespace

TEST_SUITE("modeq") {
  TEST_CASE("table values") {
    CHECK(a_poly(0) == TPoly::monomial(BigInt(1), 1));
    CHECK(a_poly(1) == tp(1, {28, 49}));
    CHECK(a_poly(6).coeff(1) == 4018);
    CHECK_THROWS_AS(a_poly(7), PreconditionError);
    CHECK(ModEqTable::standard().checksum() == ModEqTable::kStandardChecksum);
    for (int l = 0; l <= 6; ++l) {
      CHECK(a_poly(l).low() >= 1);
    }
  }

  TEST_CASE("normalized coefficients") {
    CHECK(s_coeff(1, 1) == 4);
    CHECK(s_coeff(0, 1) == 1);
    CHECK(s_coeff(2, 3) == 1);
    CHECK(shape_exponent(2, 3) == 4);
  }

  TEST_CASE("eval_tpoly") {
    const QSeries t = generator(GeneratorName::T, 80);
    const QSeries e = eval_tpoly(TPoly::monomial(BigInt(1), 1), t);
    CHECK(equal_on_window(e, t, 80));
    CHECK(eval_tpoly(a_poly(1), t).min_exp() == 1);
    // a_6 monomial by monomial
    const TPoly& a6 = a_poly(6);
    QSeries sum = QSeries::zero(80);
    for (std::int64_t n = a6.low(); n <= a6.high(); ++n) {
      sum = add(sum, scale(power(t, n, 80), a6.coeff(n)));
    }
    CHECK(equal_on_window(eval_tpoly(a6, t), sum, 80));
  }

  TEST_CASE("modular equation residual") {
    CHECK(verify_modular_equation(200).pass());
    CHECK(verify_modular_equation(10).pass());
    auto entries = ModEqTable::standard().entries();
    bool hit = false;
    for (auto& e : entries) {
      if (e.j == 1 && e.power == 1) {
        // 4 * 7 -> 29
        e.mantissa = 29;
        e.e7 = 0;
        hit = true;
      }
    }
    REQUIRE(hit);
    const ModEqTable bad = ModEqTable::from_entries(entries);
    const Report r = verify_modular_equation(60, bad);
    CHECK_FALSE(r.pass());
    CHECK_THROWS(bad.validate());
  }

  TEST_CASE("the a_7 surrogate facts hold") { CHECK(a7_surrogate_report().pass()); }

  TEST_CASE("recurrence") {
    const std::array<ModuleElem, 7> zeros{};
    CHECK(recurrence_rhs(zeros, Precision::exact()).is_zero());

    auto store = RelationStore::standard({Precision::exact(), 0});
    std::array<ModuleElem, 7> imgs;
    for (int l = 0; l < 7; ++l) imgs[l] = store->get(OperatorTag::B, BasisFn::ONE, -7 + l)->rhs;
    CHECK(recurrence_rhs(imgs, Precision::exact()) == ModuleElem::constant_one());

    for (int l = 0; l < 7; ++l) imgs[l] = store->get(OperatorTag::B, BasisFn::ONE, -6 + l)->rhs;
    const ModuleElem ut = recurrence_rhs(imgs, Precision::exact());
    ModuleEvaluator ev(80);
    const QSeries direct = u_operator(generator(GeneratorName::T, 7 * 81 - 1), 7);
    CHECK(equal_on_window(ev.evaluate(ut), direct, 80));

    std::array<ModuleElem, 7> higher;
    for (int i = 0; i < 7; ++i) higher[i] = store->get(OperatorTag::B, BasisFn::ONE, -6 + i)->rhs;
    CHECK(recurrence_backward(higher, Precision::exact()) ==
          store->get(OperatorTag::B, BasisFn::ONE, -7)->rhs);
  }
}
