#include <doctest.h>

#include <map>

#include "diamond7/errors.hpp"
#include "diamond7/eta.hpp"
#include "diamond7/evaluate.hpp"
#include "diamond7/relations.hpp"

using namespace diamond7;

namespace {

TPoly tp(std::int64_t lo, std::vector<long> c) {
  std::vector<BigInt> b;
  for (long x : c) b.emplace_back(x);
  return TPoly(lo, b);
}

std::shared_ptr<RelationStore> exact_store() {
  static auto s = RelationStore::standard({Precision::exact(), 60});
  return s;
}

}  // namespace

TEST_SUITE("relation-engine") {
  TEST_CASE("seed coverage") {
    const auto seeds = exact_store()->seeds();
    CHECK(seeds.size() == 63);
    std::map<std::pair<int, int>, int> count;
    for (const auto& r : seeds) ++count[{static_cast<int>(r->op), static_cast<int>(r->basis)}];
    CHECK(count.size() == 9);
    for (const auto& [k, n] : count) CHECK(n == 7);
  }

  TEST_CASE("printed seed values") {
    auto s = exact_store();
    CHECK(s->get(OperatorTag::B, BasisFn::ONE, 0)->rhs == ModuleElem::constant_one());
    CHECK(s->get(OperatorTag::A5, BasisFn::ONE, -4)->rhs ==
          ModuleElem({}, tp(3, {10}), tp(4, {49})));
    CHECK(s->get(OperatorTag::B, BasisFn::ONE, -1)->rhs == ModuleElem({}, {}, tp(0, {-4, -7})));
    CHECK(s->get(OperatorTag::A3, BasisFn::P0, -3)->rhs ==
          ModuleElem(tp(2, {56}), tp(2, {12}), tp(3, {-49})));
  }

  TEST_CASE("direct verification and injected faults") {
    auto s = exact_store();
    for (const auto& r : s->seeds()) CHECK_MESSAGE(s->verify(*r, 60).pass(), r->id());
    Relation bad = *s->get(OperatorTag::A3, BasisFn::P0, -3);
    bad.rhs = bad.rhs + ModuleElem({}, {}, tp(5, {1}));
    CHECK_FALSE(s->verify(bad, 60).pass());
  }

  TEST_CASE("derived relations") {
    auto s = exact_store();
    const auto r = s->get(OperatorTag::B, BasisFn::ONE, 1);
    CHECK(r->origin == Origin::FORWARD);
    ModuleEvaluator ev(60);
    const QSeries direct = u_operator(generator(GeneratorName::T, 7 * 61 - 1), 7);
    CHECK(equal_on_window(ev.evaluate(r->rhs), direct, 60));

    const ModuleElem& b = s->get(OperatorTag::B, BasisFn::P0, 2)->rhs;
    CHECK(b[Out::P0].coeff(0) == 14);
    for (Out o : {Out::P0, Out::P1, Out::ONE}) {
      const TPoly& c = b[o];
      if (c.is_zero()) continue;
      for (std::int64_t n = c.low(); n <= c.high(); ++n) CHECK(c.coeff(n) % 7 == 0);
    }

    const auto back = s->get(OperatorTag::A5, BasisFn::P1, -15);
    CHECK(back->origin == Origin::BACKWARD);
    CHECK(s->verify(*back, 60).pass());
  }

  TEST_CASE("L_1 data from U_A5(1)") {
    const ModuleElem& l1 = exact_store()->get(OperatorTag::A5, BasisFn::ONE, 0)->rhs;
    // 6*7 + 46*7 in the p0/p1 t^4 terms reduce to 21 t^4 mod 49 overall
    const ModuleElem red = l1.reduced(Precision::mod7(2));
    CHECK(red == ModuleElem({}, {}, tp(4, {21})));
  }

  TEST_CASE("combined basis") {
    auto s = exact_store();
    const Relation c3 = s->combined_p0p1(3);
    CHECK(c3.rhs[Out::P0].low() >= 1);
    const Relation c0 = s->combined_p0p1(0);
    CHECK(c0.rhs == s->get(OperatorTag::B, BasisFn::P0, 0)->rhs + s->get(OperatorTag::B, BasisFn::P1, 0)->rhs);
  }

  TEST_CASE("valuation shapes") {
    auto s = exact_store();
    const auto r = s->get(OperatorTag::B, BasisFn::ONE, -1);
    CHECK(check_valuation_shape(*r, shape_for(OperatorTag::B, BasisFn::ONE)).pass());
    const auto g4 = s->get(OperatorTag::A5, BasisFn::P0, -4);
    CHECK(g4->rhs[Out::P0].coeff(3) == 76 * 7);
    CHECK(check_valuation_shape(*g4, shape_for(OperatorTag::A5, BasisFn::P0)).pass());
    for (const auto& rel : s->seeds()) {
      CHECK_MESSAGE(check_valuation_shape(*rel, shape_for(rel->op, rel->basis)).pass(), rel->id());
    }
    Relation bad = *r;
    bad.rhs = ModuleElem({}, {}, tp(0, {-4, -1}));
    CHECK_FALSE(check_valuation_shape(bad, shape_for(OperatorTag::B, BasisFn::ONE)).pass());
  }

  TEST_CASE("decomposition") {
    ModuleEvaluator ev(80);
    const ModuleElem m({}, {}, tp(0, {-4, -7}));
    CHECK(decompose_into_module(ev.evaluate(m), -1, 2) == m);
    const ModuleElem p0 = ModuleElem(tp(0, {1}), {}, {});
    CHECK(decompose_into_module(ev.evaluate(p0), -1, 1) == p0);
    const QSeries f = relation_lhs(OperatorTag::A5, BasisFn::ONE, -4, 80);
    CHECK(decompose_into_module(f, 2, 5) == ModuleElem({}, tp(3, {10}), tp(4, {49})));
    CHECK_THROWS_AS(decompose_into_module(relation_lhs(OperatorTag::B, BasisFn::ONE, 3, 10), -2, 6),
                    UnderdeterminedWindow);
    CHECK_THROWS_AS(decompose_into_module(QSeries::monomial(BigInt(1), 0, 80).shifted(-5), 0, 3),
                    NoSolution);
  }

  TEST_CASE("relation file format") {
    const auto recs = parse_relation_file(embedded_seed_text());
    CHECK(recs.size() == 63);
    const std::string text = serialize_relation_file(recs);
    CHECK(parse_relation_file(text) == recs);
    CHECK(serialize_relation_file(parse_relation_file(text)) == text);
    CHECK(checksum_hex(text).size() == 16);

    CHECK_THROWS_AS(parse_relation_file("[{\"op\": \"A3\"}]"), SchemaError);
    CHECK_THROWS_AS(parse_relation_file("not json"), SchemaError);
    auto dup = recs;
    dup.push_back(recs.front());
    CHECK_THROWS_AS(RelationStore(dup, {}), SchemaError);
    auto gap = recs;
    gap.erase(gap.begin());
    CHECK_THROWS_AS(RelationStore(gap, {}), CoverageError);
  }

  TEST_CASE("a corrupted seed is caught when derivations pass through it") {
    auto recs = parse_relation_file(embedded_seed_text());
    for (auto& r : recs) {
      if (r.op == OperatorTag::B && r.basis == BasisFn::ONE && r.k == -1) r.terms[0].mantissa += 1;
    }
    RelationStore s(recs, {Precision::exact(), 40});
    CHECK_FALSE(s.verify(*s.get(OperatorTag::B, BasisFn::ONE, -1), 40).pass());
    CHECK_THROWS_AS(s.get(OperatorTag::B, BasisFn::ONE, 2), VerificationFailure);
  }

  TEST_CASE("modular precision store") {
    auto s = RelationStore::standard({Precision::mod7(30), 40});
    const auto r = s->get(OperatorTag::A5, BasisFn::P0, 20);
    CHECK(s->verify(*r, 40).pass());
  }
}
