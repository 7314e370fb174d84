#include "diamond7/modeq.hpp"

#include <string>

#include "diamond7/errors.hpp"
#include "diamond7/eta.hpp"

namespace diamond7 {

namespace {

const std::vector<ModEqEntry>& standard_entries() {
  static const std::vector<ModEqEntry> e{
      {0, 1, 1, 0},
      {1, 2, 1, 2},   {1, 1, 4, 1},
      {2, 3, 1, 4},   {2, 2, 4, 3},   {2, 1, 46, 1},
      {3, 4, 1, 6},   {3, 3, 4, 5},   {3, 2, 46, 3},  {3, 1, 272, 1},
      {4, 5, 1, 8},   {4, 4, 4, 7},   {4, 3, 46, 5},  {4, 2, 272, 3},  {4, 1, 845, 1},
      {5, 6, 1, 10},  {5, 5, 4, 9},   {5, 4, 46, 7},  {5, 3, 272, 5},  {5, 2, 845, 3},
      {5, 1, 176, 2},
      {6, 7, 1, 12},  {6, 6, 4, 11},  {6, 5, 46, 9},  {6, 4, 272, 7},  {6, 3, 845, 5},
      {6, 2, 176, 4}, {6, 1, 82, 2},
  };
  return e;
}

}  // namespace

ModEqTable ModEqTable::from_entries(const std::vector<ModEqEntry>& entries) {
  ModEqTable t;
  t.entries_ = entries;
  for (const auto& e : entries) {
    if (e.j < 0 || e.j > 6) throw PreconditionError("modular equation index out of range");
    t.a_[e.j].add_term(BigInt(e.mantissa) * pow7(static_cast<unsigned>(e.e7)), e.power);
  }
  return t;
}

const ModEqTable& ModEqTable::standard() {
  static const ModEqTable table = [] {
    ModEqTable t = from_entries(standard_entries());
    if (t.checksum() != kStandardChecksum) {
      throw VerificationFailure("modular equation table checksum mismatch");
    }
    t.validate();
    return t;
  }();
  return table;
}

const TPoly& ModEqTable::a(int l) const {
  if (l < 0 || l > 6) throw PreconditionError("a_l index must lie in 0..6, got " + std::to_string(l));
  return a_[l];
}

std::uint64_t ModEqTable::checksum() const {
  std::string s;
  for (const auto& e : entries_) {
    s += std::to_string(e.j) + ':' + std::to_string(e.power) + ':' + std::to_string(e.mantissa) +
         ':' + std::to_string(e.e7) + ';';
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void ModEqTable::validate() const {
  if (!(a_[0] == TPoly::monomial(BigInt(1), 1))) {
    throw VerificationFailure("a_0 must equal t");
  }
  for (int j = 0; j < 7; ++j) {
    if (!a_[j].is_zero() && a_[j].low() < 1) {
      throw VerificationFailure("a_" + std::to_string(j) + " is not divisible by t");
    }
    for (int l = 1; l <= 7; ++l) s_coeff(j, l, *this);
  }
}

const TPoly& a_poly(int l) { return ModEqTable::standard().a(l); }

std::int64_t shape_exponent(int j, int l) { return floor_div(7 * l + j - 4, 4); }

BigInt s_coeff(int j, int l, const ModEqTable& table) {
  if (l < 1 || l > 7) throw PreconditionError("s(j,l) needs l in 1..7");
  const BigInt& c = table.a(j).coeff(l);
  const std::int64_t e = shape_exponent(j, l);
  if (e <= 0) return c;
  const BigInt& m = pow7(static_cast<unsigned>(e));
  if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) {
    throw DivisibilityViolation("coefficient of t^" + std::to_string(l) + " in a_" +
                                std::to_string(j) + " is not divisible by 7^" + std::to_string(e));
  }
  BigInt q;
  mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  return q;
}

Report verify_modular_equation(std::int64_t through, const ModEqTable& table) {
  Report r;
  r.subject = "modular-equation";
  r.params["through"] = through;
  const QSeries t = generator(GeneratorName::T, through);
  const QSeries t7 = substitute_power(t, 7);
  QSeries rhs = QSeries::zero();
  QSeries tl = QSeries::one();
  for (int l = 0; l <= 6; ++l) {
    rhs = add(rhs, mul(eval_tpoly(table.a(l), t7), tl));
    tl = mul(tl, t);
  }
  // tl is now t^7.
  const QSeries residual = sub(tl, rhs);
  const std::int64_t window = std::min(residual.valid_through(), through);
  auto diff = first_difference(residual, QSeries::zero(), window);
  r.add("residual vanishes", "0 through q^" + std::to_string(through),
        diff ? "nonzero at q^" + std::to_string(diff->exponent) + " (" + diff->left.get_str() + ")"
             : "0 through q^" + std::to_string(window),
        !diff && window >= through);
  r.details["checksum"] = table.checksum();
  return r;
}

ModuleElem recurrence_rhs(const std::array<ModuleElem, 7>& images, const Precision& prec,
                          const ModEqTable& table) {
  ModuleElem acc;
  for (int l = 0; l < 7; ++l) acc += mul(table.a(l), images[l], prec);
  return acc.reduced(prec);
}

ModuleElem recurrence_backward(const std::array<ModuleElem, 7>& higher, const Precision& prec,
                               const ModEqTable& table) {
  if (prec.degree_capped()) {
    throw PreconditionError("backward extension lowers t-degree and is unsound under a degree cap");
  }
  ModuleElem acc = higher[6];
  for (int l = 1; l <= 6; ++l) acc -= mul(table.a(l), higher[l - 1], prec);
  return acc.reduced(prec).shifted(-1);
}

Report a7_surrogate_report(const ModEqTable& table) {
  Report r;
  r.subject = "a7-surrogate";
  const BigInt c = table.a(6).coeff(1);
  r.add("49 | [t^1] a_6", "order >= 2", seven_adic_order(c).to_string(),
        seven_adic_order(c).at_least(2));
  bool shape_ok = true;
  std::string where = "all";
  for (int j = 0; j < 7 && shape_ok; ++j) {
    for (int l = 1; l <= 7; ++l) {
      const BigInt& x = table.a(j).coeff(l);
      if (!seven_adic_order(x).at_least(shape_exponent(j, l))) {
        shape_ok = false;
        where = "a_" + std::to_string(j) + " t^" + std::to_string(l);
        break;
      }
    }
  }
  r.add("table shape 7^floor((7l+j-4)/4)", "all entries", shape_ok ? "all entries" : where, shape_ok);
  r.details["note"] =
      "a_7 is referenced by the mod-49 lemma but not defined by the modular equation; "
      "only the surrogate facts above are certified.";
  return r;
}

}  // namespace diamond7
