// Acceptance driver: `acceptance N` runs criterion N, `acceptance all` runs
// every criterion. One PASS/FAIL line per criterion; exit 1 on any failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "diamond7/cli.hpp"
#include "diamond7/congruence.hpp"
#include "diamond7/ell.hpp"
#include "diamond7/errors.hpp"
#include "diamond7/evaluate.hpp"
#include "diamond7/modeq.hpp"
#include "diamond7/relations.hpp"

using namespace diamond7;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;  // printed on failure, or always when short

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void require(const Report& r) {
    if (!r.pass()) {
      pass = false;
      notes.push_back(r.to_text());
    }
  }
};

constexpr std::array<OperatorTag, 3> kOps{OperatorTag::A3, OperatorTag::A5, OperatorTag::B};
constexpr std::array<BasisFn, 3> kBases{BasisFn::P0, BasisFn::P1, BasisFn::ONE};
constexpr std::int64_t kExtendLow = -20;
constexpr std::int64_t kExtendHigh = 15;

std::shared_ptr<RelationStore> exact_store() {
  static auto s = RelationStore::standard({Precision::exact(), 0});
  return s;
}

EllEngine& exact_engine() {
  static auto e = EllEngine::standard(Precision::exact(), 0);
  return *e;
}

// 7^200 keeps every audited congruence far inside the working precision.
EllEngine& mod_engine() {
  static auto e = EllEngine::standard(Precision::mod7(200), 0);
  return *e;
}

std::string pair_name(OperatorTag op, BasisFn b) {
  return std::string(op_label(op)) + "/" + std::string(basis_label(b));
}

// ---------------------------------------------------------------- criteria

Outcome appendix_fidelity() {
  Outcome o;
  auto s = exact_store();
  int ok = 0, total = 0;
  for (const auto& rel : s->seeds()) {
    ++total;
    const Report r = s->verify(*rel, 150);
    if (r.pass()) {
      ++ok;
    } else {
      o.fail(r.to_text());
    }
  }
  if (total != 63) o.fail("expected 63 seeds, found " + std::to_string(total));
  o.summary = std::to_string(ok) + "/" + std::to_string(total) + " seeds equal through q^150";
  return o;
}

Outcome modular_equation() {
  Outcome o;
  const Report r = verify_modular_equation(200);
  o.require(r);
  o.summary = "residual zero through q^200";
  return o;
}

Outcome recurrence_soundness() {
  Outcome o;
  auto s = exact_store();
  const Precision exact = Precision::exact();
  int verified = 0, fwd = 0, bwd = 0;
  for (OperatorTag op : kOps) {
    for (BasisFn b : kBases) {
      std::map<std::int64_t, ModuleElem> img;
      for (std::int64_t k = kExtendLow; k <= kExtendHigh; ++k) {
        const auto rel = s->get(op, b, k);
        img[k] = rel->rhs;
        if (rel->origin == Origin::SEED) continue;
        const Report r = s->verify(*rel, 100);
        ++verified;
        if (!r.pass()) o.fail(r.to_text());
      }
      // forward from the seven images below, backward from the seven above
      for (std::int64_t k = kExtendLow + 7; k <= kExtendHigh; ++k) {
        std::array<ModuleElem, 7> in;
        for (int l = 0; l < 7; ++l) in[l] = img[k - 7 + l];
        ++fwd;
        if (!(recurrence_rhs(in, exact) == img[k])) {
          o.fail("forward mismatch at " + pair_name(op, b) + " k=" + std::to_string(k));
        }
      }
      for (std::int64_t k = kExtendLow; k + 7 <= kExtendHigh; ++k) {
        std::array<ModuleElem, 7> in;
        for (int i = 0; i < 7; ++i) in[i] = img[k + 1 + i];
        ++bwd;
        if (!(recurrence_backward(in, exact) == img[k])) {
          o.fail("backward mismatch at " + pair_name(op, b) + " k=" + std::to_string(k));
        }
      }
    }
  }
  o.summary = std::to_string(verified) + " derived relations (k in [" + std::to_string(kExtendLow) + ", " +
              std::to_string(kExtendHigh) + "]) equal through q^100; " + std::to_string(fwd) +
              " forward and " + std::to_string(bwd) + " backward recurrence steps reproduce stored images";
  return o;
}

Outcome valuation_shapes() {
  Outcome o;
  auto s = exact_store();
  int checked = 0;
  for (OperatorTag op : kOps) {
    for (BasisFn b : kBases) {
      for (std::int64_t k = kExtendLow; k <= kExtendHigh; ++k) {
        const auto rel = s->get(op, b, k);
        const Report r = check_valuation_shape(*rel, shape_for(op, b));
        ++checked;
        o.require(r);
      }
    }
  }
  int combined = 0;
  for (std::int64_t k = kExtendLow; k <= kExtendHigh; ++k) {
    const Relation rel = s->combined_p0p1(k);
    ++combined;
    o.require(check_valuation_shape(rel, shape_for(OperatorTag::B, BasisFn::P0_PLUS_P1)));
  }
  o.summary = std::to_string(checked) + " relations and " + std::to_string(combined) +
              " combined-basis relations meet their shapes";
  return o;
}

Outcome ell_cross_check() {
  Outcome o;
  constexpr std::int64_t through = 100;
  constexpr unsigned kResidueExp = 22;
  const BigInt mod = pow7(kResidueExp);
  ModuleEvaluator ev(through);
  std::vector<std::string> parts;
  for (Family f : {Family::K3, Family::K5}) {
    for (int a = 0; a <= 6; ++a) {
      const std::string name = std::string(family_label(f)) + " L_" + std::to_string(a);
      if (ell_input_window(a, through) <= kExactEllBudget) {
        const QSeries s = ev.evaluate(exact_engine().symbolic(f, a));
        const QSeries q = ell_qseries(f, a, through);
        if (const auto d = first_difference(s, q, through)) {
          o.fail(name + " differs at q^" + std::to_string(d->exponent));
        }
        parts.push_back(name + " exact");
      } else {
        const QSeries s = reduce_mod(ev.evaluate(mod_engine().symbolic(f, a)), mod);
        const ResidueSeries q = ell_qseries_residue(f, a, through, mod.get_ui());
        for (std::int64_t n = 0; n <= through; ++n) {
          if (BigInt(static_cast<unsigned long>(q.coeff(n))) != s.at(n)) {
            o.fail(name + " differs mod 7^22 at q^" + std::to_string(n));
            break;
          }
        }
        parts.push_back(name + " mod 7^22");
      }
    }
  }
  o.summary = "symbolic = q-series through q^100 for alpha <= 6 (";
  std::size_t exact_n = 0;
  for (const auto& p : parts) exact_n += p.ends_with("exact");
  o.summary += std::to_string(exact_n) + " exact, " + std::to_string(parts.size() - exact_n) +
               " modulo 7^22)";
  return o;
}

Outcome lemma_mod49() {
  Outcome o;
  o.require(lemma_mod49_report(exact_engine(), 100));
  o.summary = "L_1 = 21t^4, L_2 = 14t, L_3 = 35(p0+p1)t^3 mod 49, symbolic and on q^100 windows";
  return o;
}

Outcome structure_audits() {
  Outcome o;
  std::size_t checks = 0;
  for (int a = 1; a <= 8; ++a) {
    const Report k3 = audit_structure_k3(mod_engine(), a);
    const Report k5 = audit_structure_k5(mod_engine(), a);
    checks += k3.checks.size() + k5.checks.size();
    o.require(k3);
    o.require(k5);
  }
  o.summary = "K3 and K5 audits for alpha <= 8 (" + std::to_string(checks) + " checks)";
  return o;
}

Outcome determinants() {
  Outcome o;
  const auto audits = audit_determinants(mod_engine(), 4, &exact_engine());
  const Report r = determinant_report(audits);
  o.require(r);
  std::size_t capped = 0;
  for (const auto& d : audits) capped += d.capped;
  o.summary = std::to_string(audits.size()) + " determinant pairs for alpha <= 4 (" + std::to_string(capped) +
              " beyond the 7^200 precision), pi(D^(1)(l_{3,1}, l_{3,0})) = inf";
  return o;
}

Outcome multiplier_x() {
  Outcome o;
  std::string xs;
  for (int a = 1; a <= 3; ++a) {
    for (bool odd : {false, true}) {
      const XSolution s = solve_x_alpha(mod_engine(), a, odd);
      o.require(s.report);
      if (!s.report.details.contains("statement_direction")) o.fail("statement direction not reported");
      xs += (xs.empty() ? "" : ", ") + std::string(odd ? "odd" : "even") + " a=" + std::to_string(a) +
            ": x=" + s.x.get_str();
    }
  }
  o.summary = "mod 7^{a+1} multipliers (" + xs + ")";
  return o;
}

Outcome theorem_d3() {
  Outcome o;
  std::string parts;
  for (int a : {2, 3, 4}) {
    const std::int64_t lam = lambda(Family::K3, a).value.get_si();
    const std::int64_t step = pow7(static_cast<unsigned>(a)).get_si();
    const std::int64_t n_max = (50000 - lam) / step;
    const Report r = check_theorem_d3(a, n_max);
    o.require(r);
    parts += (parts.empty() ? "" : ", ") + std::string("a=") + std::to_string(a) + " n<=" + std::to_string(n_max);
  }
  o.summary = "d_3(7^a n + lambda_a) = 0 mod 7^{floor(a/2)}, arguments <= 50000 (" + parts + ")";
  return o;
}

Outcome theorem_d5() {
  Outcome o;
  for (int a : {1, 2}) o.require(check_theorem_d5(a, 50));
  o.summary = "cross-product congruence mod 7^{floor(a/2)+2} for a in {1, 2}, n <= 50";
  return o;
}

Outcome corollary() {
  Outcome o;
  o.require(check_corollary(2, 500));
  o.summary = "d_{7k}(7n+5), d_{7k+5}(7n+2) = 0 mod 7 for k <= 2, n <= 500";
  return o;
}

Outcome prefactor_identities() {
  Outcome o;
  for (Family f : {Family::K3, Family::K5}) {
    for (int a = 1; a <= 2; ++a) o.require(check_prefactor_identity(f, a, 60));
  }
  o.summary = "K3 and K5, alpha <= 2, exact through q^60";
  return o;
}

Outcome self_healing() {
  Outcome o;
  const auto original = parse_relation_file(embedded_seed_text());
  // Corrupt one printed coefficient of U_A3(p0 t^-3).
  auto corrupted = original;
  std::size_t idx = corrupted.size();
  for (std::size_t i = 0; i < corrupted.size(); ++i) {
    const auto& r = corrupted[i];
    if (r.op == OperatorTag::A3 && r.basis == BasisFn::P0 && r.k == -3) idx = i;
  }
  if (idx == corrupted.size()) {
    o.fail("target relation missing");
    return o;
  }
  corrupted[idx].terms[0].mantissa += 1;
  const auto path = std::filesystem::temp_directory_path() / "diamond7_corrupted_seeds.json";
  std::ofstream(path, std::ios::binary) << serialize_relation_file(corrupted);

  std::ostringstream out, err;
  const int code = cli::run({"verify-appendix", "--order", "150", "--seed-file", path.string()}, out, err);
  if (code != cli::kMathFailure) o.fail("verify-appendix exit " + std::to_string(code) + ", expected 1");

  const RelationRecord& want = original[idx];
  const Relation bad_rel = [&] {
    Relation r;
    r.op = want.op;
    r.basis = want.basis;
    r.k = want.k;
    r.rhs = corrupted[idx].to_module();
    return r;
  }();
  std::int64_t lo = 0, hi = 0;
  bool any = false;
  for (Out c : {Out::P0, Out::P1, Out::ONE}) {
    const TPoly& p = bad_rel.rhs[c];
    if (p.is_zero()) continue;
    lo = any ? std::min(lo, p.low()) : p.low();
    hi = any ? std::max(hi, p.high()) : p.high();
    any = true;
  }
  lo -= 1;
  hi += 1;
  const QSeries f = relation_lhs(want.op, want.basis, want.k, 150);
  Relation solved;
  solved.op = want.op;
  solved.basis = want.basis;
  solved.k = want.k;
  solved.rhs = decompose_into_module(f, lo, hi);
  const RelationRecord healed = RelationRecord::from_relation(solved);
  if (!(healed == want)) o.fail("decomposition does not reproduce the printed relation");
  if (healed == corrupted[idx]) o.fail("decomposition reproduced the corruption");
  std::filesystem::remove(path);
  o.summary = "corrupted " + solved.id() + ": verify-appendix exit " + std::to_string(code) +
              ", decomposition restores the printed line";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "appendix fidelity", appendix_fidelity},
      {2, "modular equation", modular_equation},
      {3, "recurrence soundness", recurrence_soundness},
      {4, "valuation shapes", valuation_shapes},
      {5, "L-sequence cross-check", ell_cross_check},
      {6, "mod-49 lemma", lemma_mod49},
      {7, "structural audits", structure_audits},
      {8, "determinant audits", determinants},
      {9, "multiplier mechanism", multiplier_x},
      {10, "d_3 desk scan", theorem_d3},
      {11, "d_5 desk scan", theorem_d5},
      {12, "corollary desk scan", corollary},
      {13, "prefactor identities", prefactor_identities},
      {14, "self-healing", self_healing},
  };
  return all;
}

bool run_one(const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << "criterion " << c.id << " [" << c.name << "] " << (o.pass ? "PASS" : "FAIL") << ": " << o.summary
       << " (" << secs << " s)";
  std::cout << line.str() << std::endl;
  if (!o.pass) {
    for (const auto& n : o.notes) std::cout << "  " << n << '\n';
  }
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <1..14|all>\n";
    return 2;
  }
  const std::string which = argv[1];
  bool ok = true;
  bool found = false;
  for (const auto& c : criteria()) {
    if (which == "all" || which == std::to_string(c.id)) {
      found = true;
      ok = run_one(c) && ok;
    }
  }
  if (!found) {
    std::cerr << "unknown criterion " << which << '\n';
    return 2;
  }
  return ok ? 0 : 1;
}
