#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "diamond7/module_elem.hpp"
#include "diamond7/qseries.hpp"
#include "diamond7/relations.hpp"
#include "diamond7/report.hpp"
#include "diamond7/residue_series.hpp"

namespace diamond7 {

/// K3 alternates (A3, B), K5 alternates (A5, B).
enum class Family { K3, K5 };

std::string_view family_label(Family f);  // "K3", "K5"
Family parse_family(std::string_view s);
/// Operator taking L_{alpha-1} to L_alpha (alpha >= 1).
OperatorTag step_operator(Family f, int alpha);

struct EllState {
  Family family = Family::K3;
  int alpha = 0;
  ModuleElem symbolic;
  Precision precision;
  std::optional<QSeries> qform;
};

/// Symbolic L-sequences through a relation store. Results are memoized per
/// family; all methods are thread-safe.
class EllEngine {
 public:
  explicit EllEngine(std::shared_ptr<RelationStore> store);

  /// Engine over the embedded seeds at the given precision (no re-verification
  /// window beyond the store default).
  static std::shared_ptr<EllEngine> standard(const Precision& prec, std::int64_t verify_through = 30);

  RelationStore& store() { return *store_; }
  const Precision& precision() const { return store_->config().precision; }

  /// U_op applied termwise to c0 p0 + c1 p1 + c2.
  ModuleElem apply_operator(OperatorTag op, const ModuleElem& m);

  /// L_alpha in module form.
  EllState state(Family f, int alpha);
  ModuleElem symbolic(Family f, int alpha) { return state(f, alpha).symbolic; }

 private:
  std::shared_ptr<RelationStore> store_;
  std::mutex mu_;
  std::map<Family, std::vector<ModuleElem>> seq_;
};

/// q^{n} input length needed to know L_alpha through q^through.
std::int64_t ell_input_window(int alpha, std::int64_t through);

/// Default cap on the exact input window.
inline constexpr std::int64_t kExactEllBudget = 40000;
/// Default cap on the residue input window.
inline constexpr std::int64_t kResidueEllBudget = 13'000'000;

/// L_alpha by iterating U_7 on exact q-series. InsufficientPrecision when the
/// input window exceeds the budget.
QSeries ell_qseries(Family f, int alpha, std::int64_t through, std::int64_t budget = kExactEllBudget);

/// The same iteration with coefficients modulo `modulus`.
ResidueSeries ell_qseries_residue(Family f, int alpha, std::int64_t through, std::uint64_t modulus,
                                  std::int64_t budget = kResidueEllBudget);

/// l_{n,i} of a module element, i = 0 (p0), 1 (p1), 2 (1).
const BigInt& ell_coeff(const ModuleElem& m, std::int64_t n, int i);

/// Structural audits of L_{2a-1} and L_{2a}. Under a modular precision every
/// bound above the modulus exponent is reported as capped.
Report audit_structure_k3(EllEngine& engine, int alpha);
Report audit_structure_k5(EllEngine& engine, int alpha);

struct DeterminantAudit {
  int alpha = 0;
  std::int64_t m = 0;
  int i = 0;
  std::int64_t n = 0;
  int j = 0;
  BigInt value;
  SevenAdicOrder observed;
  std::int64_t required = 0;
  bool pass = false;
  /// The value vanished modulo the working precision below the requirement.
  bool capped = false;
};

/// Determinant bound for D^{(alpha)}(l_{m,i}, l_{n,j}).
std::int64_t determinant_bound(int alpha, std::int64_t m, int i, std::int64_t n, int j);

/// D^{(alpha)} over all pairs of stored positions, for alpha = 1..alpha_max
/// (K5 family). `exact` optionally supplies an exact engine used for every
/// alpha with alpha + 2 <= exact_alpha_max.
std::vector<DeterminantAudit> audit_determinants(EllEngine& engine, int alpha_max,
                                                 EllEngine* exact = nullptr,
                                                 int exact_alpha_max = 3);
Report determinant_report(const std::vector<DeterminantAudit>& audits);

struct XSolution {
  BigInt x;
  Report report;
};

/// Multiplier relating L_{2a} and L_{2a+2} (odd = false, anchor l_{1,2}) or
/// L_{2a+1} and L_{2a+3} (odd = true, anchor l_{3,0}) modulo 7^{a+1}, K5 family.
/// Certifies L_low == x L_high and reports L_high == y L_low as well.
XSolution solve_x_alpha(EllEngine& engine, int alpha, bool odd);

/// The mod-49 values of L_1, L_2, L_3 (K5), symbolic and on q-series windows.
Report lemma_mod49_report(EllEngine& engine, std::int64_t through);

/// U_B(U_A5(t)) == 4t and U_A5(U_B((p0+p1)t^3)) == 4(p0+p1)t^3 modulo 7.
Report mod7_sanity_report(EllEngine& engine);

}  // namespace diamond7
