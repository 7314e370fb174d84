#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "diamond7/module_elem.hpp"
#include "diamond7/qseries.hpp"
#include "diamond7/report.hpp"
#include "diamond7/tpoly.hpp"

namespace diamond7 {

/// One stored term of the table: coefficient mantissa * 7^e7 on t^power in a_j.
struct ModEqEntry {
  int j;
  int power;
  long mantissa;
  int e7;
};

/// The seven polynomials a_0..a_6 of the degree-7 modular equation
///   t(tau)^7 = sum_{l=0}^{6} a_l(t(7 tau)) t(tau)^l.
class ModEqTable {
 public:
  /// The built-in table. Its checksum and shape invariants are asserted on
  /// first use; a mismatch throws DivisibilityViolation or VerificationFailure.
  static const ModEqTable& standard();

  /// A table from arbitrary entries, unvalidated (fault-injection use).
  static ModEqTable from_entries(const std::vector<ModEqEntry>& entries);

  const TPoly& a(int l) const;
  const std::vector<ModEqEntry>& entries() const { return entries_; }

  /// FNV-1a of the canonical entry text.
  std::uint64_t checksum() const;

  /// Asserts a_0 = t, every a_l divisible by t, and the 7-power shape.
  void validate() const;

  static constexpr std::uint64_t kStandardChecksum = 0xcc7726a78e40912eULL;

 private:
  std::vector<ModEqEntry> entries_;
  std::array<TPoly, 7> a_;
};

/// a_l of the standard table; throws PreconditionError when l is outside 0..6.
const TPoly& a_poly(int l);

/// Exponent floor((7l + j - 4)/4) of the table shape.
std::int64_t shape_exponent(int j, int l);

/// coeff_{t^l}(a_j) / 7^shape_exponent(j, l); DivisibilityViolation on a
/// broken shape.
BigInt s_coeff(int j, int l, const ModEqTable& table = ModEqTable::standard());

/// t^7 - sum a_l(t(7 tau)) t^l through q^through.
Report verify_modular_equation(std::int64_t through,
                               const ModEqTable& table = ModEqTable::standard());

/// sum_{l=0}^{6} a_l(t) images[l], where images[l] is the image at power k-7+l.
ModuleElem recurrence_rhs(const std::array<ModuleElem, 7>& images, const Precision& prec,
                          const ModEqTable& table = ModEqTable::standard());

/// Image at power k from images at k+1..k+7 (higher[i] is the image at k+1+i):
/// t^{-1} (image(k+7) - sum_{l=1}^{6} a_l image(k+l)).
ModuleElem recurrence_backward(const std::array<ModuleElem, 7>& higher, const Precision& prec,
                               const ModEqTable& table = ModEqTable::standard());

/// Checks the facts about the table used in place of the undefined a_7 of the
/// mod-49 lemma: 49 divides the t-coefficient of a_6, and the full shape.
Report a7_surrogate_report(const ModEqTable& table = ModEqTable::standard());

}  // namespace diamond7
