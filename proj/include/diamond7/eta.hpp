#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "diamond7/qseries.hpp"
#include "diamond7/residue_series.hpp"

namespace diamond7 {

struct EtaFactor {
  std::int64_t scale;
  std::int64_t exponent;
  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// Formal product of eta(b tau)^r. Without the prefactor flag it is the pure
/// J-product prod (1 - q^{b n})^r.
class EtaQuotientSpec {
 public:
  EtaQuotientSpec() = default;
  EtaQuotientSpec(std::vector<EtaFactor> factors, bool with_prefactor = true);

  /// Parses the canonical text form "b1^r1 * b2^r2 ... [noprefactor]".
  static EtaQuotientSpec parse(std::string_view text);
  std::string to_string() const;

  const std::vector<EtaFactor>& factors() const { return factors_; }
  bool with_prefactor() const { return with_prefactor_; }

  /// Exponent of the q prefactor: sum b r / 24 with the flag, 0 without.
  /// Throws FractionalExponent when the sum is not a multiple of 24.
  std::int64_t q_shift() const;

  /// Product of two specs (factors merged). Both must share the flag.
  EtaQuotientSpec operator*(const EtaQuotientSpec& other) const;
  /// Spec raised to an integer power.
  EtaQuotientSpec pow(std::int64_t e) const;

  friend bool operator==(const EtaQuotientSpec&, const EtaQuotientSpec&) = default;

 private:
  std::vector<EtaFactor> factors_;
  bool with_prefactor_ = true;
};

/// Exact expansion valid through q^through.
QSeries expand(const EtaQuotientSpec& spec, std::int64_t through);
/// f times the eta quotient, valid through min(f.vt + shift, through).
QSeries apply(const EtaQuotientSpec& spec, const QSeries& f, std::int64_t through = kUnbounded);

ResidueSeries expand_residue(const EtaQuotientSpec& spec, std::uint64_t modulus,
                             std::int64_t through);
ResidueSeries apply_residue(const EtaQuotientSpec& spec, const ResidueSeries& f,
                            std::int64_t through = kUnbounded);

enum class GeneratorName {
  T,
  P0,
  P1,
  A3,
  A5,
  B,
  PREFACTOR_ODD_3,
  PREFACTOR_EVEN_3,
  PREFACTOR_ODD_5,
  PREFACTOR_EVEN_5,
};

std::string_view generator_label(GeneratorName name);
GeneratorName parse_generator(std::string_view label);

namespace specs {
/// eta_7^4 / eta_1^4
EtaQuotientSpec t();
/// eta_2^7 eta_7 / (eta_1^7 eta_14); p0 = (8 X - 1) / 7
EtaQuotientSpec x();
/// eta_2^4 eta_7^4 / (eta_1^4 eta_14^4)
EtaQuotientSpec p1();
/// eta_2^3 eta_49^10 / (eta_1^10 eta_98^3)
EtaQuotientSpec a3();
/// eta_2^5 eta_49^16 / (eta_1^16 eta_98^5)
EtaQuotientSpec a5();
}  // namespace specs

/// Memoized exact expansion of a named generator through q^through.
QSeries generator(GeneratorName name, std::int64_t through);

/// Residue expansion. For P0 the modulus times 7 must stay below 2^62.
ResidueSeries generator_residue(GeneratorName name, std::uint64_t modulus, std::int64_t through);

/// D_k = J_2^k / J_1^{3k+1}: coefficient of q^n is d_k(n).
QSeries dk_series(std::int64_t k, std::int64_t n_max);
ResidueSeries dk_series_residue(std::int64_t k, std::int64_t n_max, std::uint64_t modulus);

}  // namespace diamond7
