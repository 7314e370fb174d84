#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "diamond7/eta.hpp"
#include "diamond7/evaluate.hpp"
#include "diamond7/module_elem.hpp"
#include "diamond7/report.hpp"

namespace diamond7 {

enum class OperatorTag { A3, A5, B };
enum class BasisFn { P0, P1, ONE, P0_PLUS_P1 };
enum class Origin { SEED, FORWARD, BACKWARD, SOLVED };

std::string_view op_label(OperatorTag op);
OperatorTag parse_op(std::string_view s);
std::string_view basis_label(BasisFn b);  // "p0", "p1", "1", "p0+p1"
BasisFn parse_basis(std::string_view s);
std::string_view origin_label(Origin o);
BasisFn basis_of(Out o);

/// Weight multiplied in before U_7: A3, A5 eta quotients, or 1 for B.
EtaQuotientSpec weight_spec(OperatorTag op);

/// U_X(u t^k) = rhs.
struct Relation {
  OperatorTag op = OperatorTag::B;
  BasisFn basis = BasisFn::ONE;
  std::int64_t k = 0;
  ModuleElem rhs;
  Origin origin = Origin::SEED;
  /// Highest q-exponent through which rhs was checked against U_7 directly
  /// (-1 when never checked).
  std::int64_t verified_through = -1;

  std::string id() const;
};

/// One displayed coefficient mantissa * 7^e7 of t^power in component `out`.
struct RelationTerm {
  Out out;
  std::int64_t power;
  BigInt mantissa;
  std::int64_t e7;
  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

/// A relation as stored in the data file.
struct RelationRecord {
  OperatorTag op;
  BasisFn basis;
  std::int64_t k;
  std::vector<RelationTerm> terms;

  ModuleElem to_module() const;
  static RelationRecord from_relation(const Relation& r);
  friend bool operator==(const RelationRecord&, const RelationRecord&) = default;
};

/// Parses and validates the relation data file (SchemaError on any defect).
std::vector<RelationRecord> parse_relation_file(const std::string& text);
/// Canonical serialization; parse/serialize round-trips bit-exactly.
std::string serialize_relation_file(const std::vector<RelationRecord>& records);
/// FNV-1a 64-bit checksum as 16 hex digits.
std::string checksum_hex(const std::string& bytes);

/// The relation data compiled into the library.
const std::string& embedded_seed_text();

/// Offsets of the printed valuation shape: t-power n of output j satisfies
/// n >= ceil((k + sigma)/7) and ord_7(coefficient) >= floor((7n - k + gamma)/4).
struct ShapeOffsets {
  std::int64_t sigma;
  std::int64_t gamma;
};
struct ValuationShape {
  /// nullopt: the component must vanish.
  std::array<std::optional<ShapeOffsets>, 3> per_out;
};
ValuationShape shape_for(OperatorTag op, BasisFn basis);

/// Checks a relation's coefficients against a shape. Under a modular
/// precision, coefficients that vanish mod 7^r are certified only to order r;
/// such checks pass but are counted as capped in the details.
Report check_valuation_shape(const Relation& rel, const ValuationShape& shape,
                             const Precision& prec = Precision::exact());

/// U_7(weight(op) * basis * t^k) as a q-series through q^through.
QSeries relation_lhs(OperatorTag op, BasisFn basis, std::int64_t k, std::int64_t through);

/// Solves f = sum over n in [n_lo, n_hi] of (c0 p0 + c1 p1 + c2) t^n exactly.
ModuleElem decompose_into_module(const QSeries& f, std::int64_t n_lo, std::int64_t n_hi,
                                 std::int64_t slack = 25);

class RelationStore {
 public:
  struct Config {
    Precision precision = Precision::exact();
    /// Window for the q-expansion check of every derived relation; <= 0 disables.
    std::int64_t verify_through = 60;
  };

  RelationStore(const std::vector<RelationRecord>& seeds, Config config);
  /// Store seeded from the embedded data file.
  static std::shared_ptr<RelationStore> standard(Config config);

  const Config& config() const { return config_; }

  /// Seed relations in file order.
  std::vector<std::shared_ptr<const Relation>> seeds() const;

  /// Cached relation, extending forward or backward (and verifying) on demand.
  std::shared_ptr<const Relation> get(OperatorTag op, BasisFn basis, std::int64_t k);

  /// U_B((p0 + p1) t^k), asserting the improved p0 t-order bound.
  Relation combined_p0p1(std::int64_t k);

  /// Direct q-expansion check of a relation.
  Report verify(const Relation& rel, std::int64_t through);

  /// Lowest / highest seeded power for (op, basis).
  std::pair<std::int64_t, std::int64_t> seed_range(OperatorTag op, BasisFn basis) const;

 private:
  using Key = std::tuple<int, int, std::int64_t>;
  static Key key(OperatorTag op, BasisFn basis, std::int64_t k) {
    return {static_cast<int>(op), static_cast<int>(basis), k};
  }
  std::shared_ptr<const Relation> lookup(const Key& k) const;
  std::shared_ptr<const Relation> insert(std::shared_ptr<const Relation> r);
  ModuleEvaluator& evaluator(std::int64_t through);

  Config config_;
  std::vector<Key> seed_order_;
  std::map<std::pair<int, int>, std::pair<std::int64_t, std::int64_t>> ranges_;
  mutable std::shared_mutex mu_;
  std::map<Key, std::shared_ptr<const Relation>> cache_;
  std::mutex eval_mu_;
  std::map<std::int64_t, std::unique_ptr<ModuleEvaluator>> evaluators_;
  std::mutex extend_mu_;
};

}  // namespace diamond7
