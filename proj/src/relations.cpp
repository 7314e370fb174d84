#include "diamond7/relations.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "diamond7/errors.hpp"
#include "diamond7/modeq.hpp"

namespace diamond7 {

using nlohmann::json;

std::string_view op_label(OperatorTag op) {
  switch (op) {
    case OperatorTag::A3: return "A3";
    case OperatorTag::A5: return "A5";
    case OperatorTag::B: return "B";
  }
  return "?";
}

OperatorTag parse_op(std::string_view s) {
  if (s == "A3") return OperatorTag::A3;
  if (s == "A5") return OperatorTag::A5;
  if (s == "B") return OperatorTag::B;
  throw SchemaError("unknown operator '" + std::string(s) + "'");
}

std::string_view basis_label(BasisFn b) {
  switch (b) {
    case BasisFn::P0: return "p0";
    case BasisFn::P1: return "p1";
    case BasisFn::ONE: return "1";
    case BasisFn::P0_PLUS_P1: return "p0+p1";
  }
  return "?";
}

BasisFn parse_basis(std::string_view s) {
  if (s == "p0") return BasisFn::P0;
  if (s == "p1") return BasisFn::P1;
  if (s == "1") return BasisFn::ONE;
  if (s == "p0+p1") return BasisFn::P0_PLUS_P1;
  throw SchemaError("unknown basis '" + std::string(s) + "'");
}

std::string_view origin_label(Origin o) {
  switch (o) {
    case Origin::SEED: return "SEED";
    case Origin::FORWARD: return "FORWARD";
    case Origin::BACKWARD: return "BACKWARD";
    case Origin::SOLVED: return "SOLVED";
  }
  return "?";
}

BasisFn basis_of(Out o) {
  switch (o) {
    case Out::P0: return BasisFn::P0;
    case Out::P1: return BasisFn::P1;
    case Out::ONE: return BasisFn::ONE;
  }
  return BasisFn::ONE;
}

EtaQuotientSpec weight_spec(OperatorTag op) {
  switch (op) {
    case OperatorTag::A3: return specs::a3();
    case OperatorTag::A5: return specs::a5();
    case OperatorTag::B: return EtaQuotientSpec();
  }
  return EtaQuotientSpec();
}

std::string Relation::id() const {
  return std::string(op_label(op)) + "/" + std::string(basis_label(basis)) + "/" + std::to_string(k);
}

// ---------------------------------------------------------------- data file

ModuleElem RelationRecord::to_module() const {
  ModuleElem m;
  for (const auto& t : terms) {
    m[t.out].add_term(t.mantissa * pow7(static_cast<unsigned>(t.e7)), t.power);
  }
  return m;
}

RelationRecord RelationRecord::from_relation(const Relation& r) {
  RelationRecord rec{r.op, r.basis, r.k, {}};
  for (Out o : kOuts) {
    const TPoly& p = r.rhs[o];
    if (p.is_zero()) continue;
    for (std::int64_t n = p.low(); n <= p.high(); ++n) {
      if (sgn(p.coeff(n)) == 0) continue;
      auto [m, e] = split_seven_power(p.coeff(n));
      rec.terms.push_back({o, n, m, e});
    }
  }
  return rec;
}

namespace {

[[noreturn]] void schema_fail(std::size_t index, const std::string& what) {
  throw SchemaError("relation #" + std::to_string(index) + ": " + what);
}

std::int64_t int_field(const json& obj, const char* name, std::size_t index) {
  if (!obj.contains(name)) schema_fail(index, std::string("missing field '") + name + "'");
  const json& v = obj.at(name);
  if (!v.is_number_integer()) schema_fail(index, std::string("field '") + name + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string string_field(const json& obj, const char* name, std::size_t index) {
  if (!obj.contains(name)) schema_fail(index, std::string("missing field '") + name + "'");
  const json& v = obj.at(name);
  if (!v.is_string()) schema_fail(index, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

void expect_keys(const json& obj, std::initializer_list<const char*> keys, std::size_t index) {
  if (!obj.is_object()) schema_fail(index, "expected an object");
  if (obj.size() != keys.size()) schema_fail(index, "unexpected or missing fields");
  for (const char* k : keys) {
    if (!obj.contains(k)) schema_fail(index, std::string("missing field '") + k + "'");
  }
}

}  // namespace

std::vector<RelationRecord> parse_relation_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("relation file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw SchemaError("relation file must be a JSON array");
  std::vector<RelationRecord> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& r = doc[i];
    expect_keys(r, {"op", "basis", "k", "terms"}, i);
    RelationRecord rec{};
    try {
      rec.op = parse_op(string_field(r, "op", i));
      rec.basis = parse_basis(string_field(r, "basis", i));
    } catch (const SchemaError& e) {
      schema_fail(i, e.what());
    }
    if (rec.basis == BasisFn::P0_PLUS_P1) schema_fail(i, "combined basis is not a data-file basis");
    rec.k = int_field(r, "k", i);
    if (!r.at("terms").is_array()) schema_fail(i, "'terms' must be an array");
    for (const json& t : r.at("terms")) {
      expect_keys(t, {"out", "power", "mantissa", "e7"}, i);
      RelationTerm term{};
      try {
        term.out = parse_out(string_field(t, "out", i));
        term.mantissa = parse_bigint(string_field(t, "mantissa", i));
      } catch (const Error& e) {
        schema_fail(i, e.what());
      }
      term.power = int_field(t, "power", i);
      term.e7 = int_field(t, "e7", i);
      if (term.e7 < 0 || term.e7 > 4096) schema_fail(i, "e7 out of range");
      rec.terms.push_back(std::move(term));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string serialize_relation_file(const std::vector<RelationRecord>& records) {
  std::ostringstream os;
  os << "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    os << "  {\"op\": \"" << op_label(r.op) << "\", \"basis\": \"" << basis_label(r.basis)
       << "\", \"k\": " << r.k << ", \"terms\": [";
    for (std::size_t j = 0; j < r.terms.size(); ++j) {
      const auto& t = r.terms[j];
      os << (j ? ",\n" : "\n") << "    {\"out\": \"" << out_label(t.out) << "\", \"power\": " << t.power
         << ", \"mantissa\": \"" << t.mantissa.get_str() << "\", \"e7\": " << t.e7 << '}';
    }
    os << (r.terms.empty() ? "]}" : "\n  ]}");
    os << (i + 1 < records.size() ? ",\n" : "\n");
  }
  os << "]\n";
  return os.str();
}

std::string checksum_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

// ---------------------------------------------------------------- shapes

ValuationShape shape_for(OperatorTag op, BasisFn basis) {
  using O = std::optional<ShapeOffsets>;
  auto S = [](std::int64_t s, std::int64_t g) { return O(ShapeOffsets{s, g}); };
  switch (op) {
    case OperatorTag::A3:
      switch (basis) {
        case BasisFn::P0: return {{S(14, -12), S(15, -15), S(18, -15)}};
        case BasisFn::P1: return {{S(15, -11), S(14, -15), S(18, -14)}};
        case BasisFn::ONE: return {{S(14, -11), S(15, -14), S(17, -15)}};
        default: break;
      }
      break;
    case OperatorTag::A5:
      switch (basis) {
        case BasisFn::P0: return {{S(19, -20), S(19, -23), S(26, -23)}};
        case BasisFn::P1: return {{S(18, -19), S(18, -23), S(25, -22)}};
        case BasisFn::ONE: return {{S(19, -19), S(19, -22), S(26, -23)}};
        default: break;
      }
      break;
    case OperatorTag::B:
      switch (basis) {
        case BasisFn::P0: return {{S(-3, 2), S(4, -1), S(1, -1)}};
        case BasisFn::P1: return {{S(-3, 2), S(4, -1), S(1, 0)}};
        case BasisFn::ONE: return {{O(), O(), S(0, -1)}};
        case BasisFn::P0_PLUS_P1: return {{S(-1, 2), S(6, -1), S(1, -1)}};
      }
      break;
  }
  throw PreconditionError("no printed shape for this operator/basis pair");
}

Report check_valuation_shape(const Relation& rel, const ValuationShape& shape,
                             const Precision& prec) {
  Report r;
  r.subject = "valuation-shape " + rel.id();
  r.params["op"] = std::string(op_label(rel.op));
  r.params["basis"] = std::string(basis_label(rel.basis));
  r.params["k"] = rel.k;
  std::int64_t min_slack = kUnbounded;
  for (Out o : kOuts) {
    const TPoly& p = rel.rhs[o];
    const auto& sh = shape.per_out[static_cast<int>(o)];
    const std::string lbl(out_label(o));
    if (!sh) {
      r.add(lbl + " component vanishes", "zero", p.is_zero() ? "zero" : p.to_string(), p.is_zero());
      continue;
    }
    const std::int64_t n0 = ceil_div(rel.k + sh->sigma, 7);
    if (p.is_zero()) {
      r.add(lbl + " t-order", ">= " + std::to_string(n0), "empty", true);
      r.add(lbl + " 7-adic floor", "floor((7n-k" + std::string(sh->gamma >= 0 ? "+" : "") +
                                       std::to_string(sh->gamma) + ")/4)", "empty", true);
      continue;
    }
    r.add(lbl + " t-order", ">= " + std::to_string(n0), std::to_string(p.low()), p.low() >= n0);
    bool ok = true;
    std::int64_t slack = kUnbounded;
    std::string worst;
    for (std::int64_t n = p.low(); n <= p.high(); ++n) {
      const BigInt& c = p.coeff(n);
      if (sgn(c) == 0) continue;
      const std::int64_t need = floor_div(7 * n - rel.k + sh->gamma, 4);
      const std::int64_t have = seven_adic_order(c).value();
      if (have - need < slack) {
        slack = have - need;
        worst = "t^" + std::to_string(n) + ": order " + std::to_string(have) + " vs " + std::to_string(need);
      }
      if (have < need) ok = false;
    }
    min_slack = std::min(min_slack, slack);
    r.add(lbl + " 7-adic floor",
          "floor((7n-k" + std::string(sh->gamma >= 0 ? "+" : "") + std::to_string(sh->gamma) + ")/4)",
          "min slack " + std::to_string(slack) + " (" + worst + ")", ok);
  }
  r.details["min_slack"] = min_slack == kUnbounded ? json(nullptr) : json(min_slack);
  r.details["precision"] = prec.describe();
  return r;
}

// ---------------------------------------------------------------- q-expansion side

namespace {

// weight(op) * t^k expanded through a fixed window; built incrementally in k.
class LhsInputCache {
 public:
  QSeries weight_tk(OperatorTag op, std::int64_t k, std::int64_t through) {
    std::lock_guard lock(mu_);
    auto& m = cache_[{static_cast<int>(op), through}];
    auto it = m.find(k);
    if (it != m.end()) return it->second;
    QSeries s;
    auto prev = m.find(k - 1);
    if (k > 0 && prev != m.end()) {
      s = apply(specs::t(), prev->second, through);
    } else {
      s = expand(weight_spec(op) * specs::t().pow(k), through);
    }
    if (m.size() > 4096) m.clear();
    return m.emplace(k, std::move(s)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, std::int64_t>, std::map<std::int64_t, QSeries>> cache_;
};

LhsInputCache& lhs_cache() {
  static LhsInputCache c;
  return c;
}

}  // namespace

QSeries relation_lhs(OperatorTag op, BasisFn basis, std::int64_t k, std::int64_t through) {
  const std::int64_t n = 7 * through + 6;
  switch (basis) {
    case BasisFn::ONE: return u_operator(lhs_cache().weight_tk(op, k, n + 1).truncated(n), 7);
    case BasisFn::P1: return u_operator(apply(specs::p1(), lhs_cache().weight_tk(op, k, n + 1), n), 7);
    case BasisFn::P0: {
      const QSeries w = lhs_cache().weight_tk(op, k, n + 1).truncated(n);
      const QSeries num = sub(scale(apply(specs::x(), w, n), BigInt(8)), w);
      return u_operator(divexact(num, BigInt(7)), 7);
    }
    case BasisFn::P0_PLUS_P1:
      return add(relation_lhs(op, BasisFn::P0, k, through), relation_lhs(op, BasisFn::P1, k, through));
  }
  return QSeries::zero(through);
}

// ---------------------------------------------------------------- decomposition

ModuleElem decompose_into_module(const QSeries& f, std::int64_t n_lo, std::int64_t n_hi,
                                 std::int64_t slack) {
  if (n_hi < n_lo) throw PreconditionError("empty power window");
  const std::int64_t powers = n_hi - n_lo + 1;
  const std::int64_t unknowns = 3 * powers;
  const std::int64_t e0 = std::min<std::int64_t>(n_lo - 1, f.is_zero() ? n_lo - 1 : f.min_exp());
  const std::int64_t through = e0 + unknowns + slack - 1;
  if (f.valid_through() < through) {
    throw UnderdeterminedWindow("series known through q^" + std::to_string(f.valid_through()) +
                                " but the solve needs q^" + std::to_string(through));
  }
  ModuleEvaluator ev(through);
  const std::int64_t rows = through - e0 + 1;
  // Augmented matrix [A | b] over Q.
  std::vector<std::vector<mpq_class>> a(static_cast<std::size_t>(rows),
                                         std::vector<mpq_class>(static_cast<std::size_t>(unknowns + 1)));
  for (std::int64_t col = 0; col < unknowns; ++col) {
    const Out o = kOuts[static_cast<std::size_t>(col / powers)];
    const std::int64_t n = n_lo + col % powers;
    const QSeries b = ev.basis_series(o, n);
    for (std::int64_t e = b.is_zero() ? through + 1 : b.min_exp(); e <= std::min(b.max_stored(), through); ++e) {
      if (e >= e0) a[e - e0][col] = mpq_class(b.at(e));
    }
  }
  for (std::int64_t e = e0; e <= through; ++e) a[e - e0][unknowns] = mpq_class(f.at(e));
  // Gauss-Jordan elimination.
  std::vector<std::int64_t> pivot_col;
  std::int64_t row = 0;
  for (std::int64_t col = 0; col < unknowns && row < rows; ++col) {
    std::int64_t piv = -1;
    for (std::int64_t r = row; r < rows; ++r) {
      if (sgn(a[r][col]) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    const mpq_class inv = 1 / a[row][col];
    for (std::int64_t c = col; c <= unknowns; ++c) a[row][c] *= inv;
    for (std::int64_t r = 0; r < rows; ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      const mpq_class factor = a[r][col];
      for (std::int64_t c = col; c <= unknowns; ++c) {
        if (sgn(a[row][c]) != 0) a[r][c] -= factor * a[row][c];
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::int64_t r = row; r < rows; ++r) {
    if (sgn(a[r][unknowns]) != 0) {
      throw NoSolution("series is not in the span of the candidate basis (equation for q^" +
                       std::to_string(e0 + r) + " inconsistent)");
    }
  }
  if (static_cast<std::int64_t>(pivot_col.size()) < unknowns) {
    throw UnderdeterminedWindow("candidate basis is not independent on the window");
  }
  ModuleElem m;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    const std::int64_t col = pivot_col[i];
    mpq_class v = a[i][unknowns];
    v.canonicalize();
    if (v.get_den() != 1) {
      throw NonIntegralSolution("coefficient of " + std::string(out_label(kOuts[col / powers])) + " t^" +
                                std::to_string(n_lo + col % powers) + " is " + v.get_str());
    }
    m[kOuts[static_cast<std::size_t>(col / powers)]].add_term(v.get_num(), n_lo + col % powers);
  }
  if (auto d = first_difference(ev.evaluate(m), f, through)) {
    throw NoSolution("residual nonzero at q^" + std::to_string(d->exponent));
  }
  return m;
}

// ---------------------------------------------------------------- store

RelationStore::RelationStore(const std::vector<RelationRecord>& seeds, Config config)
    : config_(config) {
  std::map<std::pair<int, int>, std::set<std::int64_t>> powers;
  for (const auto& rec : seeds) {
    auto rel = std::make_shared<Relation>();
    rel->op = rec.op;
    rel->basis = rec.basis;
    rel->k = rec.k;
    rel->rhs = rec.to_module().reduced(config_.precision);
    rel->origin = Origin::SEED;
    const Key kk = key(rec.op, rec.basis, rec.k);
    if (cache_.count(kk)) throw SchemaError("duplicate relation " + rel->id());
    cache_[kk] = rel;
    seed_order_.push_back(kk);
    powers[{static_cast<int>(rec.op), static_cast<int>(rec.basis)}].insert(rec.k);
  }
  for (OperatorTag op : {OperatorTag::A3, OperatorTag::A5, OperatorTag::B}) {
    for (BasisFn b : {BasisFn::P0, BasisFn::P1, BasisFn::ONE}) {
      const auto pk = std::make_pair(static_cast<int>(op), static_cast<int>(b));
      auto it = powers.find(pk);
      const std::string name = std::string(op_label(op)) + "/" + std::string(basis_label(b));
      if (it == powers.end()) throw CoverageError("no relations for " + name);
      const auto& s = it->second;
      if (s.size() < 7 || *s.rbegin() - *s.begin() + 1 != static_cast<std::int64_t>(s.size())) {
        throw CoverageError(name + " needs at least 7 consecutive powers");
      }
      ranges_[pk] = {*s.begin(), *s.rbegin()};
    }
  }
}

std::shared_ptr<RelationStore> RelationStore::standard(Config config) {
  return std::make_shared<RelationStore>(parse_relation_file(embedded_seed_text()), config);
}

std::vector<std::shared_ptr<const Relation>> RelationStore::seeds() const {
  std::vector<std::shared_ptr<const Relation>> out;
  std::shared_lock lock(mu_);
  for (const auto& k : seed_order_) out.push_back(cache_.at(k));
  return out;
}

std::pair<std::int64_t, std::int64_t> RelationStore::seed_range(OperatorTag op, BasisFn basis) const {
  return ranges_.at({static_cast<int>(op), static_cast<int>(basis)});
}

std::shared_ptr<const Relation> RelationStore::lookup(const Key& k) const {
  std::shared_lock lock(mu_);
  auto it = cache_.find(k);
  return it == cache_.end() ? nullptr : it->second;
}

std::shared_ptr<const Relation> RelationStore::insert(std::shared_ptr<const Relation> r) {
  std::unique_lock lock(mu_);
  auto [it, fresh] = cache_.emplace(key(r->op, r->basis, r->k), r);
  return it->second;
}

ModuleEvaluator& RelationStore::evaluator(std::int64_t through) {
  std::lock_guard lock(eval_mu_);
  auto& e = evaluators_[through];
  if (!e) e = std::make_unique<ModuleEvaluator>(through);
  return *e;
}

Report RelationStore::verify(const Relation& rel, std::int64_t through) {
  Report r;
  r.subject = "relation " + rel.id();
  std::int64_t window = through;
  if (config_.precision.degree_capped()) window = std::min(window, config_.precision.max_degree);
  r.params["through"] = window;
  r.params["precision"] = config_.precision.describe();
  QSeries lhs = relation_lhs(rel.op, rel.basis, rel.k, window);
  QSeries rhs = evaluator(window).evaluate(rel.rhs);
  if (!config_.precision.is_exact()) {
    lhs = reduce_mod(lhs, config_.precision.modulus());
    rhs = reduce_mod(rhs, config_.precision.modulus());
  }
  auto d = first_difference(lhs, rhs, window);
  const std::int64_t checked = std::min({lhs.valid_through(), rhs.valid_through(), window});
  r.add("U_7 expansion equals module form", "equal through q^" + std::to_string(window),
        d ? "differ at q^" + std::to_string(d->exponent) + " (" + d->left.get_str() + " vs " +
                d->right.get_str() + ")"
          : "equal through q^" + std::to_string(checked),
        !d && checked >= window);
  return r;
}

std::shared_ptr<const Relation> RelationStore::get(OperatorTag op, BasisFn basis, std::int64_t k) {
  if (basis == BasisFn::P0_PLUS_P1) {
    throw PreconditionError("use combined_p0p1 for the combined basis");
  }
  if (auto hit = lookup(key(op, basis, k))) return hit;
  std::lock_guard ext(extend_mu_);
  if (auto hit = lookup(key(op, basis, k))) return hit;
  const auto [lo, hi] = seed_range(op, basis);
  const bool forward = k > hi;
  // Walk from the nearest cached power toward k.
  std::int64_t cur = k;
  if (forward) {
    while (!lookup(key(op, basis, cur - 1))) --cur;
  } else {
    while (!lookup(key(op, basis, cur + 1))) ++cur;
  }
  std::shared_ptr<const Relation> last;
  for (std::int64_t kk = cur; forward ? kk <= k : kk >= k; kk += forward ? 1 : -1) {
    auto rel = std::make_shared<Relation>();
    rel->op = op;
    rel->basis = basis;
    rel->k = kk;
    std::array<ModuleElem, 7> imgs;
    if (forward) {
      for (int l = 0; l < 7; ++l) imgs[l] = lookup(key(op, basis, kk - 7 + l))->rhs;
      rel->rhs = recurrence_rhs(imgs, config_.precision);
      rel->origin = Origin::FORWARD;
    } else {
      for (int l = 0; l < 7; ++l) imgs[l] = lookup(key(op, basis, kk + 1 + l))->rhs;
      rel->rhs = recurrence_backward(imgs, config_.precision);
      rel->origin = Origin::BACKWARD;
    }
    if (config_.verify_through > 0) {
      Report rep = verify(*rel, config_.verify_through);
      if (!rep.pass()) {
        throw VerificationFailure("derived relation " + rel->id() + " failed its q-expansion check: " +
                                  rep.checks.front().observed);
      }
      rel->verified_through = rep.params["through"].get<std::int64_t>();
    }
    last = insert(rel);
  }
  return last;
}

Relation RelationStore::combined_p0p1(std::int64_t k) {
  Relation r;
  r.op = OperatorTag::B;
  r.basis = BasisFn::P0_PLUS_P1;
  r.k = k;
  auto a = get(OperatorTag::B, BasisFn::P0, k);
  auto b = get(OperatorTag::B, BasisFn::P1, k);
  r.rhs = (a->rhs + b->rhs).reduced(config_.precision);
  r.origin = std::max(a->origin, b->origin);
  r.verified_through = std::min(a->verified_through, b->verified_through);
  const std::int64_t n0 = ceil_div(k - 1, 7);
  const TPoly& c0 = r.rhs[Out::P0];
  if (!c0.is_zero() && c0.low() < n0) {
    throw ShapeViolation("U_B((p0+p1)t^" + std::to_string(k) + ") has p0 term t^" +
                         std::to_string(c0.low()) + " below the bound t^" + std::to_string(n0));
  }
  return r;
}

}  // namespace diamond7
