#include "diamond7/cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "diamond7/congruence.hpp"
#include "diamond7/ell.hpp"
#include "diamond7/errors.hpp"
#include "diamond7/eta.hpp"
#include "diamond7/evaluate.hpp"
#include "diamond7/modeq.hpp"
#include "diamond7/relations.hpp"

namespace diamond7::cli {

using nlohmann::ordered_json;

bool Certificate::pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass(); });
}

std::size_t Certificate::total_checks() const {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.checks.size();
  return n;
}

std::size_t Certificate::failed_checks() const {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.failures();
  return n;
}

ordered_json Certificate::to_json() const {
  ordered_json j;
  j["tool"] = tool;
  j["version"] = version;
  j["seed_checksum"] = seed_checksum;
  j["command"] = command;
  j["params"] = params;
  j["modulus"] = modulus;
  j["status"] = pass() ? "pass" : "fail";
  j["checks_total"] = total_checks();
  j["checks_failed"] = failed_checks();
  j["reports"] = ordered_json::array();
  for (const auto& r : reports) j["reports"].push_back(r.to_json());
  j["wall_time_seconds"] = wall_time_seconds;
  return j;
}

Certificate Certificate::from_json(const ordered_json& j) {
  Certificate c;
  c.tool = j.at("tool").get<std::string>();
  c.version = j.at("version").get<std::string>();
  c.seed_checksum = j.at("seed_checksum").get<std::string>();
  c.command = j.at("command").get<std::string>();
  c.params = j.at("params");
  c.modulus = j.at("modulus").get<std::string>();
  for (const auto& r : j.at("reports")) c.reports.push_back(Report::from_json(r));
  c.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  const bool status = j.at("status").get<std::string>() == "pass";
  if (status != c.pass() || j.at("checks_total").get<std::size_t>() != c.total_checks() ||
      j.at("checks_failed").get<std::size_t>() != c.failed_checks()) {
    throw SchemaError("certificate summary disagrees with its reports");
  }
  return c;
}

std::string Certificate::to_text() const {
  std::ostringstream os;
  os << tool << ' ' << version << " | " << command << " | seeds " << seed_checksum << " | modulus "
     << modulus << '\n';
  if (!params.empty()) os << "params " << params.dump() << '\n';
  for (const auto& r : reports) os << r.to_text();
  os << "overall: " << (pass() ? "PASS" : "FAIL") << " (" << total_checks() - failed_checks() << '/'
     << total_checks() << " checks, " << reports.size() << " reports)\n";
  return os.str();
}

namespace {

struct Globals {
  std::int64_t order = -1;
  std::string seed_file;
  unsigned mod_cap = 0;
  int threads = 1;
  std::int64_t verify_derived = 30;
  std::string format = "text";
  std::string out;
};

// Exact symbolic L_alpha is only affordable this far.
constexpr int kExactAlphaMax = 3;
// Largest exponent whose modulus fits the residue arithmetic.
constexpr int kResidueExponentMax = 22;

class Context {
 public:
  explicit Context(const Globals& g) : g_(g) {
    if (g_.seed_file.empty()) {
      seed_text_ = embedded_seed_text();
    } else {
      std::ifstream in(g_.seed_file, std::ios::binary);
      if (!in) throw PreconditionError("cannot read seed file " + g_.seed_file);
      std::ostringstream ss;
      ss << in.rdbuf();
      seed_text_ = ss.str();
    }
  }

  const Globals& globals() const { return g_; }
  const std::string& seed_text() const { return seed_text_; }
  std::string checksum() const { return checksum_hex(seed_text_); }
  Precision precision() const {
    return g_.mod_cap == 0 ? Precision::exact() : Precision::mod7(g_.mod_cap);
  }
  std::string modulus_label() const {
    return g_.mod_cap == 0 ? "exact" : "7^" + std::to_string(g_.mod_cap);
  }
  std::int64_t order(std::int64_t fallback) const { return g_.order >= 0 ? g_.order : fallback; }

  std::shared_ptr<RelationStore> store() {
    if (!store_) {
      RelationStore::Config cfg;
      cfg.precision = precision();
      cfg.verify_through = g_.verify_derived;
      store_ = std::make_shared<RelationStore>(parse_relation_file(seed_text_), cfg);
    }
    return store_;
  }

  EllEngine& engine() {
    if (!engine_) engine_ = std::make_shared<EllEngine>(store());
    return *engine_;
  }

  // Refuses exact symbolic work beyond L_{kExactAlphaMax}.
  void require_symbolic(int highest_alpha) const {
    if (g_.mod_cap == 0 && highest_alpha > kExactAlphaMax) {
      throw InsufficientPrecision("exact L_" + std::to_string(highest_alpha) +
                                      " is beyond the exact budget; pass --mod-cap R",
                                  highest_alpha);
    }
  }

 private:
  Globals g_;
  std::string seed_text_;
  std::shared_ptr<RelationStore> store_;
  std::shared_ptr<EllEngine> engine_;
};

std::vector<Report> run_tasks(const std::vector<std::function<Report()>>& tasks, int threads) {
  std::vector<Report> out(tasks.size());
  std::vector<std::exception_ptr> errs(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= tasks.size()) return;
      try {
        out[i] = tasks[i]();
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  const std::size_t n =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), tasks.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

ordered_json series_json(const QSeries& f, std::int64_t from, std::int64_t through) {
  ordered_json c = ordered_json::array();
  for (std::int64_t e = from; e <= through; ++e) c.push_back(f.at(e).get_str());
  return c;
}

std::string record_line(const Relation& rel) {
  const auto file = ordered_json::parse(serialize_relation_file({RelationRecord::from_relation(rel)}));
  return file.at(0).dump();
}

// ---------------------------------------------------------------- commands

Report cmd_expand(Context& ctx, const std::string& text, std::int64_t through) {
  const EtaQuotientSpec spec = EtaQuotientSpec::parse(text);
  QSeries f = expand(spec, through);
  if (ctx.globals().mod_cap != 0) f = reduce_mod(f, ctx.precision().modulus());
  Report r;
  r.subject = "expand " + spec.to_string();
  r.params["through"] = through;
  r.params["q_shift"] = spec.q_shift();
  r.add("integral q-expansion", "coefficients through q^" + std::to_string(through),
        "known through q^" + std::to_string(f.valid_through()), f.valid_through() >= through);
  const std::int64_t from = f.is_zero() ? 0 : std::min<std::int64_t>(0, f.min_exp());
  r.details["first_exponent"] = from;
  r.details["coefficients"] = series_json(f, from, std::min(through, f.valid_through()));
  return r;
}

std::vector<Report> cmd_verify_appendix(Context& ctx, std::int64_t through) {
  auto store = ctx.store();
  const Precision prec = ctx.precision();
  std::vector<std::function<Report()>> tasks;
  for (const auto& rel : store->seeds()) {
    tasks.push_back([store, rel, prec, through] {
      Report r = store->verify(*rel, through);
      r.absorb(check_valuation_shape(*rel, shape_for(rel->op, rel->basis), prec), "shape: ");
      return r;
    });
  }
  std::vector<Report> out = run_tasks(tasks, ctx.globals().threads);
  const auto passing = std::count_if(out.begin(), out.end(), [](const Report& r) { return r.pass(); });
  Report summary;
  summary.subject = "appendix summary";
  summary.params["through"] = through;
  summary.add("relations verified", std::to_string(out.size()) + "/" + std::to_string(out.size()),
              std::to_string(passing) + "/" + std::to_string(out.size()),
              passing == static_cast<std::ptrdiff_t>(out.size()));
  out.push_back(summary);
  return out;
}

std::vector<Report> cmd_verify_modeq(std::int64_t through) {
  return {verify_modular_equation(through), a7_surrogate_report()};
}

Report describe_relation(Context& ctx, const Relation& rel, std::int64_t through) {
  Report r = ctx.store()->verify(rel, through);
  r.details["origin"] = std::string(origin_label(rel.origin));
  r.details["rhs"] = rel.rhs.to_display_string();
  r.details["record"] = record_line(rel);
  return r;
}

std::vector<Report> cmd_relation_get(Context& ctx, OperatorTag op, BasisFn basis, std::int64_t k,
                                     std::int64_t through) {
  auto store = ctx.store();
  if (basis == BasisFn::P0_PLUS_P1) {
    const Relation rel = store->combined_p0p1(k);
    Report r = describe_relation(ctx, rel, through);
    r.absorb(check_valuation_shape(rel, shape_for(op, basis), ctx.precision()), "shape: ");
    return {r};
  }
  const auto rel = store->get(op, basis, k);
  Report r = describe_relation(ctx, *rel, through);
  r.absorb(check_valuation_shape(*rel, shape_for(op, basis), ctx.precision()), "shape: ");
  return {r};
}

// Forward recurrence over k-7..k-1 and backward over k+1..k+7 both reproduce
// every interior image.
Report recurrence_round_trip(Context& ctx, OperatorTag op, BasisFn basis, std::int64_t lo,
                             std::int64_t hi) {
  auto store = ctx.store();
  const Precision prec = ctx.precision();
  Report r;
  r.subject = "recurrence " + std::string(op_label(op)) + "/" + std::string(basis_label(basis));
  r.params["k_min"] = lo;
  r.params["k_max"] = hi;
  std::map<std::int64_t, ModuleElem> img;
  for (std::int64_t k = lo; k <= hi; ++k) img[k] = store->get(op, basis, k)->rhs.reduced(prec);
  std::int64_t fwd = 0, bwd = 0, bad_fwd = 0, bad_bwd = 0;
  for (std::int64_t k = lo + 7; k <= hi; ++k) {
    std::array<ModuleElem, 7> in;
    for (int l = 0; l < 7; ++l) in[l] = img[k - 7 + l];
    ++fwd;
    if (!(recurrence_rhs(in, prec).reduced(prec) == img[k])) ++bad_fwd;
  }
  for (std::int64_t k = lo; k + 7 <= hi; ++k) {
    std::array<ModuleElem, 7> in;
    for (int i = 0; i < 7; ++i) in[i] = img[k + 1 + i];
    ++bwd;
    if (!(recurrence_backward(in, prec).reduced(prec) == img[k])) ++bad_bwd;
  }
  r.add("forward recurrence reproduces images", "0 mismatches",
        std::to_string(bad_fwd) + " of " + std::to_string(fwd), bad_fwd == 0);
  r.add("backward recurrence reproduces images", "0 mismatches",
        std::to_string(bad_bwd) + " of " + std::to_string(bwd), bad_bwd == 0);
  return r;
}

std::vector<Report> cmd_relation_extend(Context& ctx, std::optional<OperatorTag> op_filter,
                                        std::optional<BasisFn> basis_filter, std::int64_t k_min,
                                        std::int64_t k_max, std::int64_t through) {
  if (k_max < k_min) throw PreconditionError("--k-max must be at least --k-min");
  auto store = ctx.store();
  const Precision prec = ctx.precision();
  std::vector<std::pair<OperatorTag, BasisFn>> pairs;
  for (OperatorTag op : {OperatorTag::A3, OperatorTag::A5, OperatorTag::B}) {
    if (op_filter && *op_filter != op) continue;
    for (BasisFn b : {BasisFn::P0, BasisFn::P1, BasisFn::ONE}) {
      if (basis_filter && *basis_filter != b) continue;
      pairs.emplace_back(op, b);
    }
  }
  if (pairs.empty()) throw PreconditionError("no (operator, basis) pair selected");
  // Derivation is sequential inside the store; fill the cache first.
  for (auto [op, b] : pairs) {
    for (std::int64_t k = k_min; k <= k_max; ++k) store->get(op, b, k);
  }
  std::vector<std::function<Report()>> tasks;
  for (auto [op, b] : pairs) {
    for (std::int64_t k = k_min; k <= k_max; ++k) {
      tasks.push_back([store, prec, op, b, k, through] {
        const auto rel = store->get(op, b, k);
        Report r = store->verify(*rel, through);
        r.details["origin"] = std::string(origin_label(rel->origin));
        r.absorb(check_valuation_shape(*rel, shape_for(op, b), prec), "shape: ");
        return r;
      });
    }
  }
  std::vector<Report> out = run_tasks(tasks, ctx.globals().threads);
  for (auto [op, b] : pairs) out.push_back(recurrence_round_trip(ctx, op, b, k_min, k_max));
  return out;
}

std::vector<Report> cmd_relation_decompose(Context& ctx, OperatorTag op, BasisFn basis,
                                           std::int64_t k, std::optional<std::int64_t> lo_opt,
                                           std::optional<std::int64_t> hi_opt, std::int64_t slack) {
  if (basis == BasisFn::P0_PLUS_P1) throw PreconditionError("decompose takes p0, p1 or 1");
  auto store = ctx.store();
  const auto stored = store->get(op, basis, k);
  std::int64_t lo = 0, hi = 0;
  bool any = false;
  for (Out o : {Out::P0, Out::P1, Out::ONE}) {
    const TPoly& c = stored->rhs[o];
    if (c.is_zero()) continue;
    lo = any ? std::min(lo, c.low()) : c.low();
    hi = any ? std::max(hi, c.high()) : c.high();
    any = true;
  }
  if (!any) lo = hi = 0;
  lo = lo_opt.value_or(lo - 1);
  hi = hi_opt.value_or(hi + 1);
  if (hi < lo) throw PreconditionError("empty power window");
  std::int64_t through = lo - 1 + 3 * (hi - lo + 1) + slack + 5;
  QSeries f = relation_lhs(op, basis, k, through);
  if (!f.is_zero() && f.min_exp() < lo - 1) {
    through += lo - 1 - f.min_exp();
    f = relation_lhs(op, basis, k, through);
  }
  Relation solved;
  solved.op = op;
  solved.basis = basis;
  solved.k = k;
  solved.rhs = decompose_into_module(f, lo, hi, slack);
  solved.origin = Origin::SOLVED;
  const Precision prec = ctx.precision();
  Report r;
  r.subject = "decompose " + solved.id();
  r.params["n_lo"] = lo;
  r.params["n_hi"] = hi;
  r.params["q_window"] = through;
  const bool same = solved.rhs.reduced(prec) == stored->rhs.reduced(prec);
  r.add("solved module form equals stored relation", "equal",
        same ? "equal" : "differs from stored " + std::string(origin_label(stored->origin)), same);
  r.details["rhs"] = solved.rhs.to_display_string();
  r.details["record"] = record_line(solved);
  if (!same) r.details["stored_record"] = record_line(*stored);
  return {r};
}

ordered_json module_summary(const ModuleElem& m) {
  ordered_json j = ordered_json::object();
  for (Out o : {Out::P0, Out::P1, Out::ONE}) {
    const TPoly& c = m[o];
    ordered_json e = ordered_json::object();
    if (c.is_zero()) {
      e["zero"] = true;
    } else {
      e["low"] = c.low();
      e["high"] = c.high();
      std::optional<std::int64_t> best;
      for (const auto& x : c.coeffs()) {
        if (sgn(x) == 0) continue;
        const std::int64_t v = split_seven_power(x).second;
        best = best ? std::min(*best, v) : v;
      }
      if (best) e["min_7_order"] = *best;
    }
    j[std::string(out_label(o))] = e;
  }
  return j;
}

std::vector<Report> cmd_ell_compute(Context& ctx, Family f, int alpha, std::int64_t through) {
  if (alpha < 0) throw PreconditionError("alpha must be non-negative");
  ctx.require_symbolic(alpha);
  const ModuleElem sym = ctx.engine().symbolic(f, alpha);
  Report r;
  r.subject = "L_" + std::to_string(alpha) + " " + std::string(family_label(f));
  r.params["through"] = through;
  r.details["components"] = module_summary(sym);
  std::int64_t size = 0;
  for (Out o : {Out::P0, Out::P1, Out::ONE}) size += static_cast<std::int64_t>(sym[o].coeffs().size());
  if (size <= 400) r.details["symbolic"] = sym.to_display_string();
  const std::int64_t window = ell_input_window(alpha, through);
  if (window > kResidueEllBudget) {
    throw InsufficientPrecision("q-series cross-check of L_" + std::to_string(alpha) + " through q^" +
                                    std::to_string(through) + " exceeds the input budget",
                                window);
  }
  ModuleEvaluator ev(through);
  QSeries s = ev.evaluate(sym);
  if (window <= kExactEllBudget) {
    QSeries q = ell_qseries(f, alpha, through);
    BigInt mod;
    if (ctx.globals().mod_cap != 0) {
      mod = ctx.precision().modulus();
      s = reduce_mod(s, mod);
      q = reduce_mod(q, mod);
    }
    const auto d = first_difference(s, q, through);
    r.add("module form equals q-series iteration",
          "equal through q^" + std::to_string(through) + " (" + ctx.modulus_label() + ")",
          d ? "differ at q^" + std::to_string(d->exponent) : "equal", !d);
  } else {
    const int e = ctx.globals().mod_cap == 0
                      ? kResidueExponentMax
                      : std::min<int>(kResidueExponentMax, static_cast<int>(ctx.globals().mod_cap));
    const BigInt mod = pow7(static_cast<unsigned>(e));
    const ResidueSeries q = ell_qseries_residue(f, alpha, through, mod.get_ui());
    s = reduce_mod(s, mod);
    std::optional<std::int64_t> bad;
    for (std::int64_t n = 0; n <= through && !bad; ++n) {
      if (BigInt(static_cast<unsigned long>(q.coeff(n))) != s.at(n)) bad = n;
    }
    r.add("module form equals q-series iteration",
          "equal through q^" + std::to_string(through) + " (7^" + std::to_string(e) + ")",
          bad ? "differ at q^" + std::to_string(*bad) : "equal", !bad);
  }
  return {r};
}

std::vector<Report> cmd_ell_audit(Context& ctx, std::vector<Family> families, int alpha_max,
                                  int det_alpha_max, std::int64_t lemma_through) {
  if (alpha_max < 1) throw PreconditionError("--alpha-max must be at least 1");
  ctx.require_symbolic(2 * alpha_max);
  if (det_alpha_max > 0) ctx.require_symbolic(det_alpha_max + 2);
  EllEngine& eng = ctx.engine();
  std::vector<Report> out;
  // The engine serializes derivation, so symbolic states are built in order.
  for (Family f : families) {
    for (int a = 1; a <= alpha_max; ++a) {
      out.push_back(f == Family::K3 ? audit_structure_k3(eng, a) : audit_structure_k5(eng, a));
    }
  }
  if (std::find(families.begin(), families.end(), Family::K5) != families.end()) {
    out.push_back(lemma_mod49_report(eng, lemma_through));
    out.push_back(mod7_sanity_report(eng));
    if (det_alpha_max > 0) {
      std::shared_ptr<EllEngine> exact;
      if (ctx.globals().mod_cap != 0) {
        RelationStore::Config cfg;
        cfg.verify_through = ctx.globals().verify_derived;
        exact = std::make_shared<EllEngine>(
            std::make_shared<RelationStore>(parse_relation_file(ctx.seed_text()), cfg));
      }
      out.push_back(
          determinant_report(audit_determinants(eng, det_alpha_max, exact ? exact.get() : nullptr)));
    }
  }
  return out;
}

std::vector<Report> cmd_solve_x(Context& ctx, int alpha, const std::string& parity) {
  if (alpha < 1) throw PreconditionError("alpha must be at least 1");
  std::vector<bool> which;
  if (parity == "even" || parity == "both") which.push_back(false);
  if (parity == "odd" || parity == "both") which.push_back(true);
  ctx.require_symbolic(2 * alpha + (parity == "even" ? 2 : 3));
  std::vector<Report> out;
  for (bool odd : which) {
    XSolution s = solve_x_alpha(ctx.engine(), alpha, odd);
    s.report.details["x"] = s.x.get_str();
    out.push_back(s.report);
  }
  return out;
}

// ---------------------------------------------------------------- driver

void emit(const Certificate& cert, const Globals& g, std::ostream& out) {
  const std::string body = g.format == "json" ? cert.to_json().dump(2) + "\n" : cert.to_text();
  if (g.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw PreconditionError("cannot write " + g.out);
  f << body;
}

int classify(const std::exception_ptr& e, std::ostream& err) {
  try {
    std::rethrow_exception(e);
  } catch (const InsufficientPrecision& x) {
    err << "precision refusal: " << x.what() << " (needs " << x.required() << ")\n";
    return kPrecisionRefusal;
  } catch (const PrecisionError& x) {
    err << "precision refusal: " << x.what() << '\n';
    return kPrecisionRefusal;
  } catch (const UnderdeterminedWindow& x) {
    err << "precision refusal: " << x.what() << '\n';
    return kPrecisionRefusal;
  } catch (const std::bad_alloc&) {
    err << "resource refusal: out of memory\n";
    return kPrecisionRefusal;
  } catch (const SchemaError& x) {
    err << "input error: " << x.what() << '\n';
    return kUsage;
  } catch (const CoverageError& x) {
    err << "input error: " << x.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& x) {
    err << "input error: " << x.what() << '\n';
    return kUsage;
  } catch (const FractionalExponent& x) {
    err << "input error: " << x.what() << '\n';
    return kUsage;
  } catch (const Error& x) {
    // Verification, shape, solvability and divisibility failures.
    err << "check failed: " << x.what() << '\n';
    return kMathFailure;
  } catch (const std::exception& x) {
    err << "input error: " << x.what() << '\n';
    return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Globals g;
  CLI::App app{"Verification and audit tool for the elongated plane partition diamond families"};
  app.name(kToolName);
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--order", g.order, "q-window (command-specific default when omitted)");
  app.add_option("--seed-file", g.seed_file, "relation data file overriding the built-in seeds");
  app.add_option("--mod-cap", g.mod_cap, "work with coefficients modulo 7^R (0 = exact)");
  app.add_option("--threads", g.threads, "worker threads for independent checks")
      ->check(CLI::Range(1, 256));
  app.add_option("--verify-derived", g.verify_derived,
                 "q-window checked for every derived relation (0 disables)");
  app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", g.out, "write the certificate to this file");

  std::string spec_text;
  auto* c_expand = app.add_subcommand("expand", "q-expansion of an eta quotient");
  c_expand->add_option("spec", spec_text, "e.g. \"7^4 * 1^-4\"")->required();

  app.add_subcommand("verify-appendix", "verify every seed relation (default window q^150)");
  app.add_subcommand("verify-modeq", "verify the degree-7 modular equation (default q^200)");

  std::string op_s = "B", basis_s = "1", family_s = "K5", parity_s = "both";
  std::int64_t k = 0, k_min = -20, k_max = 15, slack = 25;
  std::optional<std::int64_t> n_lo, n_hi;
  int alpha = 1, alpha_max = 8, det_alpha_max = 0, k_corollary = 2, scan_exponent = 0;
  std::int64_t n_max = 0;

  auto* c_rel = app.add_subcommand("relation", "relation store operations");
  c_rel->require_subcommand(1);
  c_rel->fallthrough();
  auto* c_get = c_rel->add_subcommand("get", "U_X(u t^k) in module form (default window q^60)");
  c_get->add_option("--op", op_s, "A3, A5 or B")->required();
  c_get->add_option("--basis", basis_s, "p0, p1, 1 or p0+p1")->required();
  c_get->add_option("--k", k, "power of t")->required();
  auto* c_ext = c_rel->add_subcommand("extend", "extend and verify a k range (default q^100)");
  c_ext->add_option("--op", op_s, "A3, A5 or B (all when omitted)");
  c_ext->add_option("--basis", basis_s, "p0, p1 or 1 (all when omitted)");
  c_ext->add_option("--k-min", k_min, "lowest power");
  c_ext->add_option("--k-max", k_max, "highest power");
  auto* c_dec = c_rel->add_subcommand("decompose", "solve U_X(u t^k) back into module form");
  c_dec->add_option("--op", op_s, "A3, A5 or B")->required();
  c_dec->add_option("--basis", basis_s, "p0, p1 or 1")->required();
  c_dec->add_option("--k", k, "power of t")->required();
  c_dec->add_option("--lo", n_lo, "lowest t power of the ansatz");
  c_dec->add_option("--hi", n_hi, "highest t power of the ansatz");
  c_dec->add_option("--slack", slack, "extra equations beyond the unknown count");

  auto* c_ell = app.add_subcommand("ell", "L-sequence operations");
  c_ell->require_subcommand(1);
  c_ell->fallthrough();
  auto* c_ellc = c_ell->add_subcommand("compute", "L_alpha symbolically, cross-checked on q^order");
  c_ellc->add_option("--family", family_s, "K3 or K5")->required();
  c_ellc->add_option("--alpha", alpha, "index")->required();
  auto* c_ella = c_ell->add_subcommand("audit", "structural audits of L_{2a-1}, L_{2a}");
  c_ella->add_option("--family", family_s, "K3, K5 or both");
  c_ella->add_option("--alpha-max", alpha_max, "audit a = 1..alpha-max");
  c_ella->add_option("--determinants", det_alpha_max, "determinant audits for alpha = 1..N");

  auto* c_x = app.add_subcommand("solve-x", "multiplier between L_a and L_{a+2} (K5)");
  c_x->add_option("--alpha", alpha, "index a")->required();
  c_x->add_option("--parity", parity_s, "even, odd or both")
      ->check(CLI::IsMember({"even", "odd", "both"}));

  auto* c_d3 = app.add_subcommand("check-d3", "7^{floor(a/2)} | d_3(7^a n + lambda_a)");
  c_d3->add_option("--alpha", alpha, "a >= 1")->required();
  c_d3->add_option("--nmax", n_max, "largest n")->required();
  c_d3->add_option("--scan-exponent", scan_exponent, "scan modulo 7^E (0 = minimal)");
  auto* c_d5 = app.add_subcommand("check-d5", "cross-product congruence for d_5");
  c_d5->add_option("--alpha", alpha, "a >= 1")->required();
  c_d5->add_option("--nmax", n_max, "largest n")->required();
  c_d5->add_option("--scan-exponent", scan_exponent, "scan modulo 7^E (0 = minimal)");
  auto* c_cor = app.add_subcommand("check-corollary", "d_{7k}, d_{7k+5} vanishing mod 7");
  c_cor->add_option("--kmax", k_corollary, "largest k");
  c_cor->add_option("--nmax", n_max, "largest n (default 500)");
  auto* c_pre = app.add_subcommand("check-prefactor", "L_a as prefactor times subsampled d_k");
  c_pre->add_option("--family", family_s, "K3 or K5")->required();
  c_pre->add_option("--alpha", alpha, "a >= 1")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  Certificate cert;
  try {
    Context ctx(g);
    cert.seed_checksum = ctx.checksum();
    cert.modulus = ctx.modulus_label();
    cert.params["order"] = g.order;
    cert.params["mod_cap"] = g.mod_cap;
    cert.params["seed_file"] = g.seed_file;
    auto set_cmd = [&](const std::string& name) { cert.command = name; };
    auto& P = cert.params;

    if (*c_expand) {
      set_cmd("expand");
      const std::int64_t through = ctx.order(50);
      P["spec"] = spec_text;
      P["order"] = through;
      cert.reports.push_back(cmd_expand(ctx, spec_text, through));
    } else if (app.got_subcommand("verify-appendix")) {
      set_cmd("verify-appendix");
      P["order"] = ctx.order(150);
      cert.reports = cmd_verify_appendix(ctx, ctx.order(150));
    } else if (app.got_subcommand("verify-modeq")) {
      set_cmd("verify-modeq");
      P["order"] = ctx.order(200);
      cert.reports = cmd_verify_modeq(ctx.order(200));
    } else if (*c_get) {
      set_cmd("relation get");
      P["op"] = op_s;
      P["basis"] = basis_s;
      P["k"] = k;
      P["order"] = ctx.order(60);
      cert.reports = cmd_relation_get(ctx, parse_op(op_s), parse_basis(basis_s), k, ctx.order(60));
    } else if (*c_ext) {
      set_cmd("relation extend");
      const bool has_op = c_ext->count("--op") > 0, has_basis = c_ext->count("--basis") > 0;
      P["op"] = has_op ? op_s : "all";
      P["basis"] = has_basis ? basis_s : "all";
      P["k_min"] = k_min;
      P["k_max"] = k_max;
      P["order"] = ctx.order(100);
      cert.reports = cmd_relation_extend(
          ctx, has_op ? std::optional(parse_op(op_s)) : std::nullopt,
          has_basis ? std::optional(parse_basis(basis_s)) : std::nullopt, k_min, k_max,
          ctx.order(100));
    } else if (*c_dec) {
      set_cmd("relation decompose");
      P["op"] = op_s;
      P["basis"] = basis_s;
      P["k"] = k;
      P["slack"] = slack;
      cert.reports =
          cmd_relation_decompose(ctx, parse_op(op_s), parse_basis(basis_s), k, n_lo, n_hi, slack);
    } else if (*c_ellc) {
      set_cmd("ell compute");
      P["family"] = family_s;
      P["alpha"] = alpha;
      P["order"] = ctx.order(30);
      cert.reports = cmd_ell_compute(ctx, parse_family(family_s), alpha, ctx.order(30));
    } else if (*c_ella) {
      set_cmd("ell audit");
      std::vector<Family> fams;
      if (family_s == "both") {
        fams = {Family::K3, Family::K5};
      } else {
        fams = {parse_family(family_s)};
      }
      P["family"] = family_s;
      P["alpha_max"] = alpha_max;
      P["determinants"] = det_alpha_max;
      P["order"] = ctx.order(100);
      cert.reports = cmd_ell_audit(ctx, fams, alpha_max, det_alpha_max, ctx.order(100));
    } else if (*c_x) {
      set_cmd("solve-x");
      P["alpha"] = alpha;
      P["parity"] = parity_s;
      cert.reports = cmd_solve_x(ctx, alpha, parity_s);
    } else if (*c_d3) {
      set_cmd("check-d3");
      P["alpha"] = alpha;
      P["nmax"] = n_max;
      cert.reports.push_back(check_theorem_d3(alpha, n_max, scan_exponent));
    } else if (*c_d5) {
      set_cmd("check-d5");
      P["alpha"] = alpha;
      P["nmax"] = n_max;
      cert.reports.push_back(check_theorem_d5(alpha, n_max, scan_exponent));
    } else if (*c_cor) {
      set_cmd("check-corollary");
      const std::int64_t nm = c_cor->count("--nmax") ? n_max : 500;
      P["kmax"] = k_corollary;
      P["nmax"] = nm;
      cert.reports.push_back(check_corollary(k_corollary, nm));
    } else if (*c_pre) {
      set_cmd("check-prefactor");
      P["family"] = family_s;
      P["alpha"] = alpha;
      P["order"] = ctx.order(60);
      cert.reports.push_back(check_prefactor_identity(parse_family(family_s), alpha, ctx.order(60)));
    } else {
      err << app.help();
      return kUsage;
    }
    std::stable_sort(cert.reports.begin(), cert.reports.end(),
                     [](const Report& a, const Report& b) { return a.subject < b.subject; });
    cert.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(cert, g, out);
  } catch (...) {
    return classify(std::current_exception(), err);
  }
  return cert.pass() ? kPass : kMathFailure;
}

}  // namespace diamond7::cli
