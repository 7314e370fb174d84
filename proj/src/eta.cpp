#include "diamond7/eta.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>

#include "diamond7/errors.hpp"

namespace diamond7 {

namespace {

// Above this many terms residue expansions switch from sparse passes to transforms.
constexpr std::int64_t kSparseExpandLimit = 60000;

std::vector<EtaFactor> merge(std::vector<EtaFactor> fs) {
  std::map<std::int64_t, std::int64_t> acc;
  for (const auto& f : fs) {
    if (f.scale <= 0) throw PreconditionError("eta scales must be positive");
    acc[f.scale] += f.exponent;
  }
  std::vector<EtaFactor> out;
  for (const auto& [b, r] : acc) {
    if (r != 0) out.push_back({b, r});
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw PreconditionError("malformed eta quotient '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

EtaQuotientSpec::EtaQuotientSpec(std::vector<EtaFactor> factors, bool with_prefactor)
    : factors_(merge(std::move(factors))), with_prefactor_(with_prefactor) {}

EtaQuotientSpec EtaQuotientSpec::parse(std::string_view text) {
  std::string_view rest = trim(text);
  bool pref = true;
  constexpr std::string_view kFlag = "noprefactor";
  if (rest.size() >= kFlag.size() && rest.substr(rest.size() - kFlag.size()) == kFlag) {
    pref = false;
    rest = trim(rest.substr(0, rest.size() - kFlag.size()));
  }
  std::vector<EtaFactor> fs;
  if (rest.empty() || rest == "1") return EtaQuotientSpec({}, pref);
  while (!rest.empty()) {
    const auto star = rest.find('*');
    std::string_view tok = trim(rest.substr(0, star));
    rest = star == std::string_view::npos ? std::string_view{} : rest.substr(star + 1);
    if (tok.empty()) throw PreconditionError("malformed eta quotient '" + std::string(text) + "'");
    const auto caret = tok.find('^');
    const std::int64_t b = parse_int(tok.substr(0, caret), text);
    const std::int64_t r =
        caret == std::string_view::npos ? 1 : parse_int(tok.substr(caret + 1), text);
    if (b <= 0) throw PreconditionError("eta scales must be positive in '" + std::string(text) + "'");
    fs.push_back({b, r});
  }
  return EtaQuotientSpec(std::move(fs), pref);
}

std::string EtaQuotientSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    os << factors_[i].scale << '^' << factors_[i].exponent;
  }
  if (factors_.empty()) os << '1';
  if (!with_prefactor_) os << " noprefactor";
  return os.str();
}

std::int64_t EtaQuotientSpec::q_shift() const {
  if (!with_prefactor_) return 0;
  std::int64_t s = 0;
  for (const auto& f : factors_) s += f.scale * f.exponent;
  if (s % 24 != 0) {
    throw FractionalExponent("eta quotient " + to_string() + " has prefactor exponent " +
                             std::to_string(s) + "/24");
  }
  return s / 24;
}

EtaQuotientSpec EtaQuotientSpec::operator*(const EtaQuotientSpec& other) const {
  if (with_prefactor_ != other.with_prefactor_) {
    throw PreconditionError("cannot multiply eta quotients with different prefactor flags");
  }
  std::vector<EtaFactor> fs = factors_;
  fs.insert(fs.end(), other.factors_.begin(), other.factors_.end());
  return EtaQuotientSpec(std::move(fs), with_prefactor_);
}

EtaQuotientSpec EtaQuotientSpec::pow(std::int64_t e) const {
  std::vector<EtaFactor> fs = factors_;
  for (auto& f : fs) f.exponent *= e;
  return EtaQuotientSpec(std::move(fs), with_prefactor_);
}

QSeries apply(const EtaQuotientSpec& spec, const QSeries& f, std::int64_t through) {
  const std::int64_t s = spec.q_shift();
  std::int64_t rel = std::min(f.valid_through(), through >= kUnbounded ? kUnbounded : through - s);
  if (rel >= kUnbounded) throw PreconditionError("eta quotient application needs a finite window");
  QSeries g = f.truncated(rel);
  // Positive exponents first keeps intermediate coefficients small.
  for (const auto& fac : spec.factors()) {
    if (fac.exponent > 0) g = mul_j_power(g, fac.scale, fac.exponent, rel);
  }
  for (const auto& fac : spec.factors()) {
    if (fac.exponent < 0) g = mul_j_power(g, fac.scale, fac.exponent, rel);
  }
  return g.shifted(s);
}

QSeries expand(const EtaQuotientSpec& spec, std::int64_t through) {
  const std::int64_t s = spec.q_shift();
  if (through - s < 0) return QSeries::zero(through);
  return apply(spec, QSeries::one(through - s), through);
}

ResidueSeries apply_residue(const EtaQuotientSpec& spec, const ResidueSeries& f,
                            std::int64_t through) {
  const std::int64_t s = spec.q_shift();
  const std::int64_t rel =
      std::min(f.valid_through(), through >= kUnbounded ? kUnbounded : through - s);
  ResidueSeries g = f.truncated(rel);
  for (const auto& fac : spec.factors()) {
    if (fac.exponent > 0) g = mul_j_power(g, fac.scale, fac.exponent, rel);
  }
  for (const auto& fac : spec.factors()) {
    if (fac.exponent < 0) g = mul_j_power(g, fac.scale, fac.exponent, rel);
  }
  return g.shifted(s);
}

ResidueSeries expand_residue(const EtaQuotientSpec& spec, std::uint64_t modulus,
                             std::int64_t through) {
  const std::int64_t s = spec.q_shift();
  if (through - s < 0) return ResidueSeries(modulus, through + 1, {}, through);
  const std::int64_t rel = through - s;
  if (rel < kSparseExpandLimit) {
    return apply_residue(spec, ResidueSeries::one(modulus, rel), through);
  }
  // Long windows: each J_b^r from transforms, then multiplied together.
  std::optional<ResidueSeries> acc;
  for (const auto& fac : spec.factors()) {
    ResidueSeries jp =
        substitute_power(j1_power(fac.exponent, modulus, rel / fac.scale), fac.scale).truncated(rel);
    acc = acc ? mul(*acc, jp) : std::move(jp);
  }
  if (!acc) acc = ResidueSeries::one(modulus, rel);
  return acc->truncated(rel).shifted(s);
}

namespace specs {
EtaQuotientSpec t() { return EtaQuotientSpec({{7, 4}, {1, -4}}); }
EtaQuotientSpec x() { return EtaQuotientSpec({{2, 7}, {7, 1}, {1, -7}, {14, -1}}); }
EtaQuotientSpec p1() { return EtaQuotientSpec({{2, 4}, {7, 4}, {1, -4}, {14, -4}}); }
EtaQuotientSpec a3() { return EtaQuotientSpec({{2, 3}, {49, 10}, {1, -10}, {98, -3}}); }
EtaQuotientSpec a5() { return EtaQuotientSpec({{2, 5}, {49, 16}, {1, -16}, {98, -5}}); }
}  // namespace specs

std::string_view generator_label(GeneratorName name) {
  switch (name) {
    case GeneratorName::T: return "T";
    case GeneratorName::P0: return "P0";
    case GeneratorName::P1: return "P1";
    case GeneratorName::A3: return "A3";
    case GeneratorName::A5: return "A5";
    case GeneratorName::B: return "B";
    case GeneratorName::PREFACTOR_ODD_3: return "PREFACTOR_ODD_3";
    case GeneratorName::PREFACTOR_EVEN_3: return "PREFACTOR_EVEN_3";
    case GeneratorName::PREFACTOR_ODD_5: return "PREFACTOR_ODD_5";
    case GeneratorName::PREFACTOR_EVEN_5: return "PREFACTOR_EVEN_5";
  }
  return "?";
}

GeneratorName parse_generator(std::string_view label) {
  std::string up(label);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto n : {GeneratorName::T, GeneratorName::P0, GeneratorName::P1, GeneratorName::A3,
                 GeneratorName::A5, GeneratorName::B, GeneratorName::PREFACTOR_ODD_3,
                 GeneratorName::PREFACTOR_EVEN_3, GeneratorName::PREFACTOR_ODD_5,
                 GeneratorName::PREFACTOR_EVEN_5}) {
    if (generator_label(n) == up) return n;
  }
  throw PreconditionError("unknown generator '" + std::string(label) + "'");
}

namespace {

// Prefactor generators as (J-product, q-shift).
std::pair<EtaQuotientSpec, std::int64_t> prefactor_form(GeneratorName name) {
  switch (name) {
    case GeneratorName::PREFACTOR_ODD_3: return {EtaQuotientSpec({{7, 10}, {14, -3}}, false), 2};
    case GeneratorName::PREFACTOR_EVEN_3: return {EtaQuotientSpec({{1, 10}, {2, -3}}, false), 1};
    case GeneratorName::PREFACTOR_ODD_5: return {EtaQuotientSpec({{7, 16}, {14, -5}}, false), 2};
    case GeneratorName::PREFACTOR_EVEN_5: return {EtaQuotientSpec({{1, 16}, {2, -5}}, false), 1};
    default: break;
  }
  throw PreconditionError("not a prefactor generator");
}

QSeries compute_generator(GeneratorName name, std::int64_t through) {
  switch (name) {
    case GeneratorName::T: return expand(specs::t(), through);
    case GeneratorName::P1: return expand(specs::p1(), through);
    case GeneratorName::A3: return expand(specs::a3(), through);
    case GeneratorName::A5: return expand(specs::a5(), through);
    case GeneratorName::B: return QSeries::one(through);
    case GeneratorName::P0: {
      QSeries num = sub(scale(expand(specs::x(), through), BigInt(8)), QSeries::one(through));
      return divexact(num, BigInt(7));
    }
    default: {
      auto [spec, shift] = prefactor_form(name);
      return expand(spec, through - shift).shifted(shift);
    }
  }
}

struct GeneratorCache {
  std::shared_mutex mu;
  std::map<GeneratorName, QSeries> series;
};

GeneratorCache& cache() {
  static GeneratorCache c;
  return c;
}

}  // namespace

QSeries generator(GeneratorName name, std::int64_t through) {
  auto& c = cache();
  {
    std::shared_lock lock(c.mu);
    auto it = c.series.find(name);
    if (it != c.series.end() && it->second.valid_through() >= through) {
      return it->second.truncated(through);
    }
  }
  QSeries s = compute_generator(name, through);
  std::unique_lock lock(c.mu);
  auto it = c.series.find(name);
  if (it == c.series.end() || it->second.valid_through() < s.valid_through()) c.series[name] = s;
  return s;
}

ResidueSeries generator_residue(GeneratorName name, std::uint64_t modulus, std::int64_t through) {
  switch (name) {
    case GeneratorName::T: return expand_residue(specs::t(), modulus, through);
    case GeneratorName::P1: return expand_residue(specs::p1(), modulus, through);
    case GeneratorName::A3: return expand_residue(specs::a3(), modulus, through);
    case GeneratorName::A5: return expand_residue(specs::a5(), modulus, through);
    case GeneratorName::B: return ResidueSeries::one(modulus, through);
    case GeneratorName::P0: {
      if (modulus >= (std::uint64_t{1} << 62) / 7) {
        throw PreconditionError("P0 residue expansion needs 7 * modulus < 2^62");
      }
      const std::uint64_t big = modulus * 7;
      ResidueSeries x = expand_residue(specs::x(), big, through);
      std::vector<std::uint64_t> c(static_cast<std::size_t>(through + 1), 0);
      for (std::int64_t n = 0; n <= through; ++n) {
        std::uint64_t v = mulmod(8, x.coeff(n), big);
        if (n == 0) v = (v + big - 1) % big;
        if (v % 7 != 0) {
          throw IntegralityViolation("P0 numerator coefficient of q^" + std::to_string(n) +
                                     " is not divisible by 7");
        }
        c[static_cast<std::size_t>(n)] = v / 7;
      }
      return ResidueSeries(modulus, 0, std::move(c), through);
    }
    default: {
      auto [spec, shift] = prefactor_form(name);
      return expand_residue(spec, modulus, through - shift).shifted(shift);
    }
  }
}

QSeries dk_series(std::int64_t k, std::int64_t n_max) {
  if (k < 0) throw PreconditionError("d_k needs k >= 0");
  return expand(EtaQuotientSpec({{2, k}, {1, -(3 * k + 1)}}, false), n_max);
}

ResidueSeries dk_series_residue(std::int64_t k, std::int64_t n_max, std::uint64_t modulus) {
  if (k < 0) throw PreconditionError("d_k needs k >= 0");
  return expand_residue(EtaQuotientSpec({{2, k}, {1, -(3 * k + 1)}}, false), modulus, n_max);
}

}  // namespace diamond7
