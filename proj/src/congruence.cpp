#include "diamond7/congruence.hpp"

#include <algorithm>
#include <optional>

#include "diamond7/errors.hpp"
#include "diamond7/eta.hpp"
#include "diamond7/residue_series.hpp"

namespace diamond7 {

LambdaSpec lambda(Family f, int alpha) {
  if (alpha < 1) throw PreconditionError("lambda needs alpha >= 1");
  const BigInt p = pow7(static_cast<unsigned>(alpha));
  BigInt num, den;
  if (f == Family::K3) {
    num = 5 * p + 1;
    den = 6;
  } else {
    num = (alpha % 2 ? p : 3 * p) + 1;
    den = 4;
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw VerificationFailure("lambda numerator is not divisible");
  }
  return {f, alpha, BigInt(num / den)};
}

namespace {

std::int64_t to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) throw InsufficientPrecision("argument exceeds machine range", kUnbounded);
  return v.get_si();
}

std::int64_t pow7_i64(int e) { return to_i64(pow7(static_cast<unsigned>(e))); }

void check_scan_budget(std::int64_t arg_max) {
  if (arg_max > kScanBudget) {
    throw InsufficientPrecision("scan needs d_k through q^" + std::to_string(arg_max) + " (budget " +
                                    std::to_string(kScanBudget) + ")",
                                arg_max);
  }
}

// Residue exponent used for a scan: at least the target, at most 22 (7^22 < 2^62).
int scan_exponent(int target, int requested) {
  const int r = std::max({target, requested, 1});
  if (r > 22) throw PreconditionError("residue scans support moduli up to 7^22");
  return r;
}

std::uint64_t u64_pow7(int e) { return pow7(static_cast<unsigned>(e)).get_ui(); }

int residue_order(std::uint64_t v, int cap) {
  if (v == 0) return cap;
  int e = 0;
  while (v % 7 == 0) {
    v /= 7;
    ++e;
  }
  return e;
}

}  // namespace

Report check_theorem_d3(int alpha, std::int64_t n_max, int mod_exponent) {
  if (alpha < 1) throw PreconditionError("check-d3 needs alpha >= 1");
  if (n_max < 0) throw PreconditionError("n_max must be nonnegative");
  const int s = alpha / 2;
  const std::int64_t step = pow7_i64(alpha);
  const std::int64_t lam = to_i64(lambda(Family::K3, alpha).value);
  const std::int64_t arg_max = step * n_max + lam;
  check_scan_budget(arg_max);
  const int r = scan_exponent(s, mod_exponent);
  const std::uint64_t m = u64_pow7(r);
  const std::uint64_t target = u64_pow7(s);

  Report rep;
  rep.subject = "theorem d3";
  rep.params["alpha"] = alpha;
  rep.params["n_max"] = n_max;
  rep.params["lambda"] = lam;
  rep.params["modulus"] = "7^" + std::to_string(s);

  const ResidueSeries d = dk_series_residue(3, arg_max, m);
  std::optional<std::int64_t> first_bad;
  int min_order = r;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const std::uint64_t v = d.coeff(step * n + lam);
    min_order = std::min(min_order, residue_order(v, r));
    if (v % target != 0 && !first_bad) first_bad = n;
  }
  std::string observed;
  std::int64_t certified = n_max;
  bool ok = true;
  if (first_bad) {
    // Failures are re-derived with exact integers before being reported.
    const std::int64_t arg = step * *first_bad + lam;
    const BigInt exact = dk_series(3, arg).at(arg);
    const bool exact_ok = mpz_divisible_p(exact.get_mpz_t(), pow7(static_cast<unsigned>(s)).get_mpz_t());
    certified = *first_bad - 1;
    observed = exact_ok ? "residue scan disagreed with exact value at n = " + std::to_string(*first_bad)
                        : "d_3(" + std::to_string(arg) + ") = " + exact.get_str() + " not divisible (exact recheck)";
    ok = false;
  } else {
    observed = "all n <= " + std::to_string(n_max);
  }
  rep.add("7^" + std::to_string(s) + " | d_3(" + std::to_string(step) + "n+" + std::to_string(lam) + ")",
          "0 <= n <= " + std::to_string(n_max), observed, ok);
  rep.details["max_n_certified"] = certified;
  rep.details["max_argument"] = arg_max;
  rep.details["scan_modulus"] = "7^" + std::to_string(r);
  rep.details["min_order_observed"] = min_order >= r ? ">= " + std::to_string(r) : std::to_string(min_order);
  return rep;
}

Report check_theorem_d5(int alpha, std::int64_t n_max, int mod_exponent) {
  if (alpha < 1) throw PreconditionError("check-d5 needs alpha >= 1");
  if (n_max < 0) throw PreconditionError("n_max must be nonnegative");
  const int s = alpha / 2 + 2;
  const std::int64_t lo_step = pow7_i64(alpha);
  const std::int64_t hi_step = pow7_i64(alpha + 2);
  const std::int64_t lam_lo = to_i64(lambda(Family::K5, alpha).value);
  const std::int64_t lam_hi = to_i64(lambda(Family::K5, alpha + 2).value);
  const std::int64_t arg_max = hi_step * n_max + lam_hi;
  check_scan_budget(arg_max);
  const int r = scan_exponent(s, mod_exponent);
  const std::uint64_t m = u64_pow7(r);
  const std::uint64_t target = u64_pow7(s);

  Report rep;
  rep.subject = "theorem d5";
  rep.params["alpha"] = alpha;
  rep.params["n_max"] = n_max;
  rep.params["lambda_alpha"] = lam_lo;
  rep.params["lambda_alpha_plus_2"] = lam_hi;
  rep.params["modulus"] = "7^" + std::to_string(s);

  const ResidueSeries d = dk_series_residue(5, arg_max, m);
  const std::uint64_t a = d.coeff(lam_lo);
  const std::uint64_t b = d.coeff(lam_hi);
  std::optional<std::int64_t> first_bad;
  for (std::int64_t n = 0; n <= n_max && !first_bad; ++n) {
    const std::uint64_t lhs = mulmod(d.coeff(hi_step * n + lam_hi), a, m) % target;
    const std::uint64_t rhs = mulmod(d.coeff(lo_step * n + lam_lo), b, m) % target;
    if (lhs != rhs) first_bad = n;
  }
  std::string observed = "all n <= " + std::to_string(n_max);
  std::int64_t certified = n_max;
  bool ok = true;
  if (first_bad) {
    const std::int64_t n = *first_bad;
    const QSeries ex = dk_series(5, hi_step * n + lam_hi);
    const BigInt diff = ex.at(hi_step * n + lam_hi) * ex.at(lam_lo) - ex.at(lo_step * n + lam_lo) * ex.at(lam_hi);
    const bool exact_ok = mpz_divisible_p(diff.get_mpz_t(), pow7(static_cast<unsigned>(s)).get_mpz_t());
    observed = exact_ok ? "residue scan disagreed with exact value at n = " + std::to_string(n)
                        : "fails at n = " + std::to_string(n) + " (exact recheck, difference order " +
                              seven_adic_order(diff).to_string() + ")";
    certified = n - 1;
    ok = false;
  }
  rep.add("cross-product congruence mod 7^" + std::to_string(s), "0 <= n <= " + std::to_string(n_max), observed, ok);
  rep.details["max_n_certified"] = certified;
  rep.details["max_argument"] = arg_max;
  rep.details["scan_modulus"] = "7^" + std::to_string(r);
  rep.details["d5_lambda_alpha_order"] = residue_order(a, r);
  rep.details["d5_lambda_alpha_plus_2_order"] = residue_order(b, r);
  return rep;
}

Report check_corollary(int k_max, std::int64_t n_max) {
  if (k_max < 0 || n_max < 0) throw PreconditionError("check-corollary needs k_max, n_max >= 0");
  Report rep;
  rep.subject = "corollary mod 7";
  rep.params["k_max"] = k_max;
  rep.params["n_max"] = n_max;
  const std::int64_t window = 7 * n_max + 5;
  for (int k = 0; k <= k_max; ++k) {
    const ResidueSeries a = dk_series_residue(7 * k, window, 7);
    std::optional<std::int64_t> bad;
    for (std::int64_t n = 0; n <= n_max && !bad; ++n) {
      if (a.coeff(7 * n + 5) != 0) bad = n;
    }
    rep.add("d_" + std::to_string(7 * k) + "(7n+5) == 0 mod 7", "n <= " + std::to_string(n_max),
            bad ? "fails at n = " + std::to_string(*bad) : "all n <= " + std::to_string(n_max), !bad);

    const ResidueSeries b = dk_series_residue(7 * k + 5, 7 * n_max + 2, 7);
    std::optional<std::int64_t> bad2;
    for (std::int64_t n = 0; n <= n_max && !bad2; ++n) {
      if (b.coeff(7 * n + 2) != 0) bad2 = n;
    }
    rep.add("d_" + std::to_string(7 * k + 5) + "(7n+2) == 0 mod 7", "n <= " + std::to_string(n_max),
            bad2 ? "fails at n = " + std::to_string(*bad2) : "all n <= " + std::to_string(n_max), !bad2);

    const ResidueSeries reduced =
        expand_residue(EtaQuotientSpec({{14, k}, {7, -3 * k}, {1, -1}}, false), 7, window);
    std::optional<std::int64_t> bad3;
    for (std::int64_t e = 0; e <= window && !bad3; ++e) {
      if (a.coeff(e) != reduced.coeff(e)) bad3 = e;
    }
    rep.add("D_" + std::to_string(7 * k) + " == J14^" + std::to_string(k) + "/(J7^" + std::to_string(3 * k) +
                " J1) mod 7",
            "through q^" + std::to_string(window),
            bad3 ? "differ at q^" + std::to_string(*bad3) : "equal through q^" + std::to_string(window), !bad3);
  }
  rep.details["max_n_certified"] = n_max;
  return rep;
}

Report check_prefactor_identity(Family f, int alpha, std::int64_t through) {
  if (alpha < 1) throw PreconditionError("prefactor identity needs alpha >= 1");
  if (through < 0) throw PreconditionError("window must be nonnegative");
  const int k = f == Family::K3 ? 3 : 5;
  const std::int64_t step = pow7_i64(alpha);
  const std::int64_t lam = to_i64(lambda(f, alpha).value);
  const std::int64_t arg_max = step * through + lam;
  if (arg_max > kExactEllBudget) {
    throw InsufficientPrecision("prefactor identity needs exact d_" + std::to_string(k) + " through q^" +
                                    std::to_string(arg_max),
                                arg_max);
  }
  const bool odd = alpha % 2 == 1;
  GeneratorName g;
  if (f == Family::K3) {
    g = odd ? GeneratorName::PREFACTOR_ODD_3 : GeneratorName::PREFACTOR_EVEN_3;
  } else {
    g = odd ? GeneratorName::PREFACTOR_ODD_5 : GeneratorName::PREFACTOR_EVEN_5;
  }
  const QSeries d = dk_series(k, arg_max);
  std::vector<BigInt> sub(static_cast<std::size_t>(through + 1));
  for (std::int64_t n = 0; n <= through; ++n) sub[static_cast<std::size_t>(n)] = d.at(step * n + lam);
  const QSeries rhs = mul(generator(g, through), QSeries(0, std::move(sub), through)).truncated(through);
  const QSeries lhs = ell_qseries(f, alpha, through);

  Report rep;
  rep.subject = "prefactor identity";
  rep.params["family"] = std::string(family_label(f));
  rep.params["alpha"] = alpha;
  rep.params["through"] = through;
  rep.params["lambda"] = lam;
  const auto diff = first_difference(lhs, rhs, through);
  rep.add("L_" + std::to_string(alpha) + " == " + std::string(generator_label(g)) + " * sum d_" + std::to_string(k) +
              "(" + std::to_string(step) + "n+" + std::to_string(lam) + ") q^n",
          "exact through q^" + std::to_string(through),
          diff ? "differ at q^" + std::to_string(diff->exponent) + " (" + diff->left.get_str() + " vs " +
                     diff->right.get_str() + ")"
               : "equal through q^" + std::to_string(through),
          !diff);
  return rep;
}

}  // namespace diamond7
