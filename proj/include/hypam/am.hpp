#ifndef HYPAM_AM_HPP
#define HYPAM_AM_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>

#include "hypam/errors.hpp"
#include "hypam/rational.hpp"
#include "hypam/series.hpp"
#include "hypam/thresholds.hpp"

namespace hypam {

enum class AMStatus { all_nonneg, all_nonpos, mixed };

inline const char* to_string(AMStatus s) {
  switch (s) {
    case AMStatus::all_nonneg: return "all_nonneg";
    case AMStatus::all_nonpos: return "all_nonpos";
    default: return "mixed";
  }
}

/// Outcome of a coefficient sign scan up to a finite order. A violation is
/// conclusive (the function is not absolutely monotonic in the scanned
/// direction); a clean scan is evidence only, so checked_order is recorded.
struct AMVerdict {
  AMStatus status = AMStatus::all_nonneg;
  std::optional<std::size_t> first_violation;
  std::size_t checked_order = 0;
};

/// Scans coefficients 0..N against the expected sign (+1 or -1). Zero
/// coefficients never violate in either direction.
inline AMVerdict am_scan(const TruncatedSeries& s, int expect_sign) {
  if (expect_sign != 1 && expect_sign != -1) throw DomainError("expected sign must be +1 or -1");
  for (std::size_t n = 0; n <= s.order(); ++n) {
    if (expect_sign * sign(s[n]) < 0)
      return AMVerdict{AMStatus::mixed, n, s.order()};
  }
  return AMVerdict{expect_sign > 0 ? AMStatus::all_nonneg : AMStatus::all_nonpos, std::nullopt,
                   s.order()};
}

/// Test-function coefficients of (1-x)V'(x) - p V(x):
/// out[n] = (n+1) V_{n+1} - (n+p) V_n.
inline TruncatedSeries test_function_coeffs(const TruncatedSeries& v, const Rational& p) {
  if (v.order() < 1) throw OrderTooSmall("test function needs order >= 1");
  std::vector<Rational> t(v.order());
  for (std::size_t n = 0; n < v.order(); ++n) t[n] = (n + 1) * v[n + 1] - (n + p) * v[n];
  return TruncatedSeries(std::move(t), v.e_power());
}

enum class RatioTrend { increasing, decreasing, constant, mixed };

inline const char* to_string(RatioTrend t) {
  switch (t) {
    case RatioTrend::increasing: return "increasing";
    case RatioTrend::decreasing: return "decreasing";
    case RatioTrend::constant: return "constant";
    default: return "mixed";
  }
}

struct RatioClassification {
  RatioTrend trend = RatioTrend::constant;
  std::optional<std::size_t> first_break;  // step index where the trend reverses
};

/// Classifies the monotonicity of {V_n / W_n} by exact cross-multiplied
/// comparisons V_{n+1} W_n vs V_n W_{n+1}. Requires W_n > 0 for all n.
inline RatioClassification ratio_monotonicity(const TruncatedSeries& v,
                                              const TruncatedSeries& w) {
  if (v.order() != w.order()) throw OrderMismatch("ratio_monotonicity requires equal orders");
  for (std::size_t n = 0; n <= w.order(); ++n)
    if (w[n] <= 0)
      throw NonpositiveDenominatorCoefficient("denominator coefficient W_" + std::to_string(n) +
                                              " is not positive");
  int dir = 0;
  for (std::size_t n = 0; n < v.order(); ++n) {
    const int d = sign(v[n + 1] * w[n] - v[n] * w[n + 1]);
    if (d == 0) continue;
    if (dir == 0)
      dir = d;
    else if (d != dir)
      return RatioClassification{RatioTrend::mixed, n};
  }
  if (dir == 0) return RatioClassification{RatioTrend::constant, std::nullopt};
  return RatioClassification{dir > 0 ? RatioTrend::increasing : RatioTrend::decreasing,
                             std::nullopt};
}

/// Whether {W_{n+1}(p)/W_n(p)} is increasing. The consecutive-ratio difference
/// is (1-p)/((n+1)(n+2)), so the answer is p <= 1; a direct scan up to N
/// cross-checks the closed form.
inline bool w_ratio_increasing(const Rational& p, std::size_t order) {
  if (p <= 0) throw DomainError("w_ratio_increasing requires p > 0");
  const bool closed_form = p <= 1;
  const TruncatedSeries w = binom_pow_coeffs(p, -1, std::max<std::size_t>(order, 2));
  bool scanned = true;
  for (std::size_t n = 0; n + 2 <= w.order(); ++n)
    if (w[n + 2] * w[n] < w[n + 1] * w[n + 1]) {
      scanned = false;
      break;
    }
  if (scanned != closed_form) throw Error("ratio scan disagrees with closed form");
  return closed_form;
}

/// Report of a power-series-ratio criterion run: denominator positivity,
/// denominator consecutive-ratio growth, numerator/denominator ratio trend,
/// and the sign scan of (P/Q)' the trend predicts.
struct JurkatReport {
  bool q_positive = false;
  bool q_ratio_increasing = false;
  RatioClassification ratio;
  bool hypotheses_hold = false;
  AMVerdict ratio_derivative_verdict;
  bool conclusion_matches = false;
};

inline JurkatReport jurkat_check(const TruncatedSeries& p_num, const TruncatedSeries& q_den) {
  if (p_num.order() != q_den.order()) throw OrderMismatch("jurkat_check requires equal orders");
  JurkatReport report;
  for (std::size_t n = 0; n <= q_den.order(); ++n)
    if (q_den[n] <= 0)
      throw NonpositiveDenominatorCoefficient("denominator coefficient q_" + std::to_string(n) +
                                              " is not positive");
  report.q_positive = true;
  report.q_ratio_increasing = true;
  for (std::size_t n = 0; n + 2 <= q_den.order(); ++n)
    if (q_den[n + 2] * q_den[n] < q_den[n + 1] * q_den[n + 1]) {
      report.q_ratio_increasing = false;
      break;
    }
  report.ratio = ratio_monotonicity(p_num, q_den);
  report.hypotheses_hold =
      report.q_positive && report.q_ratio_increasing && report.ratio.trend != RatioTrend::mixed;

  const TruncatedSeries quotient = cauchy_product(p_num, series_reciprocal(q_den));
  const int expect = report.ratio.trend == RatioTrend::decreasing ? -1 : +1;
  report.ratio_derivative_verdict = am_scan(series_derivative(quotient), expect);
  report.conclusion_matches =
      !report.hypotheses_hold || report.ratio_derivative_verdict.status != AMStatus::mixed;
  return report;
}

// ---------------------------------------------------------------------------
// Truncated verdicts for the derived-function families. Each scans the signed
// series and returns all_nonneg when the claimed function looks absolutely
// monotonic up to the checked order.
// ---------------------------------------------------------------------------

namespace detail {

inline TruncatedSeries signed_series(TruncatedSeries s, int series_sign) {
  if (series_sign == -1) return negated(s);
  if (series_sign != 1) throw DomainError("series sign must be +1 or -1");
  return s;
}

}  // namespace detail

/// Sign scan of -(d/dx)[(1-x)^p F(a,b;c;x)]: expects u_{n+1} <= 0.
inline AMVerdict minus_fp_prime_verdict(const ParameterTriple& params, const Rational& p,
                                        std::size_t order) {
  return am_scan(negated(series_derivative(fp_coeffs(params, p, order))), +1);
}

/// Sign scan of sign * (d^2/dx^2)[(1-x)^p F(a,b;c;x)].
inline AMVerdict fp_second_verdict(const ParameterTriple& params, const Rational& p,
                                   std::size_t order, int series_sign) {
  if (order < 2) throw OrderTooSmall("second derivative needs order >= 2");
  return am_scan(detail::signed_series(
                     series_derivative(series_derivative(fp_coeffs(params, p, order))),
                     series_sign),
                 +1);
}

/// Sign scan of sign * (d/dx)[(1-x)^p exp(F(a,b;c;x)) / e]; the positive
/// factor e is factored out, so signs are unchanged.
inline AMVerdict gp_prime_verdict(const ParameterTriple& params, const Rational& p,
                                  std::size_t order, int series_sign) {
  return am_scan(
      detail::signed_series(series_derivative(gp_reduced_coeffs(params, p, order)), series_sign),
      +1);
}

/// Sign scan of sign * (d^k/dx^k) ln[(1-x)^p F(a,b;c;x)]; k = 0 scans the
/// series itself.
inline AMVerdict lnfp_k_verdict(const ParameterTriple& params, const Rational& p, std::size_t k,
                                std::size_t order, int series_sign) {
  TruncatedSeries s = lnfp_coeffs(params, p, order);
  for (std::size_t i = 0; i < k; ++i) s = series_derivative(s);
  return am_scan(detail::signed_series(std::move(s), series_sign), +1);
}

// ---------------------------------------------------------------------------
// Encoded statements: what each result predicts for a given (a, b, c, p).
// ---------------------------------------------------------------------------

enum class TheoremId { T1i, T1ii, T1iii, T2i, T2ii, T2iii, C1i, C1ii, C1iii, T3i, T3ii, T4, T5 };

inline const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1i: return "T1i";
    case TheoremId::T1ii: return "T1ii";
    case TheoremId::T1iii: return "T1iii";
    case TheoremId::T2i: return "T2i";
    case TheoremId::T2ii: return "T2ii";
    case TheoremId::T2iii: return "T2iii";
    case TheoremId::C1i: return "C1i";
    case TheoremId::C1ii: return "C1ii";
    case TheoremId::C1iii: return "C1iii";
    case TheoremId::T3i: return "T3i";
    case TheoremId::T3ii: return "T3ii";
    case TheoremId::T4: return "T4";
    default: return "T5";
  }
}

inline std::optional<TheoremId> theorem_id_from_string(std::string_view s) {
  for (TheoremId id :
       {TheoremId::T1i, TheoremId::T1ii, TheoremId::T1iii, TheoremId::T2i, TheoremId::T2ii,
        TheoremId::T2iii, TheoremId::C1i, TheoremId::C1ii, TheoremId::C1iii, TheoremId::T3i,
        TheoremId::T3ii, TheoremId::T4, TheoremId::T5})
    if (s == to_string(id)) return id;
  return std::nullopt;
}

enum class PredictedVerdict { am, not_am, outside_scope };

inline const char* to_string(PredictedVerdict v) {
  switch (v) {
    case PredictedVerdict::am: return "am";
    case PredictedVerdict::not_am: return "not_am";
    default: return "outside_scope";
  }
}

enum class ConditionKind { iff, sufficient_only };

inline const char* to_string(ConditionKind k) {
  return k == ConditionKind::iff ? "iff" : "sufficient_only";
}

struct TheoremPrediction {
  PredictedVerdict verdict = PredictedVerdict::outside_scope;
  ConditionKind condition_kind = ConditionKind::iff;
  TheoremId theorem_id = TheoremId::T1i;
};

namespace detail {

inline TheoremPrediction predict_iff(TheoremId id, bool in_range) {
  return TheoremPrediction{in_range ? PredictedVerdict::am : PredictedVerdict::not_am,
                           ConditionKind::iff, id};
}

inline TheoremPrediction predict_sufficient(TheoremId id, bool in_range) {
  return TheoremPrediction{in_range ? PredictedVerdict::am : PredictedVerdict::outside_scope,
                           ConditionKind::sufficient_only, id};
}

inline TheoremPrediction outside(TheoremId id, ConditionKind kind) {
  return TheoremPrediction{PredictedVerdict::outside_scope, kind, id};
}

}  // namespace detail

/// The verdict the encoded statement predicts for (a, b, c, p). Hypothesis
/// failures and the statements' unresolved bands report outside_scope.
/// k and series_sign select the member of the log-family checked under T5
/// (k-th derivative, +1 or -1 direction) and are ignored by every other id.
inline TheoremPrediction theorem_prediction(const ParameterTriple& params, const Rational& p,
                                            TheoremId id, std::size_t k = 0,
                                            int series_sign = +1) {
  const Rational &a = params.a(), &b = params.b(), &c = params.c();
  const Rational ab_over_c = a * b / c;
  using detail::outside;
  using detail::predict_iff;
  using detail::predict_sufficient;

  switch (id) {
    case TheoremId::T1i:
    case TheoremId::T1ii:
    case TheoremId::T1iii: {
      if (c < a + b) return outside(id, id == TheoremId::T1iii ? ConditionKind::sufficient_only
                                                               : ConditionKind::iff);
      if (id == TheoremId::T1i) return predict_iff(id, ab_over_c <= p && p <= 1);
      if (id == TheoremId::T1ii)
        return predict_iff(id, ge_lower_root(params, p) && p <= 1);
      return predict_sufficient(id, ge_upper_root(params, p) && p <= 2);
    }
    case TheoremId::T2i:
    case TheoremId::T2ii:
    case TheoremId::T2iii: {
      const bool hyp = a < c && b < c && c < a + b;
      if (!hyp) return outside(id, id == TheoremId::T2iii ? ConditionKind::sufficient_only
                                                          : ConditionKind::iff);
      const Rational ub = a + b + 1 - c;
      if (id == TheoremId::T2i) return predict_iff(id, ab_over_c <= p && p <= ub);
      if (id == TheoremId::T2ii)
        return predict_iff(id, ge_lower_root(params, p) && p <= ub);
      return predict_sufficient(id, ge_upper_root(params, p) && p <= ub + 1);
    }
    case TheoremId::C1i:
    case TheoremId::C1ii:
    case TheoremId::C1iii: {
      if (c != a + b) return outside(id, id == TheoremId::C1iii ? ConditionKind::sufficient_only
                                                                : ConditionKind::iff);
      if (id == TheoremId::C1i) return predict_iff(id, ab_over_c <= p && p <= 1);
      if (id == TheoremId::C1ii)
        return predict_iff(id, ge_lower_root(params, p) && p <= 1);
      return predict_sufficient(id, ge_upper_root(params, p) && p <= 2);
    }
    case TheoremId::T3i: {
      if (c > a + b) return outside(id, ConditionKind::iff);
      return predict_iff(id, p <= ab_over_c);
    }
    case TheoremId::T3ii: {
      if (c != a + b || a + b < 2 * a * b * (a + b + 1))
        return outside(id, ConditionKind::sufficient_only);
      const Rational lo = a * b * (2 * a + 2 * b + 1) / ((a + b) * (a + b + 1));
      return predict_sufficient(id, lo <= p && p <= 1);
    }
    case TheoremId::T4: {
      if (c < a + b + a * b) return outside(id, ConditionKind::iff);
      return predict_iff(id, ab_over_c <= p && p <= 1);
    }
    case TheoremId::T5: {
      const RegionReport reg = region(params);
      if (!reg.in_R1 && !reg.in_R2) return outside(id, ConditionKind::iff);
      // {n C_n} is decreasing on R1 and increasing on R2; on the overlap it is
      // constant and the thresholds below coincide.
      const Rational near_threshold = k >= 1 ? kCk(params, k) : kCk(params, 1);
      const Rational limit = nCn_limit(params);
      bool in_range;
      if (reg.in_R1)
        in_range = series_sign > 0 ? p <= limit : p >= near_threshold;
      else
        in_range = series_sign > 0 ? p <= near_threshold : p >= limit;
      return predict_iff(id, in_range);
    }
  }
  throw Error("unreachable theorem id");
}

// ---------------------------------------------------------------------------
// Prediction-vs-scan concordance.
// ---------------------------------------------------------------------------

enum class ConcordanceOutcome { concordant, discordant, undetected_at_cap, outside_scope };

inline const char* to_string(ConcordanceOutcome o) {
  switch (o) {
    case ConcordanceOutcome::concordant: return "concordant";
    case ConcordanceOutcome::discordant: return "discordant";
    case ConcordanceOutcome::undetected_at_cap: return "undetected_at_cap";
    default: return "outside_scope";
  }
}

struct ConcordanceReport {
  TheoremPrediction prediction;
  AMVerdict verdict;
  ConcordanceOutcome outcome = ConcordanceOutcome::outside_scope;
  std::size_t final_order = 0;
};

/// Dispatches the sign scan that matches a statement id.
inline AMVerdict theorem_scan(const ParameterTriple& params, const Rational& p, TheoremId id,
                              std::size_t order, std::size_t k = 0, int series_sign = +1) {
  switch (id) {
    case TheoremId::T1i:
    case TheoremId::T2i:
    case TheoremId::C1i:
      return minus_fp_prime_verdict(params, p, order);
    case TheoremId::T1ii:
    case TheoremId::T2ii:
    case TheoremId::C1ii:
      return fp_second_verdict(params, p, order, -1);
    case TheoremId::T1iii:
    case TheoremId::T2iii:
    case TheoremId::C1iii:
      return fp_second_verdict(params, p, order, +1);
    case TheoremId::T3i:
      return gp_prime_verdict(params, p, order, +1);
    case TheoremId::T3ii:
    case TheoremId::T4:
      return gp_prime_verdict(params, p, order, -1);
    case TheoremId::T5:
      return lnfp_k_verdict(params, p, k, order, series_sign);
  }
  throw Error("unreachable theorem id");
}

/// Runs prediction and scan and compares them. A predicted violation that the
/// scan cannot find escalates the order (doubling, up to cap); a clean scan at
/// the cap is reported as undetected_at_cap, never as a statement violation.
inline ConcordanceReport run_concordance(const ParameterTriple& params, const Rational& p,
                                         TheoremId id, std::size_t order, std::size_t cap = 5000,
                                         std::size_t k = 0, int series_sign = +1) {
  ConcordanceReport report;
  report.prediction = theorem_prediction(params, p, id, k, series_sign);
  order = std::min(order, cap);
  report.verdict = theorem_scan(params, p, id, order, k, series_sign);
  report.final_order = order;

  switch (report.prediction.verdict) {
    case PredictedVerdict::outside_scope:
      report.outcome = ConcordanceOutcome::outside_scope;
      break;
    case PredictedVerdict::am:
      report.outcome = report.verdict.status == AMStatus::mixed ? ConcordanceOutcome::discordant
                                                                : ConcordanceOutcome::concordant;
      break;
    case PredictedVerdict::not_am: {
      while (report.verdict.status != AMStatus::mixed && order < cap) {
        order = std::min(order * 2, cap);
        report.verdict = theorem_scan(params, p, id, order, k, series_sign);
        report.final_order = order;
      }
      report.outcome = report.verdict.status == AMStatus::mixed
                           ? ConcordanceOutcome::concordant
                           : ConcordanceOutcome::undetected_at_cap;
      break;
    }
  }
  return report;
}

}  // namespace hypam

#endif  // HYPAM_AM_HPP
