#ifndef HYPAM_NUMERIC_HPP
#define HYPAM_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "hypam/errors.hpp"
#include "hypam/rational.hpp"
#include "hypam/series.hpp"
#include "hypam/thresholds.hpp"

namespace hypam {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

/// ln Gamma(x) for x > 0: shift the argument above 12 with
/// ln Gamma(x) = ln Gamma(x+1) - ln x, then the Stirling series. No
/// reflection is needed for positive arguments.
inline double log_gamma(double x) {
  if (!(x > 0)) throw DomainError("log_gamma requires x > 0");
  double shift = 0.0;
  while (x < 12.0) {
    shift -= std::log(x);
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  // B_{2k} / (2k(2k-1) x^{2k-1}); the first omitted term is < 1e-16 at x >= 12.
  const double series =
      inv * (1.0 / 12 +
             inv2 * (-1.0 / 360 +
                     inv2 * (1.0 / 1260 +
                             inv2 * (-1.0 / 1680 +
                                     inv2 * (1.0 / 1188 + inv2 * (-691.0 / 360360))))));
  return shift + 0.918938533204672741780329736406 /* ln(2 pi)/2 */ +
         (x - 0.5) * std::log(x) - x + series;
}

/// psi(x) for x > 0 via the recurrence psi(x+1) = psi(x) + 1/x to shift the
/// argument above 12, then the asymptotic expansion.
inline double digamma(double x) {
  if (!(x > 0)) throw DomainError("digamma requires x > 0");
  double shift = 0.0;
  while (x < 12.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12 +
              inv2 * (-1.0 / 120 +
                      inv2 * (1.0 / 252 +
                              inv2 * (-1.0 / 240 + inv2 * (1.0 / 132 - inv2 * 691.0 / 32760)))));
  return shift + std::log(x) - 0.5 * inv - series;
}

/// R(a,b) = -2 gamma - psi(a) - psi(b).
inline double ramanujan_R(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw DomainError("ramanujan_R requires a > 0, b > 0");
  return -2.0 * kEulerGamma - digamma(a) - digamma(b);
}

/// F(a,b;c;1^-) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)),
/// defined for c > a+b.
inline double value_at_one(const ParameterTriple& params) {
  if (params.c() <= params.a() + params.b())
    throw HypothesisViolated("value_at_one requires c > a+b");
  const double a = to_double(params.a()), b = to_double(params.b()), c = to_double(params.c());
  return std::exp(log_gamma(c) + log_gamma(c - a - b) - log_gamma(c - a) - log_gamma(c - b));
}

struct EvalResult {
  double value = 0.0;
  long terms_used = 0;
  /// Rigorous bound on |true - value| when available, NaN when only a
  /// heuristic stopping rule applied.
  double tail_bound = std::numeric_limits<double>::quiet_NaN();
};

enum class EvalPath { automatic, direct, symmetry };

namespace detail {

inline EvalResult sum_F_direct(double a, double b, double c, double x, double rel_tol) {
  constexpr long kTermCap = 10'000'000;
  const double eps = std::numeric_limits<double>::epsilon();
  double term = 1.0, sum = 1.0;
  for (long n = 0; n < kTermCap; ++n) {
    term *= x * (a + n) * (b + n) / ((c + n) * (n + 1));
    sum += term;
    // All terms are positive. For m >= n+1 the ratio of consecutive terms is
    // at most rho below, since (a+m)/(c+m) and (b+m)/(m+1) are monotone in m
    // with limit 1; rho < 1 certifies the geometric tail bound.
    const double m = static_cast<double>(n + 1);
    const double rho =
        x * std::max(1.0, (a + m) / (c + m)) * std::max(1.0, (b + m) / (m + 1.0));
    if (rho < 1.0) {
      const double tail = term * rho / (1.0 - rho);
      if (tail <= rel_tol * sum)
        return EvalResult{sum, n + 2, tail + static_cast<double>(n + 2) * eps * sum};
    }
  }
  throw NonconvergentAtTolerance("series term cap reached before the tail bound closed");
}

}  // namespace detail

/// F(a,b;c;x) on (0,1) by direct summation with a certified geometric tail
/// bound. When c < a+b and min(c-a, c-b) > 0 the automatic path first applies
/// F(a,b;c;x) = (1-x)^{c-a-b} F(c-a, c-b; c; x), whose series still converges
/// as x -> 1.
inline EvalResult eval_F(const ParameterTriple& params, double x, double rel_tol = 1e-12,
                         EvalPath path = EvalPath::automatic) {
  if (!(x > 0.0) || !(x < 1.0)) throw DomainError("eval_F requires 0 < x < 1");
  if (!(rel_tol > 0.0)) throw DomainError("eval_F requires rel_tol > 0");
  const Rational &a = params.a(), &b = params.b(), &c = params.c();
  const bool symmetry_valid = c < a + b && c - a > 0 && c - b > 0;
  if (path == EvalPath::symmetry && !symmetry_valid)
    throw HypothesisViolated("symmetry path requires c < a+b and min(c-a, c-b) > 0");
  const bool use_symmetry = path == EvalPath::symmetry ||
                            (path == EvalPath::automatic && symmetry_valid);
  if (!use_symmetry)
    return detail::sum_F_direct(to_double(a), to_double(b), to_double(c), x, rel_tol);

  EvalResult inner =
      detail::sum_F_direct(to_double(c - a), to_double(c - b), to_double(c), x, rel_tol);
  const double prefactor = std::pow(1.0 - x, to_double(c - a - b));
  const double eps = std::numeric_limits<double>::epsilon();
  EvalResult result;
  result.value = prefactor * inner.value;
  result.terms_used = inner.terms_used;
  result.tail_bound = prefactor * inner.tail_bound + 8.0 * eps * std::fabs(result.value);
  return result;
}

/// Residual of the boundary asymptotics near x = 1:
///   c = a+b:  B(a,b) F(a,b;c;x) + ln(1-x) - R(a,b)
///   c < a+b:  F(a,b;c;x) (1-x)^{a+b-c} Gamma(a)Gamma(b)/(Gamma(c)Gamma(a+b-c)) - 1
inline double asymptotic_residual(const ParameterTriple& params, double x) {
  if (!(x > 0.0) || !(x < 1.0)) throw DomainError("asymptotic_residual requires 0 < x < 1");
  const Rational &ra = params.a(), &rb = params.b(), &rc = params.c();
  if (rc > ra + rb) throw HypothesisViolated("asymptotic_residual requires c <= a+b");
  const double a = to_double(ra), b = to_double(rb), c = to_double(rc);
  if (rc == ra + rb) {
    // The zero-balanced series has no symmetry reduction and its terms decay
    // like x^n / n, so certifying much below 2e-6 at x = 1 - 1e-6 would
    // overrun the term cap. That tolerance keeps the F-side error well under
    // the (1-x) ln(1-x) scale of the residual itself.
    const double f = eval_F(params, x, 2e-6).value;
    const double beta = std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
    return beta * f + std::log1p(-x) - ramanujan_R(a, b);
  }
  const double f = eval_F(params, x).value;
  const double factor =
      std::exp(log_gamma(a) + log_gamma(b) - log_gamma(c) - log_gamma(a + b - c));
  return f * std::pow(1.0 - x, a + b - c) * factor - 1.0;
}

// ---------------------------------------------------------------------------
// Inequality evaluators. Each report carries the evaluated lower/upper
// expressions, the F-side quantity in the middle, and the slack on each side;
// ordering_holds demands slack beyond the numerical-error budget so a bound is
// never certified on noise.
// ---------------------------------------------------------------------------

struct BoundsReport {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
  bool ordering_holds = false;
  double slack_lower = 0.0;
  double slack_upper = 0.0;
};

namespace detail {

inline BoundsReport finish_report(double lower, double middle, double upper,
                                  double extra_budget) {
  const double eps = std::numeric_limits<double>::epsilon();
  auto mag = [](double v) { return std::isfinite(v) ? std::fabs(v) : 0.0; };
  const double budget = 8.0 * eps * (mag(lower) + mag(middle) + mag(upper)) + extra_budget;
  BoundsReport r;
  r.lower = lower;
  r.middle = middle;
  r.upper = upper;
  r.slack_lower = middle - lower;
  r.slack_upper = upper - middle;
  r.ordering_holds = r.slack_lower > budget && r.slack_upper > budget;
  return r;
}

/// sum_{j<=n} coeff_j x^j in double, coefficients converted at the last step.
inline double poly_eval(const TruncatedSeries& s, std::size_t n, double x) {
  double acc = 0.0;
  for (std::size_t j = n + 1; j-- > 0;) acc = acc * x + to_double(s[j]);
  return acc;
}

inline Rational partial_sum(const TruncatedSeries& s, std::size_t n) {
  Rational acc(0);
  for (std::size_t j = 0; j <= n; ++j) acc += s[j];
  return acc;
}

}  // namespace detail

/// Rational two-sided bounds on F built from the truncated coefficients u_j of
/// (1-x)^p F. The regime (decided exactly from p, n and the parameters)
/// selects which of the two displays applies; outside every regime the call
/// fails with the offending condition named.
inline BoundsReport bounds_rational(const ParameterTriple& params, const Rational& p,
                                    std::size_t n, double x) {
  if (!(x > 0.0) || !(x < 1.0)) throw DomainError("bounds_rational requires 0 < x < 1");
  const Rational &a = params.a(), &b = params.b(), &c = params.c();
  Rational ub1, ub2;
  if (c >= a + b) {
    ub1 = 1;
    ub2 = 2;
  } else if (a < c && b < c) {
    ub1 = a + b + 1 - c;
    ub2 = a + b + 2 - c;
  } else {
    throw RegimeViolation("requires c >= a+b or max{a,b} < c < a+b");
  }
  const Rational ab_over_c = a * b / c;
  const bool coeffs_decreasing =
      p <= ub1 && (ab_over_c <= p || (n >= 1 && ge_lower_root(params, p)));
  const bool coeffs_increasing = n >= 1 && ge_upper_root(params, p) && p <= ub2;
  if (!coeffs_decreasing && !coeffs_increasing)
    throw RegimeViolation("p outside [ab/c, U], [p_*, U] (n >= 1) and [p^*, U+1] (n >= 1)");

  const TruncatedSeries u = fp_coeffs(params, p, n + 1);
  const double pd = to_double(p);
  const double pow_term = std::pow(1.0 - x, -pd);
  const double truncated =
      (detail::poly_eval(u, n, x) - to_double(detail::partial_sum(u, n)) * std::pow(x, n + 1.0)) *
      pow_term;
  const double extended = detail::poly_eval(u, n + 1, x) * pow_term;

  const EvalResult f = eval_F(params, x);
  const double lower = coeffs_decreasing ? truncated : extended;
  const double upper = coeffs_decreasing ? extended : truncated;
  return detail::finish_report(lower, f.value, upper, f.tail_bound);
}

/// Logarithmic bounds on F built from the coefficients v_j = e g_j of
/// (1-x)^p exp(F); ln(e A) is evaluated as 1 + ln A so the transcendental
/// factor enters only in floating arithmetic. One-sided regimes report the
/// missing side as an infinity.
inline BoundsReport bounds_log(const ParameterTriple& params, const Rational& p, std::size_t n,
                               double x) {
  if (!(x > 0.0) || !(x < 1.0)) throw DomainError("bounds_log requires 0 < x < 1");
  const Rational &a = params.a(), &b = params.b(), &c = params.c();
  const Rational ab_over_c = a * b / c;
  const double inf = std::numeric_limits<double>::infinity();

  const TruncatedSeries g = gp_reduced_coeffs(params, p, n + 1);
  const double log1mx = std::log1p(-x);
  const double pd = to_double(p);
  auto log_bound = [&](double arg) { return arg > 0.0 ? 1.0 + std::log(arg) - pd * log1mx : -inf; };

  const EvalResult f = eval_F(params, x);
  if (c <= a + b && p <= ab_over_c) {
    return detail::finish_report(log_bound(detail::poly_eval(g, n, x)), f.value, inf,
                                 f.tail_bound);
  }
  if (c == a + b && a + b >= 2 * a * b * (a + b + 1) && n >= 1 &&
      p >= a * b * (2 * a + 2 * b + 1) / ((a + b) * (a + b + 1)) && p <= 1) {
    return detail::finish_report(-inf, f.value, log_bound(detail::poly_eval(g, n, x)),
                                 f.tail_bound);
  }
  if (c >= a + b + a * b && ab_over_c <= p && p <= 1 && n >= 1) {
    const double truncated = detail::poly_eval(g, n, x) -
                             to_double(detail::partial_sum(g, n)) * std::pow(x, n + 1.0);
    return detail::finish_report(log_bound(truncated), f.value,
                                 log_bound(detail::poly_eval(g, n + 1, x)), f.tail_bound);
  }
  throw RegimeViolation(
      "requires (c <= a+b, p <= ab/c), the zero-balanced reverse case, or (c >= a+b+ab, "
      "ab/c <= p <= 1, n >= 1)");
}

/// Exponential bounds on F from the truncated coefficients w_j(p), w_j(q) of
/// ln[(1-x)^s F]. Valid on region R1 with p <= max{0, a+b-c} and q >= n C_n,
/// and on region R2 with p <= n C_n and q >= a+b-c (n >= 1 in both).
inline BoundsReport bounds_exp(const ParameterTriple& params, const Rational& p,
                               const Rational& q, std::size_t n, double x) {
  if (!(x > 0.0) || !(x < 1.0)) throw DomainError("bounds_exp requires 0 < x < 1");
  if (n < 1) throw RegimeViolation("bounds_exp requires n >= 1");
  const RegionReport reg = region(params);
  const Rational ncn = kCk(params, n);
  bool ok = false;
  if (reg.in_R1) ok = p <= nCn_limit(params) && q >= ncn;
  if (!ok && reg.in_R2)
    ok = p <= ncn && q >= params.a() + params.b() - params.c();
  if (!ok)
    throw RegimeViolation(
        "requires R1 with p <= max{0,a+b-c}, q >= nC_n, or R2 with p <= nC_n, q >= a+b-c");

  auto side = [&](const Rational& s) {
    const TruncatedSeries w = lnfp_coeffs(params, s, n);
    double acc = 0.0;
    for (std::size_t j = n; j >= 1; --j) acc = (acc + to_double(w[j])) * x;
    return std::exp(acc) * std::pow(1.0 - x, -to_double(s));
  };
  const EvalResult f = eval_F(params, x);
  return detail::finish_report(side(p), f.value, side(q), f.tail_bound);
}

enum class RatioBoundForm { r1, r2 };

/// Closed-form bounds on F(a,b;c;r^p) / F(a,b;c;r^{p/q}) for p, q > 1.
/// Form r1 applies on region R1, form r2 on region R2.
inline BoundsReport bounds_ratio(const ParameterTriple& params, double p, double q, double r,
                                 RatioBoundForm form) {
  if (!(p > 1.0)) throw DomainError("bounds_ratio requires p > 1");
  if (!(q > 1.0)) throw DomainError("bounds_ratio requires q > 1");
  if (!(r > 0.0) || !(r < 1.0)) throw DomainError("bounds_ratio requires 0 < r < 1");
  const RegionReport reg = region(params);
  if (form == RatioBoundForm::r1 && !reg.in_R1)
    throw RegimeViolation("form r1 requires the parameter triple in region R1");
  if (form == RatioBoundForm::r2 && !reg.in_R2)
    throw RegimeViolation("form r2 requires the parameter triple in region R2");

  const Rational &a = params.a(), &b = params.b(), &c = params.c();
  const double x = std::pow(r, p), y = std::pow(r, p / q);
  const double base = (1.0 - y) / (1.0 - x);
  const double ab_over_c = to_double(a * b / c);
  // Quadratic-coefficient tie: this equals -w_2(ab/c).
  const double quad = to_double(a * b * (c - a) * (c - b) / (2 * c * c * (c + 1)));

  double lower, upper;
  if (form == RatioBoundForm::r1) {
    const double s0 = to_double(nCn_limit(params));
    lower = std::pow(base, ab_over_c) * std::exp(quad * (y * y - x * x));
    upper = std::pow(base, s0) * std::exp((s0 - ab_over_c) * (y - x));
  } else {
    const double s2 = to_double(a + b - c);
    const double lin = to_double((a - c) * (c - b) / c);
    lower = std::pow(base, s2) * std::exp(lin * (y - x));
    upper = std::pow(base, ab_over_c) * std::exp(quad * (y * y - x * x));
  }

  const EvalResult fx = eval_F(params, x);
  const EvalResult fy = eval_F(params, y);
  const double middle = fx.value / fy.value;
  const double budget =
      (fx.tail_bound + std::fabs(middle) * fy.tail_bound) / std::fabs(fy.value);
  return detail::finish_report(lower, middle, upper, budget);
}

}  // namespace hypam

#endif  // HYPAM_NUMERIC_HPP
