#ifndef HYPAM_THRESHOLDS_HPP
#define HYPAM_THRESHOLDS_HPP

#include <cstddef>
#include <utility>

#include "hypam/errors.hpp"
#include "hypam/rational.hpp"
#include "hypam/series.hpp"

namespace hypam {

enum class Trichotomy { less, equal, greater };

inline Trichotomy compare(const Rational& x, const Rational& y) {
  if (x < y) return Trichotomy::less;
  if (x > y) return Trichotomy::greater;
  return Trichotomy::equal;
}

/// Membership flags for the parameter regions that control the monotone
/// direction of {n C_n}, plus the standing comparisons the theorems branch on.
/// Boundary equalities report membership in both regions.
struct RegionReport {
  bool in_R1 = false;               // c >= a+b-1, (1+a+b-ab)c >= 2ab, (c-a)(c-b) >= 0
  bool in_R2 = false;               // c >= a+b-1, (c-a)(c-b) <= 0
  Trichotomy c_vs_ab_sum = Trichotomy::equal;
  bool c_ge_abc_combined = false;   // c >= a+b+ab
  bool zero_balanced = false;       // c == a+b
  bool max_ab_lt_c = false;         // max{a,b} < c
};

inline RegionReport region(const ParameterTriple& params) {
  const Rational &a = params.a(), &b = params.b(), &c = params.c();
  const Rational cross = (c - a) * (c - b);
  RegionReport r;
  r.c_vs_ab_sum = compare(c, a + b);
  r.zero_balanced = r.c_vs_ab_sum == Trichotomy::equal;
  r.c_ge_abc_combined = c >= a + b + a * b;
  r.max_ab_lt_c = a < c && b < c;
  const bool base = c >= a + b - 1;
  r.in_R1 = base && (1 + a + b - a * b) * c >= 2 * a * b && cross >= 0;
  r.in_R2 = base && cross <= 0;
  return r;
}

/// The quadratic tau(p) = p^2 - (1 + 2ab/c) p + ab(a+1)(b+1)/(c(c+1)) whose
/// roots p_* < p^* separate the second-derivative regimes. tau(p) <= 0 exactly
/// when p_* <= p <= p^*.
inline Rational tau(const ParameterTriple& params, const Rational& p) {
  const Rational &a = params.a(), &b = params.b(), &c = params.c();
  return p * p - (1 + 2 * a * b / c) * p + a * b * (a + 1) * (b + 1) / (c * (c + 1));
}

/// Axis of symmetry of tau; the roots are vertex -/+ sqrt(discriminant)/2.
inline Rational tau_vertex(const ParameterTriple& params) {
  return Rational(1, 2) + params.a() * params.b() / params.c();
}

enum class RootPosition {
  below_pstar_low,
  equals_pstar_low,
  strictly_between,
  equals_pstar_high,
  above_pstar_high,
};

namespace detail {

inline void require_root_hypothesis(const ParameterTriple& params) {
  if ((params.c() - params.a()) * (params.c() - params.b()) < 0)
    throw HypothesisViolated("root classification requires (c-a)(c-b) >= 0");
}

}  // namespace detail

/// Places p relative to the roots of tau using only tau's sign and the vertex
/// comparison; no radicals. Requires (c-a)(c-b) >= 0.
inline RootPosition classify_vs_roots(const ParameterTriple& params, const Rational& p) {
  detail::require_root_hypothesis(params);
  const int t = sign(tau(params, p));
  if (t < 0) return RootPosition::strictly_between;
  const bool left = p < tau_vertex(params);
  if (t == 0) return left ? RootPosition::equals_pstar_low : RootPosition::equals_pstar_high;
  return left ? RootPosition::below_pstar_low : RootPosition::above_pstar_high;
}

/// Exact p >= p_* test: tau <= 0 means between the roots, p >= vertex with
/// tau > 0 means beyond the larger root. Requires (c-a)(c-b) >= 0.
inline bool ge_lower_root(const ParameterTriple& params, const Rational& p) {
  detail::require_root_hypothesis(params);
  return tau(params, p) <= 0 || p >= tau_vertex(params);
}

/// Exact p >= p^* test. Requires (c-a)(c-b) >= 0.
inline bool ge_upper_root(const ParameterTriple& params, const Rational& p) {
  detail::require_root_hypothesis(params);
  return tau(params, p) >= 0 && p >= tau_vertex(params);
}

struct RationalInterval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

struct RootEnclosures {
  RationalInterval lower_root;  // contains p_*
  RationalInterval upper_root;  // contains p^*
};

/// Rational enclosures of width <= eps for the two roots of tau, by bisection.
/// Endpoints are certified by tau sign changes; an exact rational root
/// collapses its interval to a point. Exists for reporting; all decision
/// procedures go through tau's sign instead.
inline RootEnclosures root_enclosures(const ParameterTriple& params, const Rational& eps) {
  detail::require_root_hypothesis(params);
  if (eps <= 0) throw DomainError("enclosure width must be positive");
  const Rational vertex = tau_vertex(params);

  // tau(0) > 0 and tau(vertex) < 0 always hold under the hypothesis.
  auto bisect = [&](Rational lo, Rational hi, bool decreasing) {
    // decreasing: tau(lo) > 0 > tau(hi); otherwise the signs are swapped.
    while (hi - lo > eps) {
      const Rational mid = (lo + hi) / 2;
      const int t = sign(tau(params, mid));
      if (t == 0) return RationalInterval{mid, mid};
      if ((t > 0) == decreasing)
        lo = mid;
      else
        hi = mid;
    }
    return RationalInterval{std::move(lo), std::move(hi)};
  };

  Rational hi = vertex + 1;
  while (tau(params, hi) <= 0) hi += 1;
  return RootEnclosures{bisect(0, vertex, /*decreasing=*/true),
                        bisect(vertex, std::move(hi), /*decreasing=*/false)};
}

/// Exact k C_k, where C_n are the Maclaurin coefficients of ln F(a,b;c;x).
inline Rational kCk(const ParameterTriple& params, std::size_t k) {
  if (k < 1) throw DomainError("kCk requires k >= 1");
  const TruncatedSeries c = series_log(hyp_coeffs(params, k));
  return k * c[k];
}

/// lim_{n->inf} n C_n = max{0, a+b-c}.
inline Rational nCn_limit(const ParameterTriple& params) {
  const Rational gap = params.a() + params.b() - params.c();
  return gap > 0 ? gap : Rational(0);
}

}  // namespace hypam

#endif  // HYPAM_THRESHOLDS_HPP
