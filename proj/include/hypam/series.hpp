#ifndef HYPAM_SERIES_HPP
#define HYPAM_SERIES_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "hypam/errors.hpp"
#include "hypam/rational.hpp"

namespace hypam {

/// A truncated Maclaurin series over exact rationals. Index n holds the
/// coefficient of x^n; the represented function is
/// e^{e_power} * sum coeffs[n] x^n. e_power is 0 for purely rational
/// series and 1 for exp-of-series families with the constant factored out.
class TruncatedSeries {
 public:
  TruncatedSeries() : coeffs_(1) {}

  explicit TruncatedSeries(std::vector<Rational> coeffs, int e_power = 0)
      : coeffs_(std::move(coeffs)), e_power_(e_power) {
    if (coeffs_.empty()) throw Error("a series needs at least the constant term");
  }

  static TruncatedSeries zeros(std::size_t order) {
    return TruncatedSeries(std::vector<Rational>(order + 1));
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return coeffs_[n]; }
  Rational& operator[](std::size_t n) { return coeffs_[n]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  int e_power() const { return e_power_; }
  void set_e_power(int p) { e_power_ = p; }

  bool operator==(const TruncatedSeries&) const = default;

 private:
  std::vector<Rational> coeffs_;
  int e_power_ = 0;
};

inline TruncatedSeries negated(const TruncatedSeries& s) {
  std::vector<Rational> c(s.coeffs());
  for (auto& x : c) x = -x;
  return TruncatedSeries(std::move(c), s.e_power());
}

/// Coefficients of F(a,b;c;x): A_0 = 1, A_{n+1} = A_n (a+n)(b+n) / ((c+n)(n+1)).
inline TruncatedSeries hyp_coeffs(const ParameterTriple& params, std::size_t order) {
  std::vector<Rational> a(order + 1);
  a[0] = 1;
  for (std::size_t n = 0; n < order; ++n)
    a[n + 1] = a[n] * (params.a() + n) * (params.b() + n) / ((params.c() + n) * (n + 1));
  return TruncatedSeries(std::move(a));
}

/// Coefficients of (1-x)^{-p} for sign = -1 (i.e. W_n(p) = (p)_n / n!) and of
/// (1-x)^{+p} for sign = +1 (i.e. (-p)_n / n!).
inline TruncatedSeries binom_pow_coeffs(const Rational& p, int sign, std::size_t order) {
  if (sign != 1 && sign != -1) throw DomainError("binomial power sign must be +1 or -1");
  const Rational q = sign == -1 ? p : -p;
  std::vector<Rational> w(order + 1);
  w[0] = 1;
  for (std::size_t n = 0; n < order; ++n) w[n + 1] = w[n] * (q + n) / (n + 1);
  return TruncatedSeries(std::move(w));
}

inline TruncatedSeries cauchy_product(const TruncatedSeries& u, const TruncatedSeries& v) {
  if (u.order() != v.order()) throw OrderMismatch("cauchy_product requires equal orders");
  const std::size_t order = u.order();
  std::vector<Rational> w(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    Rational s(0);
    for (std::size_t k = 0; k <= n; ++k) s += u[k] * v[n - k];
    w[n] = std::move(s);
  }
  return TruncatedSeries(std::move(w), u.e_power() + v.e_power());
}

/// exp of a series with zero constant term: g_0 = 1,
/// n g_n = sum_{k=1..n} k f_k g_{n-k}. Any constant removed by the caller
/// re-enters through the e_power tag on the composed result.
inline TruncatedSeries series_exp_reduced(const TruncatedSeries& f) {
  if (f[0] != 0) throw NonzeroConstantTerm("series_exp_reduced requires f[0] = 0");
  const std::size_t order = f.order();
  std::vector<Rational> g(order + 1);
  g[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    Rational s(0);
    for (std::size_t k = 1; k <= n; ++k) s += k * f[k] * g[n - k];
    g[n] = s / n;
  }
  return TruncatedSeries(std::move(g));
}

/// log of a series with unit constant term: C_0 = 0,
/// n C_n = n f_n - sum_{k=1..n-1} k C_k f_{n-k}.
inline TruncatedSeries series_log(const TruncatedSeries& f) {
  if (f[0] != 1) throw ConstantTermNotOne("series_log requires f[0] = 1");
  const std::size_t order = f.order();
  std::vector<Rational> c(order + 1);
  for (std::size_t n = 1; n <= order; ++n) {
    Rational s = n * f[n];
    for (std::size_t k = 1; k < n; ++k) s -= k * c[k] * f[n - k];
    c[n] = s / n;
  }
  return TruncatedSeries(std::move(c));
}

inline TruncatedSeries series_derivative(const TruncatedSeries& u) {
  if (u.order() < 1) throw OrderTooSmall("cannot differentiate an order-0 series");
  std::vector<Rational> d(u.order());
  for (std::size_t n = 0; n < u.order(); ++n) d[n] = (n + 1) * u[n + 1];
  return TruncatedSeries(std::move(d), u.e_power());
}

/// 1 / f for f with positive constant term, through the one tested
/// composition path exp(-log(f / f_0)) / f_0.
inline TruncatedSeries series_reciprocal(const TruncatedSeries& f) {
  if (f[0] <= 0) throw NonpositiveDenominatorCoefficient("series_reciprocal requires f[0] > 0");
  std::vector<Rational> scaled(f.coeffs());
  for (auto& x : scaled) x /= f[0];
  TruncatedSeries g =
      series_exp_reduced(negated(series_log(TruncatedSeries(std::move(scaled)))));
  std::vector<Rational> r(g.coeffs());
  for (auto& x : r) x /= f[0];
  return TruncatedSeries(std::move(r), -f.e_power());
}

/// Coefficients u_n of (1-x)^p F(a,b;c;x).
inline TruncatedSeries fp_coeffs(const ParameterTriple& params, const Rational& p,
                                 std::size_t order) {
  return cauchy_product(hyp_coeffs(params, order), binom_pow_coeffs(p, +1, order));
}

/// Coefficients of (1-x)^p exp(F(a,b;c;x)) / e, tagged with e_power = 1.
/// The factor e = exp(F(0)) is never approximated; every sign decision is
/// made on the rational reduced series.
inline TruncatedSeries gp_reduced_coeffs(const ParameterTriple& params, const Rational& p,
                                         std::size_t order) {
  TruncatedSeries f = hyp_coeffs(params, order);
  f[0] -= 1;
  TruncatedSeries g = cauchy_product(series_exp_reduced(f), binom_pow_coeffs(p, +1, order));
  g.set_e_power(1);
  return g;
}

/// Coefficients w_n = (n C_n - p) / n of ln[(1-x)^p F(a,b;c;x)], with
/// C_n the Maclaurin coefficients of ln F.
inline TruncatedSeries lnfp_coeffs(const ParameterTriple& params, const Rational& p,
                                   std::size_t order) {
  TruncatedSeries c = series_log(hyp_coeffs(params, order));
  std::vector<Rational> w(order + 1);
  for (std::size_t n = 1; n <= order; ++n) w[n] = (n * c[n] - p) / n;
  return TruncatedSeries(std::move(w));
}

}  // namespace hypam

#endif  // HYPAM_SERIES_HPP
