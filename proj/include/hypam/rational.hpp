#ifndef HYPAM_RATIONAL_HPP
#define HYPAM_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <utility>

#include "hypam/errors.hpp"

namespace hypam {

/// Exact rational scalar. All arithmetic is exact and results are kept in
/// canonical form (coprime numerator/denominator, denominator > 0), so
/// sign(x) == sign(numerator).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline int sign(const Rational& x) { return x.sign(); }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

}  // namespace detail

/// Parses "n" or "n/d" (optional leading sign on the numerator only).
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!detail::all_digits(num) || !detail::all_digits(den))
    throw std::invalid_argument("not a rational literal: \"" + std::string(text) + "\"");
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  Integer n{std::string(num)};
  if (negative) n = -n;
  return Rational(std::move(n), std::move(d));
}

/// Lowest-terms rendering: "n" when the denominator is 1, else "n/d".
inline std::string render(const Rational& x) {
  std::string out = numerator(x).str();
  if (denominator(x) != 1) {
    out += '/';
    out += denominator(x).str();
  }
  return out;
}

/// Rising factorial (q)_n = q(q+1)...(q+n-1), with (q)_0 = 1.
inline Rational pochhammer(const Rational& q, unsigned n) {
  Rational result(1);
  for (unsigned k = 0; k < n; ++k) result *= q + k;
  return result;
}

/// Hypergeometric parameters (a, b, c), each strictly positive.
class ParameterTriple {
 public:
  ParameterTriple(Rational a, Rational b, Rational c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (a_ <= 0 || b_ <= 0 || c_ <= 0)
      throw NonPositiveParameter("parameters must satisfy a > 0, b > 0, c > 0");
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }

  bool operator==(const ParameterTriple&) const = default;

 private:
  Rational a_, b_, c_;
};

inline ParameterTriple make_params(Rational a, Rational b, Rational c) {
  return ParameterTriple(std::move(a), std::move(b), std::move(c));
}

}  // namespace hypam

#endif  // HYPAM_RATIONAL_HPP
