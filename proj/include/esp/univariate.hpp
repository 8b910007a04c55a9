#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esp/rational.hpp"

namespace esp {

/// Dense univariate polynomial; coefficient i multiplies t^i.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Rational> coefficients);

  static UnivariatePolynomial monomial(const Rational& c, int power);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coefficient(int power) const;
  const Rational& leading() const;

  Rational evaluate(const Rational& t) const;
  int sign_at(const Rational& t) const { return sgn(evaluate(t)); }
  UnivariatePolynomial derivative() const;

  UnivariatePolynomial operator+(const UnivariatePolynomial& other) const;
  UnivariatePolynomial operator-(const UnivariatePolynomial& other) const;
  UnivariatePolynomial operator*(const UnivariatePolynomial& other) const;
  UnivariatePolynomial operator*(const Rational& scalar) const;
  bool operator==(const UnivariatePolynomial& other) const = default;

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& divisor) const;

  /// Multiplicity of t = a as a root (0 if not a root).
  int root_multiplicity(const Rational& a) const;
  /// Removes every factor (t - a).
  UnivariatePolynomial deflate(const Rational& a) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic-normalized gcd; zero if both are zero.
UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b);

/// Canonical Sturm chain p, p', -rem(p, p'), ... ending at a multiple of gcd(p, p').
std::vector<UnivariatePolynomial> sturm_sequence(const UnivariatePolynomial& p);

/// Number of distinct real roots.
int distinct_real_root_count(const UnivariatePolynomial& p);

/// Number of distinct real roots in the open interval (a, +inf).
int roots_above(const UnivariatePolynomial& p, const Rational& a);

/// Number of distinct real roots in the open interval (a, b), a < b.
int roots_between(const UnivariatePolynomial& p, const Rational& a, const Rational& b);

/// True when every complex root is real (counted with multiplicity).
bool is_real_rooted(const UnivariatePolynomial& p);

/// Every real root lies in [-bound, bound].
Rational cauchy_root_bound(const UnivariatePolynomial& p);

/// Bracket around the largest real root of a polynomial with at least one real root.
struct RootBracket {
  Rational lower;
  Rational upper;
  /// Set when bisection landed exactly on the root; then lower == upper == *exact.
  std::optional<Rational> exact;
};

/// Isolates the largest real root to an interval of width <= `width` by Sturm
/// bisection. For a non-exact bracket, lower < root < upper strictly.
RootBracket largest_root_bracket(const UnivariatePolynomial& p, const Rational& width);

}  // namespace esp
