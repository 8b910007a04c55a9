#pragma once

// Exact sparse multivariate polynomials over the rationals, plus the
// elementary-symmetric machinery the graph and pencil layers are built on.
//
// Variables are 1-based: x_1 .. x_n where n is the ambient dimension.

#include <compare>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esp/rational.hpp"
#include "esp/univariate.hpp"

namespace esp {

/// Sorted list of distinct 1-based variable indices.
using Subset = std::vector<int>;

/// Product of powers x_i^a_i; zero exponents are never stored.
class Monomial {
 public:
  Monomial() = default;
  /// Pairs of (variable, exponent); zero exponents dropped, duplicates merged.
  explicit Monomial(std::vector<std::pair<int, unsigned>> powers);

  static Monomial variable(int index) { return Monomial({{index, 1U}}); }

  const std::vector<std::pair<int, unsigned>>& powers() const { return powers_; }
  unsigned degree() const { return degree_; }
  unsigned exponent(int variable) const;
  int max_variable() const { return powers_.empty() ? 0 : powers_.back().first; }

  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial& other) const = default;
  /// Graded lexicographic: total degree first, then x_1 > x_2 > ...
  std::strong_ordering operator<=>(const Monomial& other) const;

 private:
  std::vector<std::pair<int, unsigned>> powers_;
  unsigned degree_ = 0;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit Polynomial(int ambient_dim = 1);
  Polynomial(int ambient_dim, TermMap terms);

  static Polynomial constant(int ambient_dim, const Rational& value);
  static Polynomial variable(int ambient_dim, int index);
  /// Linear form sum_i coeffs[i-1] x_i.
  static Polynomial linear(std::span<const Rational> coeffs);

  int ambient_dim() const { return ambient_dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Returns the constant term (zero for the zero polynomial); throws if not constant.
  Rational constant_value() const;
  Rational coefficient(const Monomial& m) const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(const Rational& scalar) const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial pow(unsigned exponent) const;

  /// Ambient dimensions must agree; equal polynomials have identical term maps.
  bool operator==(const Polynomial& other) const;

  Rational evaluate(std::span<const Rational> point) const;
  /// d/dx_index.
  Polynomial derivative(int index) const;
  /// Substitutes x_j -> replacements[j-1]; all replacements share one ambient dimension.
  Polynomial substitute(std::span<const Polynomial> replacements) const;

  std::string to_string() const;

 private:
  void check_compatible(const Polynomial& other) const;
  void add_term(const Monomial& m, const Rational& c);

  int ambient_dim_;
  TermMap terms_;
};

inline Polynomial operator*(const Rational& scalar, const Polynomial& p) { return p * scalar; }

/// Quotient of polynomials, never reduced; equality is by cross-multiplication.
class RationalFunction {
 public:
  explicit RationalFunction(int ambient_dim = 1);
  RationalFunction(Polynomial numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const { return numerator_; }
  const Polynomial& denominator() const { return denominator_; }
  int ambient_dim() const { return numerator_.ambient_dim(); }

  bool is_zero() const { return numerator_.is_zero(); }
  /// True when the denominator is a nonzero constant.
  bool is_polynomial() const { return denominator_.is_constant(); }
  /// Numerator / constant denominator; throws unless is_polynomial().
  Polynomial as_polynomial() const;

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& other) const;
  RationalFunction operator-(const RationalFunction& other) const;
  RationalFunction operator*(const RationalFunction& other) const;
  RationalFunction operator/(const RationalFunction& other) const;
  RationalFunction operator*(const Rational& scalar) const;

  /// Cross-multiplied polynomial identity.
  bool equivalent(const RationalFunction& other) const;

  /// Throws PoleError if the denominator vanishes at the point.
  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;

 private:
  Polynomial numerator_;
  Polynomial denominator_;
};

/// e_k(S) in ambient dimension n. e_0(S) = 1. Throws when k > |S|.
Polynomial elem_sym(int n, const Subset& S, int k);

/// e_k(x_1..x_n).
inline Polynomial elem_sym(int n, int k) {
  Subset all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  return elem_sym(n, all, k);
}

/// Numeric e_0..e_{max_degree} of the given values (standard product recursion).
RationalVector elementary_symmetric_values(std::span<const Rational> values, int max_degree);

/// ∂^S p, each variable in S differentiated once.
Polynomial partial_derivative(const Polynomial& p, const Subset& S);

/// q_k(S) = e_k(S) / e_{k-1}(S), unreduced.
RationalFunction q_ratio(int n, const Subset& S, int k);

Rational evaluate(const Polynomial& p, std::span<const Rational> point);
Rational evaluate(const RationalFunction& f, std::span<const Rational> point);

/// Coefficients of t -> p(x + t*dir).
UnivariatePolynomial restrict_univariate(const Polynomial& p, std::span<const Rational> x,
                                         std::span<const Rational> dir);

/// sum_i v_i dp/dx_i.
Polynomial directional_derivative(const Polynomial& p, std::span<const Rational> v);

enum class EngineCheck { kHolds, kFails, kPole };

/// Exact check at a point of k q_k(S) = sum_j x_j q_{k-1}(S-j) / (x_j + q_{k-1}(S-j)).
EngineCheck check_engine_recursion(int n, const Subset& S, int k, std::span<const Rational> point);

/// [n] \ S.
Subset complement(int n, const Subset& S);

/// All subsets of [n] with exactly `size` elements, in lexicographic order.
std::vector<Subset> subsets_of_size(int n, int size);

}  // namespace esp
