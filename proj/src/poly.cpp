#include "esp/poly.hpp"

#include <algorithm>
#include <sstream>

namespace esp {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::pair<int, unsigned>> powers) {
  std::sort(powers.begin(), powers.end());
  for (const auto& [var, exp] : powers) {
    if (var < 1) throw Error("variable indices are 1-based");
    if (exp == 0) continue;
    if (!powers_.empty() && powers_.back().first == var) powers_.back().second += exp;
    else powers_.emplace_back(var, exp);
    degree_ += exp;
  }
}

unsigned Monomial::exponent(int variable) const {
  for (const auto& [var, exp] : powers_)
    if (var == variable) return exp;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.powers_.reserve(powers_.size() + other.powers_.size());
  auto a = powers_.begin();
  auto b = other.powers_.begin();
  while (a != powers_.end() || b != other.powers_.end()) {
    if (b == other.powers_.end() || (a != powers_.end() && a->first < b->first)) {
      out.powers_.push_back(*a++);
    } else if (a == powers_.end() || b->first < a->first) {
      out.powers_.push_back(*b++);
    } else {
      out.powers_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  // Walk both sparse exponent vectors in variable order; the first variable
  // where exponents differ decides, larger exponent on a lower index wins.
  auto a = powers_.begin();
  auto b = other.powers_.begin();
  while (a != powers_.end() && b != other.powers_.end()) {
    if (a->first != b->first) return a->first < b->first ? std::strong_ordering::greater
                                                        : std::strong_ordering::less;
    if (a->second != b->second) return a->second <=> b->second;
    ++a;
    ++b;
  }
  if (a != powers_.end()) return std::strong_ordering::greater;
  if (b != other.powers_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(int ambient_dim) : ambient_dim_(ambient_dim) {
  if (ambient_dim < 1) throw Error("ambient dimension must be positive");
}

Polynomial::Polynomial(int ambient_dim, TermMap terms) : Polynomial(ambient_dim) {
  for (auto& [m, c] : terms) add_term(m, c);
}

Polynomial Polynomial::constant(int ambient_dim, const Rational& value) {
  Polynomial p(ambient_dim);
  p.add_term(Monomial(), value);
  return p;
}

Polynomial Polynomial::variable(int ambient_dim, int index) {
  Polynomial p(ambient_dim);
  p.add_term(Monomial::variable(index), 1);
  return p;
}

Polynomial Polynomial::linear(std::span<const Rational> coeffs) {
  Polynomial p(static_cast<int>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    p.add_term(Monomial::variable(static_cast<int>(i) + 1), coeffs[i]);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (m.max_variable() > ambient_dim_)
    throw Error("monomial uses x_" + std::to_string(m.max_variable()) + " beyond ambient dimension " +
                std::to_string(ambient_dim_));
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw Error("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (ambient_dim_ != other.ambient_dim_)
    throw Error("ambient dimension mismatch: " + std::to_string(ambient_dim_) + " vs " +
                std::to_string(other.ambient_dim_));
}

Polynomial Polynomial::operator-() const { return *this * Rational(-1); }

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  out += other;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  out -= other;
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  check_compatible(other);
  Polynomial out(ambient_dim_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::operator*(const Rational& scalar) const {
  Polynomial out(ambient_dim_);
  if (scalar == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c * scalar);
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ambient_dim_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return ambient_dim_ == other.ambient_dim_ && terms_ == other.terms_;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != ambient_dim_)
    throw Error("point has " + std::to_string(point.size()) + " coordinates, expected " +
                std::to_string(ambient_dim_));
  Rational acc = 0;
  Rational power;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [var, exp] : m.powers()) {
      const Rational& base = point[static_cast<std::size_t>(var - 1)];
      if (exp == 1) {
        term *= base;
      } else {
        mpz_pow_ui(power.get_num_mpz_t(), base.get_num_mpz_t(), exp);
        mpz_pow_ui(power.get_den_mpz_t(), base.get_den_mpz_t(), exp);
        term *= power;
      }
    }
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::derivative(int index) const {
  Polynomial out(ambient_dim_);
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponent(index);
    if (e == 0) continue;
    std::vector<std::pair<int, unsigned>> powers = m.powers();
    for (auto& pw : powers)
      if (pw.first == index) pw.second -= 1;
    out.add_term(Monomial(std::move(powers)), c * e);
  }
  return out;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> replacements) const {
  if (static_cast<int>(replacements.size()) != ambient_dim_)
    throw Error("substitute needs one replacement per variable");
  const int target_dim = replacements.empty() ? 1 : replacements.front().ambient_dim();
  Polynomial out(target_dim);
  for (const auto& [m, c] : terms_) {
    Polynomial term = constant(target_dim, c);
    for (const auto& [var, exp] : m.powers()) term = term * replacements[static_cast<std::size_t>(var - 1)].pow(exp);
    out += term;
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    const bool unit = mag == 1 && m.degree() > 0;
    if (!unit) os << esp::to_string(mag);
    bool first_factor = unit;
    for (const auto& [var, exp] : m.powers()) {
      if (!first_factor) os << "*";
      first_factor = false;
      os << "x" << var;
      if (exp > 1) os << "^" << exp;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(int ambient_dim)
    : numerator_(ambient_dim), denominator_(Polynomial::constant(ambient_dim, 1)) {}

RationalFunction::RationalFunction(Polynomial numerator)
    : numerator_(std::move(numerator)), denominator_(Polynomial::constant(numerator_.ambient_dim(), 1)) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (denominator_.is_zero()) throw Error("rational function with zero denominator");
  if (numerator_.ambient_dim() != denominator_.ambient_dim())
    throw Error("numerator and denominator ambient dimensions differ");
}

Polynomial RationalFunction::as_polynomial() const {
  if (!is_polynomial()) throw Error("rational function has a non-constant denominator");
  return numerator_ * (Rational(1) / denominator_.constant_value());
}

RationalFunction RationalFunction::operator-() const { return {-numerator_, denominator_}; }

RationalFunction RationalFunction::operator+(const RationalFunction& other) const {
  if (denominator_ == other.denominator_) return {numerator_ + other.numerator_, denominator_};
  return {numerator_ * other.denominator_ + other.numerator_ * denominator_,
          denominator_ * other.denominator_};
}

RationalFunction RationalFunction::operator-(const RationalFunction& other) const { return *this + (-other); }

RationalFunction RationalFunction::operator*(const RationalFunction& other) const {
  return {numerator_ * other.numerator_, denominator_ * other.denominator_};
}

RationalFunction RationalFunction::operator/(const RationalFunction& other) const {
  if (other.is_zero()) throw Error("division by the zero rational function");
  return {numerator_ * other.denominator_, denominator_ * other.numerator_};
}

RationalFunction RationalFunction::operator*(const Rational& scalar) const {
  return {numerator_ * scalar, denominator_};
}

bool RationalFunction::equivalent(const RationalFunction& other) const {
  return numerator_ * other.denominator_ == other.numerator_ * denominator_;
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  const Rational den = denominator_.evaluate(point);
  if (den == 0) throw PoleError("denominator " + denominator_.to_string() + " vanishes at the point");
  return numerator_.evaluate(point) / den;
}

std::string RationalFunction::to_string() const {
  if (denominator_ == Polynomial::constant(ambient_dim(), 1)) return numerator_.to_string();
  return "(" + numerator_.to_string() + ") / (" + denominator_.to_string() + ")";
}

// ---------------------------------------------------------------------------
// Elementary symmetric machinery

namespace {

void check_subset(int n, const Subset& S) {
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i] < 1 || S[i] > n)
      throw Error("subset element " + std::to_string(S[i]) + " outside [1, " + std::to_string(n) + "]");
    if (i > 0 && S[i] <= S[i - 1]) throw Error("subset must be strictly increasing");
  }
}

void collect_products(const Subset& S, int k, std::size_t start, std::vector<std::pair<int, unsigned>>& chosen,
                      Polynomial::TermMap& terms) {
  if (static_cast<int>(chosen.size()) == k) {
    terms.emplace(Monomial(chosen), Rational(1));
    return;
  }
  const std::size_t remaining = static_cast<std::size_t>(k) - chosen.size();
  for (std::size_t i = start; i + remaining <= S.size(); ++i) {
    chosen.emplace_back(S[i], 1U);
    collect_products(S, k, i + 1, chosen, terms);
    chosen.pop_back();
  }
}

}  // namespace

Polynomial elem_sym(int n, const Subset& S, int k) {
  check_subset(n, S);
  if (k < 0) throw Error("negative degree");
  if (k > static_cast<int>(S.size()))
    throw Error("degree exceeds set size: e_" + std::to_string(k) + " of a " + std::to_string(S.size()) +
                "-element set");
  Polynomial::TermMap terms;
  std::vector<std::pair<int, unsigned>> chosen;
  collect_products(S, k, 0, chosen, terms);
  return Polynomial(n, std::move(terms));
}

RationalVector elementary_symmetric_values(std::span<const Rational> values, int max_degree) {
  RationalVector e(static_cast<std::size_t>(max_degree) + 1, Rational(0));
  e[0] = 1;
  int filled = 0;
  for (const Rational& v : values) {
    filled = std::min(filled + 1, max_degree);
    for (int j = filled; j >= 1; --j) e[static_cast<std::size_t>(j)] += v * e[static_cast<std::size_t>(j - 1)];
  }
  return e;
}

Polynomial partial_derivative(const Polynomial& p, const Subset& S) {
  check_subset(p.ambient_dim(), S);
  Polynomial out = p;
  for (int j : S) out = out.derivative(j);
  return out;
}

RationalFunction q_ratio(int n, const Subset& S, int k) {
  if (k < 1) throw Error("q_k requires k >= 1");
  return {elem_sym(n, S, k), elem_sym(n, S, k - 1)};
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) { return p.evaluate(point); }

Rational evaluate(const RationalFunction& f, std::span<const Rational> point) { return f.evaluate(point); }

UnivariatePolynomial restrict_univariate(const Polynomial& p, std::span<const Rational> x,
                                         std::span<const Rational> dir) {
  const auto n = static_cast<std::size_t>(p.ambient_dim());
  if (x.size() != n || dir.size() != n) throw Error("restrict_univariate: dimension mismatch");
  UnivariatePolynomial out;
  for (const auto& [m, c] : p.terms()) {
    UnivariatePolynomial term({c});
    for (const auto& [var, exp] : m.powers()) {
      const auto i = static_cast<std::size_t>(var - 1);
      const UnivariatePolynomial factor({x[i], dir[i]});
      for (unsigned e = 0; e < exp; ++e) term = term * factor;
    }
    out = out + term;
  }
  return out;
}

Polynomial directional_derivative(const Polynomial& p, std::span<const Rational> v) {
  if (static_cast<int>(v.size()) != p.ambient_dim()) throw Error("directional_derivative: dimension mismatch");
  Polynomial out(p.ambient_dim());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out += p.derivative(static_cast<int>(i) + 1) * v[i];
  return out;
}

Subset complement(int n, const Subset& S) {
  check_subset(n, S);
  Subset out;
  for (int i = 1; i <= n; ++i)
    if (!std::binary_search(S.begin(), S.end(), i)) out.push_back(i);
  return out;
}

std::vector<Subset> subsets_of_size(int n, int size) {
  std::vector<Subset> out;
  if (size < 0 || size > n) return out;
  Subset current;
  auto rec = [&](auto& self, int next) -> void {
    if (static_cast<int>(current.size()) == size) {
      out.push_back(current);
      return;
    }
    for (int i = next; i <= n - (size - static_cast<int>(current.size())) + 1; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

EngineCheck check_engine_recursion(int n, const Subset& S, int k, std::span<const Rational> point) {
  if (k < 2) throw Error("engine recursion needs k >= 2");
  if (k > static_cast<int>(S.size())) throw Error("degree exceeds set size");
  try {
    const Rational lhs = q_ratio(n, S, k).evaluate(point) * k;
    Rational rhs = 0;
    for (int j : S) {
      Subset rest;
      for (int i : S)
        if (i != j) rest.push_back(i);
      const Rational q = q_ratio(n, rest, k - 1).evaluate(point);
      const Rational& xj = point[static_cast<std::size_t>(j - 1)];
      const Rational den = xj + q;
      if (den == 0) return EngineCheck::kPole;
      rhs += xj * q / den;
    }
    return lhs == rhs ? EngineCheck::kHolds : EngineCheck::kFails;
  } catch (const PoleError&) {
    return EngineCheck::kPole;
  }
}

}  // namespace esp
