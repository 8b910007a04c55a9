#include "esp/univariate.hpp"

#include <algorithm>
#include <sstream>

namespace esp {

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

UnivariatePolynomial UnivariatePolynomial::monomial(const Rational& c, int power) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(power) + 1, Rational(0));
  coeffs.back() = c;
  return UnivariatePolynomial(std::move(coeffs));
}

void UnivariatePolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UnivariatePolynomial::coefficient(int power) const {
  if (power < 0 || power > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(power)];
}

const Rational& UnivariatePolynomial::leading() const {
  if (coeffs_.empty()) throw Error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational UnivariatePolynomial::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial UnivariatePolynomial::operator+(const UnivariatePolynomial& other) const {
  std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial UnivariatePolynomial::operator-(const UnivariatePolynomial& other) const {
  return *this + other * Rational(-1);
}

UnivariatePolynomial UnivariatePolynomial::operator*(const UnivariatePolynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial UnivariatePolynomial::operator*(const Rational& scalar) const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c *= scalar;
  return UnivariatePolynomial(std::move(out));
}

std::pair<UnivariatePolynomial, UnivariatePolynomial> UnivariatePolynomial::divmod(
    const UnivariatePolynomial& divisor) const {
  if (divisor.is_zero()) throw Error("division by the zero polynomial");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {UnivariatePolynomial(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd) + 1, Rational(0));
  const Rational& lead = divisor.leading();
  for (int i = degree(); i >= dd; --i) {
    const Rational c = rem[static_cast<std::size_t>(i)] / lead;
    quot[static_cast<std::size_t>(i - dd)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(i - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {UnivariatePolynomial(std::move(quot)), UnivariatePolynomial(std::move(rem))};
}

int UnivariatePolynomial::root_multiplicity(const Rational& a) const {
  if (is_zero()) throw Error("root multiplicity of the zero polynomial");
  int mult = 0;
  UnivariatePolynomial p = *this;
  const UnivariatePolynomial factor({-a, Rational(1)});
  while (p.degree() > 0 && p.evaluate(a) == 0) {
    p = p.divmod(factor).first;
    ++mult;
  }
  return mult;
}

UnivariatePolynomial UnivariatePolynomial::deflate(const Rational& a) const {
  UnivariatePolynomial p = *this;
  const UnivariatePolynomial factor({-a, Rational(1)});
  while (p.degree() > 0 && p.evaluate(a) == 0) p = p.divmod(factor).first;
  return p;
}

std::string UnivariatePolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    if (i == 0 || mag != 1) os << esp::to_string(mag);
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading());
}

std::vector<UnivariatePolynomial> sturm_sequence(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw Error("Sturm sequence of the zero polynomial");
  std::vector<UnivariatePolynomial> seq{p};
  UnivariatePolynomial next = p.derivative();
  while (!next.is_zero()) {
    seq.push_back(next);
    const auto& a = seq[seq.size() - 2];
    const auto& b = seq.back();
    next = a.divmod(b).second * Rational(-1);
  }
  return seq;
}

namespace {

int variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<UnivariatePolynomial>& seq, const Rational& t) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& q : seq) signs.push_back(q.sign_at(t));
  return variations(signs);
}

int variations_at_infinity(const std::vector<UnivariatePolynomial>& seq, bool positive) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& q : seq) {
    int s = sgn(q.leading());
    if (!positive && q.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

}  // namespace

int distinct_real_root_count(const UnivariatePolynomial& p) {
  const auto seq = sturm_sequence(p);
  return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

int roots_above(const UnivariatePolynomial& p, const Rational& a) {
  const UnivariatePolynomial q = p.deflate(a);
  if (q.degree() <= 0) return 0;
  const auto seq = sturm_sequence(q);
  return variations_at(seq, a) - variations_at_infinity(seq, true);
}

int roots_between(const UnivariatePolynomial& p, const Rational& a, const Rational& b) {
  if (!(a < b)) throw Error("roots_between requires a < b");
  const UnivariatePolynomial q = p.deflate(a).deflate(b);
  if (q.degree() <= 0) return 0;
  const auto seq = sturm_sequence(q);
  return variations_at(seq, a) - variations_at(seq, b);
}

bool is_real_rooted(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw Error("real-rootedness of the zero polynomial");
  if (p.degree() == 0) return true;
  const int square_free_degree = p.degree() - gcd(p, p.derivative()).degree();
  return distinct_real_root_count(p) == square_free_degree;
}

Rational cauchy_root_bound(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw Error("root bound of the zero polynomial");
  Rational worst = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational ratio = abs(p.coefficient(i) / p.leading());
    if (ratio > worst) worst = ratio;
  }
  return worst + 1;
}

RootBracket largest_root_bracket(const UnivariatePolynomial& p, const Rational& width) {
  if (p.degree() < 1 || distinct_real_root_count(p) == 0)
    throw Error("largest_root_bracket needs a real root");
  Rational hi = cauchy_root_bound(p);
  Rational lo = -hi;
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (p.evaluate(mid) == 0 && roots_above(p, mid) == 0) return {mid, mid, mid};
    if (roots_above(p, mid) > 0) lo = mid;
    else hi = mid;
  }
  return {lo, hi, std::nullopt};
}

}  // namespace esp
