#include "esp/pencil.hpp"

#include <algorithm>

#include "esp/graph.hpp"

namespace esp {

void IntegerSymmetricMatrix::add(int i, int j, const Integer& value) {
  if (i < 0 || j < 0 || i >= size || j >= size) throw Error("matrix index out of range");
  if (i > j) std::swap(i, j);
  if (value == 0) return;
  auto [it, inserted] = upper.try_emplace({i, j}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) upper.erase(it);
  }
}

Integer IntegerSymmetricMatrix::get(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = upper.find({i, j});
  return it == upper.end() ? Integer(0) : it->second;
}

SymmetricSparseMatrix IntegerSymmetricMatrix::to_rational() const {
  SymmetricSparseMatrix out(size);
  for (const auto& [ij, v] : upper) out.add(ij.first, ij.second, Rational(v));
  return out;
}

namespace {

// Pencil of G_{n,k} at r = k; k = 0 gives the 1x1 pencil [x_1 + ... + x_n].
Pencil build_laplacian_pencil(int n, int k) {
  const LabeledGraph g = build_G(n, k);
  const EdgeWeightAssignment w = assign_weights(g, k);
  const SymbolicLaplacian reduced = reduced_weighted_laplacian(g, w, "z");

  Pencil p;
  p.n = n;
  p.k = k;
  p.m = reduced.size();
  p.matrices.assign(static_cast<std::size_t>(n), IntegerSymmetricMatrix{p.m, {}});
  for (const auto& [ij, f] : reduced.upper()) {
    const Polynomial entry = f.as_polynomial();
    for (const auto& [mono, c] : entry.terms()) {
      if (mono.degree() != 1 || !is_integer(c)) throw Error("internal: pencil entry is not an integer linear form");
      const int var = mono.powers().front().first;
      p.matrices[static_cast<std::size_t>(var - 1)].add(ij.first, ij.second, c.get_num());
    }
  }
  p.provenance.n = n;
  p.provenance.k = k;
  p.provenance.deleted_vertex = "z";
  p.provenance.ordering = g.vertex_labels();

  const RationalVector unit = ones(n);
  const Rational det = determinant(pencil_eval(p, unit));
  p.provenance.constant = k == 0 ? det / elementary_symmetric_values(unit, 1)[1]
                                 : det / hkk_closed_form_value(n, k, unit);
  return p;
}

RationalVector select(std::span<const Rational> point, const Subset& S) {
  RationalVector out;
  out.reserve(S.size());
  for (int i : S) out.push_back(point[static_cast<std::size_t>(i - 1)]);
  return out;
}

void check_range(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw Error("k out of range: need 1 <= k <= n-1");
}

}  // namespace

Pencil build_esp_pencil(int n, int k) {
  check_range(n, k);
  return build_laplacian_pencil(n, k);
}

Rational hkk_closed_form_value(int n, int k, std::span<const Rational> point) {
  check_range(n, k);
  if (static_cast<int>(point.size()) != n) throw Error("point dimension mismatch");
  Rational value = elementary_symmetric_values(point, k + 1)[static_cast<std::size_t>(k + 1)];
  for (int size = 0; size <= k - 1; ++size) {
    const unsigned exponent =
        static_cast<unsigned>(factorial(static_cast<unsigned>(size)).get_ui()) * static_cast<unsigned>(n - size - 1);
    for (const Subset& S : subsets_of_size(n, size)) {
      const RationalVector rest = select(point, complement(n, S));
      const Rational factor = elementary_symmetric_values(rest, k - size)[static_cast<std::size_t>(k - size)];
      Rational power;
      mpz_pow_ui(power.get_num_mpz_t(), factor.get_num_mpz_t(), exponent);
      mpz_pow_ui(power.get_den_mpz_t(), factor.get_den_mpz_t(), exponent);
      power.canonicalize();
      value *= power;
    }
  }
  return value;
}

Polynomial hkk_closed_form(int n, int k) {
  check_range(n, k);
  Polynomial out = elem_sym(n, k + 1);
  const Polynomial ek = elem_sym(n, k);
  for (int size = 0; size <= k - 1; ++size) {
    const unsigned exponent =
        static_cast<unsigned>(factorial(static_cast<unsigned>(size)).get_ui()) * static_cast<unsigned>(n - size - 1);
    for (const Subset& S : subsets_of_size(n, size)) out = out * partial_derivative(ek, S).pow(exponent);
  }
  return out;
}

int hkk_closed_form_degree(int n, int k) {
  check_range(n, k);
  long degree = k + 1;
  for (int size = 0; size <= k - 1; ++size)
    degree += binomial(static_cast<unsigned>(n), static_cast<unsigned>(size)).get_si() * (k - size) *
              factorial(static_cast<unsigned>(size)).get_si() * (n - size - 1);
  return static_cast<int>(degree);
}

SymmetricSparseMatrix pencil_eval(const Pencil& p, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != p.n)
    throw Error("point has " + std::to_string(x.size()) + " coordinates, pencil has " + std::to_string(p.n) +
                " variables");
  SymmetricSparseMatrix out(p.m);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    for (const auto& [ij, v] : p.matrices[j].upper) out.add(ij.first, ij.second, x[j] * v);
  }
  return out;
}

PsdCertificate psd_check_exact(const std::vector<std::vector<Rational>>& m) {
  return psd_check(SymmetricSparseMatrix::from_dense(m));
}

PsdCertificate psd_check_exact(const SymmetricSparseMatrix& m) { return psd_check(m); }

std::string to_string(Membership verdict) {
  switch (verdict) {
    case Membership::kInterior: return "INTERIOR";
    case Membership::kBoundary: return "BOUNDARY";
    case Membership::kOutside: return "OUTSIDE";
  }
  return "?";
}

std::pair<Membership, PsdCertificate> membership_with_certificate(const Pencil& p, std::span<const Rational> x) {
  PsdCertificate cert = psd_check(pencil_eval(p, x));
  Membership verdict = Membership::kOutside;
  if (cert.verdict == PsdVerdict::kPositiveDefinite) verdict = Membership::kInterior;
  else if (cert.verdict == PsdVerdict::kPositiveSemidefinite) verdict = Membership::kBoundary;
  return {verdict, std::move(cert)};
}

Membership membership(const Pencil& p, std::span<const Rational> x) {
  return membership_with_certificate(p, x).first;
}

bool PencilCertificates::all_psd() const {
  return std::all_of(matrices.begin(), matrices.end(),
                     [](const PsdCertificate& c) { return c.verdict != PsdVerdict::kNotPsd; });
}

PencilCertificates certify_pencil(const Pencil& p) {
  PencilCertificates out;
  for (const auto& b : p.matrices) out.matrices.push_back(psd_check(b.to_rational()));
  out.sum = psd_check(pencil_eval(p, ones(p.n)));
  return out;
}

LinearFormsSystem::LinearFormsSystem(std::vector<RationalVector> coefficients, RationalVector base)
    : coefficients_(std::move(coefficients)), base_(std::move(base)) {
  if (coefficients_.empty()) throw Error("at least one linear form is required");
  if (base_.empty()) throw Error("base point must be nonempty");
  for (std::size_t j = 0; j < coefficients_.size(); ++j) {
    auto& row = coefficients_[j];
    if (row.size() != base_.size()) throw Error("linear form " + std::to_string(j + 1) + " has wrong length");
    Rational value = 0;
    for (std::size_t i = 0; i < row.size(); ++i) value += row[i] * base_[i];
    if (value == 0)
      throw Error("e not admissible: inadmissible base point, form " + std::to_string(j + 1) + " vanishes at e");
    if (value < 0)
      for (auto& c : row) c = -c;
  }
}

Polynomial LinearFormsSystem::form(int j) const {
  return Polynomial::linear(coefficients_.at(static_cast<std::size_t>(j - 1)));
}

Polynomial LinearFormsSystem::product() const {
  Polynomial h = Polynomial::constant(n(), 1);
  for (int j = 1; j <= d(); ++j) h = h * form(j);
  return h;
}

Pencil derivative_cone_pencil(const LinearFormsSystem& forms, int kderiv) {
  const int d = forms.d();
  if (kderiv < 1 || kderiv > d - 1) throw Error("kderiv out of range: need 1 <= kderiv <= d-1");
  // With every form divided by its (positive) value at e, D_e^kderiv h is a
  // positive multiple of e_{d-kderiv} of the normalized forms.
  const Pencil base = build_laplacian_pencil(d, d - kderiv - 1);

  std::vector<RationalVector> T = forms.coefficients();
  const RationalVector& e = forms.base_point();
  Integer scale = 1;
  for (auto& row : T) {
    Rational at_e = 0;
    for (std::size_t i = 0; i < row.size(); ++i) at_e += row[i] * e[i];
    for (auto& c : row) {
      c /= at_e;
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  for (auto& row : T)
    for (auto& c : row) c *= scale;

  Pencil out = substitute_linear(base, T);
  out.provenance.derivative = DerivativeProvenance{d, kderiv, scale};
  return out;
}

Pencil substitute_linear(const Pencil& p, const std::vector<RationalVector>& T) {
  if (static_cast<int>(T.size()) != p.n)
    throw Error("substitution matrix needs " + std::to_string(p.n) + " rows, got " + std::to_string(T.size()));
  const std::size_t target = T.empty() ? 0 : T.front().size();
  if (target == 0) throw Error("substitution matrix has no columns");
  Pencil out;
  out.n = static_cast<int>(target);
  out.k = p.k;
  out.m = p.m;
  out.provenance = p.provenance;
  out.matrices.assign(target, IntegerSymmetricMatrix{p.m, {}});
  for (std::size_t j = 0; j < T.size(); ++j) {
    if (T[j].size() != target) throw Error("substitution matrix rows differ in length");
    for (std::size_t i = 0; i < target; ++i) {
      const Rational& t = T[j][i];
      if (t == 0) continue;
      if (!is_integer(t)) throw Error("substitute_linear requires integer coefficients");
      for (const auto& [ij, v] : p.matrices[j].upper) out.matrices[i].add(ij.first, ij.second, t.get_num() * v);
    }
  }
  return out;
}

}  // namespace esp
