#pragma once

// Integer PSD pencils x -> sum_j x_j B_j whose determinant is H_{k,k}, the
// cone-membership decision built on them, and derivative-cone pencils for
// products of linear forms.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esp/linalg.hpp"
#include "esp/poly.hpp"

namespace esp {

/// Symmetric integer matrix stored as its upper triangle.
struct IntegerSymmetricMatrix {
  int size = 0;
  std::map<std::pair<int, int>, Integer> upper;  // (row, col) with row <= col, nonzero values

  void add(int i, int j, const Integer& value);
  Integer get(int i, int j) const;
  SymmetricSparseMatrix to_rational() const;
  bool operator==(const IntegerSymmetricMatrix& other) const = default;
};

struct DerivativeProvenance {
  int forms = 0;   // d
  int kderiv = 0;  // order of the directional derivative
  Integer scale;   // common multiplier applied to every form after dividing it by its value at e
  bool operator==(const DerivativeProvenance& other) const = default;
};

struct PencilProvenance {
  int n = 0;  // parameters of the underlying G_{n,k}
  int k = 0;
  std::string deleted_vertex = "z";
  std::vector<std::string> ordering;  // vertex order of the full Laplacian
  Rational constant;                  // det(pencil) / closed-form product
  std::optional<DerivativeProvenance> derivative;
  bool operator==(const PencilProvenance& other) const = default;
};

/// sum_j x_j B_j with symmetric integer B_j of common order m.
struct Pencil {
  int n = 0;  // number of variables
  int k = 0;
  int m = 0;
  std::vector<IntegerSymmetricMatrix> matrices;  // B_1 .. B_n
  PencilProvenance provenance;

  bool operator==(const Pencil& other) const = default;
};

/// Pencil of the reduced (at z) weighted Laplacian of G_{n,k} with r = k.
/// Requires 1 <= k <= n-1.
Pencil build_esp_pencil(int n, int k);

/// e_{k+1} * prod_{|S|<=k-1} (d^S e_k)^{|S|!(n-|S|-1)} at a point; no leading constant.
Rational hkk_closed_form_value(int n, int k, std::span<const Rational> point);
/// Same product as a polynomial.
Polynomial hkk_closed_form(int n, int k);
/// Total degree of the closed-form product.
int hkk_closed_form_degree(int n, int k);

SymmetricSparseMatrix pencil_eval(const Pencil& p, std::span<const Rational> x);

/// Exact PSD test; throws on a non-symmetric matrix.
PsdCertificate psd_check_exact(const std::vector<std::vector<Rational>>& m);
PsdCertificate psd_check_exact(const SymmetricSparseMatrix& m);

enum class Membership { kInterior, kBoundary, kOutside };
std::string to_string(Membership verdict);
inline bool is_member(Membership verdict) { return verdict != Membership::kOutside; }

Membership membership(const Pencil& p, std::span<const Rational> x);
/// Membership together with the certificate behind it.
std::pair<Membership, PsdCertificate> membership_with_certificate(const Pencil& p, std::span<const Rational> x);

struct PencilCertificates {
  std::vector<PsdCertificate> matrices;  // one per B_j
  PsdCertificate sum;                    // for sum_j B_j
  bool all_psd() const;
  bool sum_pd() const { return sum.verdict == PsdVerdict::kPositiveDefinite; }
};

/// Certifies each B_j PSD and sum_j B_j PD by exact elimination.
PencilCertificates certify_pencil(const Pencil& p);

/// d linear forms in n variables with a base point where every form is positive.
class LinearFormsSystem {
 public:
  /// Forms whose value at `base` is negative are negated; a zero value is an error.
  LinearFormsSystem(std::vector<RationalVector> coefficients, RationalVector base);

  int d() const { return static_cast<int>(coefficients_.size()); }
  int n() const { return static_cast<int>(base_.size()); }
  const std::vector<RationalVector>& coefficients() const { return coefficients_; }
  const RationalVector& base_point() const { return base_; }

  Polynomial form(int j) const;  // 1-based
  /// h(x) = prod_j l_j(x).
  Polynomial product() const;

 private:
  std::vector<RationalVector> coefficients_;
  RationalVector base_;
};

/// Pencil in n variables whose spectrahedral cone is the hyperbolicity cone of
/// the kderiv-th derivative of prod_j l_j in direction e. Requires 1 <= kderiv <= d-1.
Pencil derivative_cone_pencil(const LinearFormsSystem& forms, int kderiv);

/// A'_i = sum_j T[j][i] B_j; T has one row per pencil variable and integer entries.
Pencil substitute_linear(const Pencil& p, const std::vector<RationalVector>& T);

}  // namespace esp
