#pragma once

// Exact symmetric linear algebra over the rationals.
//
// Matrices coming out of G_{n,k} are reduced Laplacians of a tree plus a
// diagonal, so elimination uses minimum-degree diagonal pivots: on a tree that
// order peels leaves and produces no fill at all, which keeps n = 6 pencils
// (order ~2000) cheap to factor exactly.

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esp/rational.hpp"

namespace esp {

class SymmetricSparseMatrix {
 public:
  explicit SymmetricSparseMatrix(int size = 0);

  int size() const { return size_; }
  /// Adds `value` to entries (i, j) and (j, i); a single addition when i == j.
  void add(int i, int j, const Rational& value);
  void set(int i, int j, const Rational& value);
  Rational get(int i, int j) const;

  const Rational& diagonal(int i) const { return diag_[static_cast<std::size_t>(i)]; }
  /// Nonzero off-diagonal entries of row i.
  const std::map<int, Rational>& row(int i) const { return off_[static_cast<std::size_t>(i)]; }

  Rational quadratic_form(std::span<const Rational> v) const;
  std::size_t nonzeros() const;
  std::vector<std::vector<Rational>> to_dense() const;
  static SymmetricSparseMatrix from_dense(const std::vector<std::vector<Rational>>& dense);

  bool operator==(const SymmetricSparseMatrix& other) const = default;

 private:
  int size_;
  std::vector<Rational> diag_;
  std::vector<std::map<int, Rational>> off_;
};

enum class PsdVerdict { kPositiveDefinite, kPositiveSemidefinite, kNotPsd };

std::string to_string(PsdVerdict verdict);

struct PivotStep {
  int index;
  Rational value;
};

/// Outcome of exact symmetric elimination.
struct PsdCertificate {
  PsdVerdict verdict = PsdVerdict::kPositiveDefinite;
  /// Diagonal pivots in elimination order; zero pivots mark null directions.
  std::vector<PivotStep> pivots;
  /// For kNotPsd: v with v^T M v < 0.
  RationalVector witness;
  /// v^T M v for the witness.
  Rational witness_value;
  /// Human-readable reason for a failure.
  std::string failure;

  /// Re-evaluates the witness against M; true when v^T M v < 0 exactly.
  bool witness_holds(const SymmetricSparseMatrix& m) const;
};

/// Exact PSD / PD decision with a certificate.
PsdCertificate psd_check(const SymmetricSparseMatrix& m);

/// Exact determinant by symmetric elimination with 1x1 and 2x2 pivots.
Rational determinant(const SymmetricSparseMatrix& m);

/// Division-free determinant (Berkowitz) over any commutative ring with
/// +, -, * and a caller-supplied zero and one.
template <typename T>
T berkowitz_determinant(const std::vector<std::vector<T>>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  if (n == 0) return one;
  // coeffs holds the characteristic-polynomial coefficients of the leading block.
  std::vector<T> coeffs{one, zero - a[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> toeplitz{one, zero - a[r][r]};
    std::vector<T> x(r, zero);
    for (std::size_t i = 0; i < r; ++i) x[i] = a[i][r];
    for (std::size_t step = 0; step < r; ++step) {
      T dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot = dot + a[r][i] * x[i];
      toeplitz.push_back(zero - dot);
      if (step + 1 < r) {
        std::vector<T> next(r, zero);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + a[i][j] * x[j];
        x = std::move(next);
      }
    }
    std::vector<T> updated(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) updated[i] = updated[i] + toeplitz[i - j] * coeffs[j];
    coeffs = std::move(updated);
  }
  return n % 2 == 0 ? coeffs[n] : zero - coeffs[n];
}

/// Determinant by row-by-row minor expansion, memoized on the set of used
/// columns. Skips zero entries, so it is fast for sparse matrices of order
/// up to about 20.
template <typename T>
T expansion_determinant(const std::vector<std::vector<T>>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  if (n > 24) throw Error("expansion_determinant: order too large");
  std::map<std::uint32_t, T> minors{{0U, one}};
  for (std::size_t row = 0; row < n; ++row) {
    std::map<std::uint32_t, T> next;
    for (const auto& [used, value] : minors) {
      for (std::size_t col = 0; col < n; ++col) {
        const std::uint32_t bit = 1U << col;
        if ((used & bit) != 0 || a[row][col] == zero) continue;
        const T term = value * a[row][col];
        // Each already-used column to the right of col adds one inversion.
        const bool odd = std::popcount(used >> col) % 2 == 1;
        auto [it, inserted] = next.try_emplace(used | bit, zero);
        if (odd) it->second = it->second - term;
        else it->second = it->second + term;
      }
    }
    minors = std::move(next);
  }
  auto it = minors.find(n == 0 ? 0U : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
  return it == minors.end() ? zero : it->second;
}

}  // namespace esp
