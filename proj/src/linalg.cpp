#include "esp/linalg.hpp"

#include <set>

namespace esp {

SymmetricSparseMatrix::SymmetricSparseMatrix(int size)
    : size_(size), diag_(static_cast<std::size_t>(size), Rational(0)), off_(static_cast<std::size_t>(size)) {
  if (size < 0) throw Error("negative matrix size");
}

void SymmetricSparseMatrix::add(int i, int j, const Rational& value) {
  if (i < 0 || j < 0 || i >= size_ || j >= size_) throw Error("matrix index out of range");
  if (value == 0) return;
  if (i == j) {
    diag_[static_cast<std::size_t>(i)] += value;
    return;
  }
  auto& a = off_[static_cast<std::size_t>(i)][j];
  a += value;
  if (a == 0) {
    off_[static_cast<std::size_t>(i)].erase(j);
    off_[static_cast<std::size_t>(j)].erase(i);
  } else {
    off_[static_cast<std::size_t>(j)][i] = a;
  }
}

void SymmetricSparseMatrix::set(int i, int j, const Rational& value) {
  add(i, j, value - get(i, j));
}

Rational SymmetricSparseMatrix::get(int i, int j) const {
  if (i < 0 || j < 0 || i >= size_ || j >= size_) throw Error("matrix index out of range");
  if (i == j) return diag_[static_cast<std::size_t>(i)];
  const auto& r = off_[static_cast<std::size_t>(i)];
  auto it = r.find(j);
  return it == r.end() ? Rational(0) : it->second;
}

Rational SymmetricSparseMatrix::quadratic_form(std::span<const Rational> v) const {
  if (static_cast<int>(v.size()) != size_) throw Error("quadratic_form: dimension mismatch");
  Rational acc = 0;
  for (int i = 0; i < size_; ++i) {
    const Rational& vi = v[static_cast<std::size_t>(i)];
    if (vi == 0) continue;
    acc += diag_[static_cast<std::size_t>(i)] * vi * vi;
    for (const auto& [j, a] : off_[static_cast<std::size_t>(i)]) acc += a * vi * v[static_cast<std::size_t>(j)];
  }
  return acc;
}

std::size_t SymmetricSparseMatrix::nonzeros() const {
  std::size_t count = 0;
  for (int i = 0; i < size_; ++i) {
    if (diag_[static_cast<std::size_t>(i)] != 0) ++count;
    count += off_[static_cast<std::size_t>(i)].size();
  }
  return count;
}

std::vector<std::vector<Rational>> SymmetricSparseMatrix::to_dense() const {
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(size_),
                                         std::vector<Rational>(static_cast<std::size_t>(size_), Rational(0)));
  for (int i = 0; i < size_; ++i) {
    out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = diag_[static_cast<std::size_t>(i)];
    for (const auto& [j, a] : off_[static_cast<std::size_t>(i)])
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a;
  }
  return out;
}

SymmetricSparseMatrix SymmetricSparseMatrix::from_dense(const std::vector<std::vector<Rational>>& dense) {
  const int n = static_cast<int>(dense.size());
  SymmetricSparseMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(dense[static_cast<std::size_t>(i)].size()) != n) throw Error("matrix is not square");
    for (int j = 0; j < n; ++j) {
      const Rational& a = dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (a != dense[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) throw Error("matrix is not symmetric");
      if (i <= j) m.set(i, j, a);
    }
  }
  return m;
}

std::string to_string(PsdVerdict verdict) {
  switch (verdict) {
    case PsdVerdict::kPositiveDefinite: return "PD";
    case PsdVerdict::kPositiveSemidefinite: return "PSD";
    case PsdVerdict::kNotPsd: return "NOT_PSD";
  }
  return "?";
}

bool PsdCertificate::witness_holds(const SymmetricSparseMatrix& m) const {
  if (verdict != PsdVerdict::kNotPsd || static_cast<int>(witness.size()) != m.size()) return false;
  return m.quadratic_form(witness) < 0;
}

namespace {

// Working copy that performs symmetric Schur-complement eliminations.
class Eliminator {
 public:
  explicit Eliminator(const SymmetricSparseMatrix& m) : diag_(static_cast<std::size_t>(m.size())),
                                                        off_(static_cast<std::size_t>(m.size())),
                                                        active_(static_cast<std::size_t>(m.size()), true) {
    for (int i = 0; i < m.size(); ++i) {
      diag_[static_cast<std::size_t>(i)] = m.diagonal(i);
      off_[static_cast<std::size_t>(i)] = m.row(i);
      queue_.emplace(degree(i), i);
    }
  }

  bool empty() const { return queue_.empty(); }
  const std::set<std::pair<std::size_t, int>>& queue() const { return queue_; }
  const Rational& diag(int i) const { return diag_[static_cast<std::size_t>(i)]; }
  const std::map<int, Rational>& row(int i) const { return off_[static_cast<std::size_t>(i)]; }
  std::size_t degree(int i) const { return off_[static_cast<std::size_t>(i)].size(); }

  /// Removes an isolated row (no off-diagonal entries).
  void drop(int p) {
    queue_.erase({degree(p), p});
    active_[static_cast<std::size_t>(p)] = false;
  }

  /// 1x1 pivot on a nonzero diagonal entry.
  void eliminate(int p) {
    const Rational d = diag(p);
    std::vector<std::pair<int, Rational>> nbrs(row(p).begin(), row(p).end());
    queue_.erase({degree(p), p});
    active_[static_cast<std::size_t>(p)] = false;
    for (const auto& [j, a] : nbrs) {
      queue_.erase({degree(j), j});
      off_[static_cast<std::size_t>(j)].erase(p);
    }
    off_[static_cast<std::size_t>(p)].clear();
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      const auto& [i, ai] = nbrs[x];
      const Rational scaled = ai / d;
      diag_[static_cast<std::size_t>(i)] -= scaled * ai;
      for (std::size_t y = x + 1; y < nbrs.size(); ++y) update(i, nbrs[y].first, scaled * nbrs[y].second);
    }
    for (const auto& [j, a] : nbrs) queue_.emplace(degree(j), j);
    if (record_) steps_.push_back({p, d, std::move(nbrs)});
  }

  /// 2x2 pivot on (p, q); returns the determinant of the pivot block.
  Rational eliminate_pair(int p, int q) {
    const Rational a = diag(p);
    const Rational c = diag(q);
    const Rational b = row(p).at(q);
    const Rational block_det = a * c - b * b;
    if (block_det == 0) throw Error("singular 2x2 pivot");
    std::map<int, std::pair<Rational, Rational>> cols;  // r -> (M_rp, M_rq)
    for (const auto& [r, v] : row(p))
      if (r != q) cols[r].first = v;
    for (const auto& [r, v] : row(q))
      if (r != p) cols[r].second = v;
    for (int x : {p, q}) {
      queue_.erase({degree(x), x});
      active_[static_cast<std::size_t>(x)] = false;
    }
    for (const auto& [r, uv] : cols) {
      queue_.erase({degree(r), r});
      off_[static_cast<std::size_t>(r)].erase(p);
      off_[static_cast<std::size_t>(r)].erase(q);
    }
    off_[static_cast<std::size_t>(p)].clear();
    off_[static_cast<std::size_t>(q)].clear();
    std::vector<std::pair<int, std::pair<Rational, Rational>>> list(cols.begin(), cols.end());
    for (std::size_t x = 0; x < list.size(); ++x) {
      const auto& [r, ur] = list[x];
      for (std::size_t y = x; y < list.size(); ++y) {
        const auto& [s, us] = list[y];
        const Rational delta =
            (c * ur.first * us.first - b * (ur.first * us.second + ur.second * us.first) + a * ur.second * us.second) /
            block_det;
        if (r == s) diag_[static_cast<std::size_t>(r)] -= delta;
        else update(r, s, delta);
      }
    }
    for (const auto& [r, uv] : list) queue_.emplace(degree(r), r);
    return block_det;
  }

  void set_recording(bool on) { record_ = on; }

  /// Extends a vector on the currently active rows to the original index
  /// space, so that v^T M v equals u^T S u for the current Schur complement S.
  RationalVector lift(RationalVector v) const {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
      Rational acc = 0;
      for (const auto& [j, a] : it->nbrs) acc += a * v[static_cast<std::size_t>(j)];
      v[static_cast<std::size_t>(it->pivot)] = -acc / it->value;
    }
    return v;
  }

 private:
  struct Step {
    int pivot;
    Rational value;
    std::vector<std::pair<int, Rational>> nbrs;
  };

  // S_ij -= delta, both halves (queue entries for i, j must already be removed).
  void update(int i, int j, const Rational& delta) {
    auto& entry = off_[static_cast<std::size_t>(i)][j];
    entry -= delta;
    if (entry == 0) {
      off_[static_cast<std::size_t>(i)].erase(j);
      off_[static_cast<std::size_t>(j)].erase(i);
    } else {
      off_[static_cast<std::size_t>(j)][i] = entry;
    }
  }

  std::vector<Rational> diag_;
  std::vector<std::map<int, Rational>> off_;
  std::vector<bool> active_;
  std::set<std::pair<std::size_t, int>> queue_;
  std::vector<Step> steps_;
  bool record_ = false;
};

}  // namespace

PsdCertificate psd_check(const SymmetricSparseMatrix& m) {
  PsdCertificate cert;
  Eliminator work(m);
  work.set_recording(true);
  bool singular = false;
  const auto n = static_cast<std::size_t>(m.size());

  auto fail = [&](RationalVector u, std::string reason) {
    cert.verdict = PsdVerdict::kNotPsd;
    cert.witness = work.lift(std::move(u));
    cert.witness_value = m.quadratic_form(cert.witness);
    cert.failure = std::move(reason);
    if (cert.witness_value >= 0) throw Error("internal: PSD witness does not certify");
    return cert;
  };

  while (!work.empty()) {
    const int p = work.queue().begin()->second;
    const Rational d = work.diag(p);
    if (d > 0) {
      cert.pivots.push_back({p, d});
      work.eliminate(p);
      continue;
    }
    if (d < 0) {
      RationalVector u(n, Rational(0));
      u[static_cast<std::size_t>(p)] = 1;
      return fail(std::move(u), "negative pivot " + to_string(d) + " at row " + std::to_string(p));
    }
    if (work.row(p).empty()) {
      cert.pivots.push_back({p, Rational(0)});
      singular = true;
      work.drop(p);
      continue;
    }
    // Zero pivot with a nonzero off-diagonal entry.
    const auto& [j, b] = *work.row(p).begin();
    const Rational dj = work.diag(j);
    RationalVector u(n, Rational(0));
    if (dj < 0) {
      u[static_cast<std::size_t>(j)] = 1;
      return fail(std::move(u), "negative pivot " + to_string(dj) + " at row " + std::to_string(j));
    }
    if (dj == 0) {
      u[static_cast<std::size_t>(p)] = 1;
      u[static_cast<std::size_t>(j)] = b > 0 ? -1 : 1;
    } else {
      u[static_cast<std::size_t>(p)] = -dj / b;
      u[static_cast<std::size_t>(j)] = 1;
    }
    return fail(std::move(u), "zero pivot at row " + std::to_string(p) + " with nonzero entry in column " +
                                  std::to_string(j));
  }
  cert.verdict = singular ? PsdVerdict::kPositiveSemidefinite : PsdVerdict::kPositiveDefinite;
  return cert;
}

Rational determinant(const SymmetricSparseMatrix& m) {
  Eliminator work(m);
  Rational det = 1;
  while (!work.empty()) {
    int pivot = -1;
    for (const auto& [deg, i] : work.queue()) {
      if (work.diag(i) != 0) {
        pivot = i;
        break;
      }
      if (deg == 0) return 0;  // zero row
    }
    if (pivot >= 0) {
      det *= work.diag(pivot);
      work.eliminate(pivot);
      continue;
    }
    // Every remaining diagonal entry is zero; pair the first row with a neighbour.
    const int p = work.queue().begin()->second;
    const int q = work.row(p).begin()->first;
    det *= work.eliminate_pair(p, q);
  }
  return det;
}

}  // namespace esp
