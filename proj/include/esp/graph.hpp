#pragma once

// The graphs G_{n,k}, their edge weights, weighted Laplacians and a
// brute-force spanning tree enumerator for small graphs.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esp/linalg.hpp"
#include "esp/poly.hpp"

namespace esp {

/// Multigraph with named vertices; edges may repeat but never loop.
struct Multigraph {
  struct Edge {
    int u;
    int v;
    std::string label;
  };

  std::vector<std::string> vertex_labels;
  std::vector<Edge> edges;

  int vertex_count() const { return static_cast<int>(vertex_labels.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int vertex_index(const std::string& label) const;
  bool is_connected() const;
};

/// Maximum edge count accepted by the brute-force tree enumerator.
inline constexpr int kSpanningTreeEdgeBudget = 25;

struct Vertex {
  enum class Kind { kSource, kSink, kWord };
  Kind kind = Kind::kWord;
  std::vector<int> word;  // letters in [n], pairwise distinct

  static Vertex source() { return {Kind::kSource, {}}; }
  static Vertex sink() { return {Kind::kSink, {}}; }
  static Vertex of_word(std::vector<int> w) { return {Kind::kWord, std::move(w)}; }

  /// "s", "z", or the letters of the word ("12"; dot-separated when a letter exceeds 9).
  std::string label() const;
  bool operator==(const Vertex& other) const = default;
};

struct LabeledEdge {
  int u;           // index into LabeledGraph::vertices
  int v;
  int rule_class;  // 1: s - letter, 2: prefix extension, 3: full word - z
  int id;          // position in LabeledGraph::edges
};

/// G_{n,k}: vertices s, every word of 1..k distinct letters from [n], and z.
struct LabeledGraph {
  int n = 0;
  int k = 0;
  std::vector<Vertex> vertices;  // s, words by length then lexicographically, z
  std::vector<LabeledEdge> edges;

  int source_index() const { return 0; }
  int sink_index() const { return static_cast<int>(vertices.size()) - 1; }
  int vertex_index(const Vertex& v) const;
  std::vector<std::string> vertex_labels() const;
  Multigraph topology() const;
};

/// Builds G_{n,k} for 0 <= k <= n-1 with canonical vertex and edge order.
LabeledGraph build_G(int n, int k);

/// Expected vertex and edge counts of G_{n,k}.
std::size_t expected_vertex_count(int n, int k);
std::size_t expected_edge_count(int n, int k);

/// Edge weights of G_{n,k} for parameter r, indexed by edge id.
struct EdgeWeightAssignment {
  int n = 0;
  int k = 0;
  int r = 0;
  std::vector<RationalFunction> weights;

  /// True when every weight has a constant denominator.
  bool is_linear() const;
};

/// Rules: s - i gets r! x_i; a depth-i prefix edge gets (r-i+1)! x_{w_i};
/// a word-to-z edge gets (r-k+1)! q_{r-k+1} of the letters missing from the word.
EdgeWeightAssignment assign_weights(const LabeledGraph& g, int r);

/// Symmetric matrix of rational functions with an explicit vertex ordering.
class SymbolicLaplacian {
 public:
  SymbolicLaplacian(int ambient_dim, std::vector<std::string> ordering);

  int size() const { return static_cast<int>(ordering_.size()); }
  int ambient_dim() const { return ambient_dim_; }
  const std::vector<std::string>& ordering() const { return ordering_; }
  int index_of(const std::string& label) const;

  RationalFunction entry(int i, int j) const;
  void add(int i, int j, const RationalFunction& value);
  /// Nonzero entries with i <= j.
  const std::map<std::pair<int, int>, RationalFunction>& upper() const { return upper_; }

  /// Sum of row i as a rational function.
  RationalFunction row_sum(int i) const;

  /// Entrywise evaluation; throws PoleError where a weight has a pole.
  SymmetricSparseMatrix evaluate(std::span<const Rational> point) const;
  /// Dense polynomial matrix; requires every entry to be a polynomial.
  std::vector<std::vector<Polynomial>> polynomial_matrix() const;

 private:
  int ambient_dim_;
  std::vector<std::string> ordering_;
  std::map<std::pair<int, int>, RationalFunction> upper_;
};

/// L = sum_e w_e (d_u - d_v)(d_u - d_v)^T.
SymbolicLaplacian weighted_laplacian(const Multigraph& g, std::span<const RationalFunction> weights);
SymbolicLaplacian weighted_laplacian(const LabeledGraph& g, const EdgeWeightAssignment& w);

/// Deletes the row and column of `vertex`.
SymbolicLaplacian reduced_laplacian(const SymbolicLaplacian& l, const std::string& vertex);

/// reduced_laplacian(weighted_laplacian(g, w), vertex) without ever forming
/// the deleted row, whose diagonal would sum every weight incident to it.
SymbolicLaplacian reduced_weighted_laplacian(const Multigraph& g, std::span<const RationalFunction> weights,
                                             const std::string& vertex);
SymbolicLaplacian reduced_weighted_laplacian(const LabeledGraph& g, const EdgeWeightAssignment& w,
                                             const std::string& vertex);

/// Every spanning tree as a sorted list of edge indices.
std::vector<std::vector<int>> spanning_trees_bruteforce(const Multigraph& g);

/// T_G in one variable per edge: x_{i+1} is edge i.
Polynomial spanning_tree_polynomial(const Multigraph& g);

/// Edge variables x_1..x_|E| as weights, for the spanning tree polynomial route.
std::vector<RationalFunction> edge_variable_weights(const Multigraph& g);

/// The three-vertex multigraph with edges a = 1-2, b = 2-3, c = 1-3, d = 1-3.
Multigraph example_four_edge_graph();

}  // namespace esp
