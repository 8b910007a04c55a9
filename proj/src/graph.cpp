#include "esp/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace esp {

int Multigraph::vertex_index(const std::string& label) const {
  auto it = std::find(vertex_labels.begin(), vertex_labels.end(), label);
  if (it == vertex_labels.end()) throw Error("unknown vertex '" + label + "'");
  return static_cast<int>(it - vertex_labels.begin());
}

bool Multigraph::is_connected() const {
  if (vertex_labels.empty()) return true;
  std::vector<std::vector<int>> adj(vertex_labels.size());
  for (const auto& e : edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<bool> seen(vertex_labels.size(), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    int x = frontier.front();
    frontier.pop();
    for (int y : adj[static_cast<std::size_t>(x)]) {
      if (seen[static_cast<std::size_t>(y)]) continue;
      seen[static_cast<std::size_t>(y)] = true;
      ++reached;
      frontier.push(y);
    }
  }
  return reached == vertex_labels.size();
}

std::string Vertex::label() const {
  switch (kind) {
    case Kind::kSource: return "s";
    case Kind::kSink: return "z";
    case Kind::kWord: break;
  }
  const bool wide = std::any_of(word.begin(), word.end(), [](int c) { return c > 9; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (wide && i > 0) out += '.';
    out += std::to_string(word[i]);
  }
  return out;
}

int LabeledGraph::vertex_index(const Vertex& v) const {
  if (v.kind == Vertex::Kind::kSource) return source_index();
  if (v.kind == Vertex::Kind::kSink) return sink_index();
  // Words are sorted by (length, lexicographic) between s and z.
  auto less = [](const Vertex& a, const Vertex& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  };
  auto first = vertices.begin() + 1;
  auto last = vertices.end() - 1;
  auto it = std::lower_bound(first, last, v, less);
  if (it == last || !(*it == v)) throw Error("vertex " + v.label() + " not in G_{n,k}");
  return static_cast<int>(it - vertices.begin());
}

std::vector<std::string> LabeledGraph::vertex_labels() const {
  std::vector<std::string> out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back(v.label());
  return out;
}

Multigraph LabeledGraph::topology() const {
  Multigraph g;
  g.vertex_labels = vertex_labels();
  g.edges.reserve(edges.size());
  for (const auto& e : edges)
    g.edges.push_back({e.u, e.v, g.vertex_labels[static_cast<std::size_t>(e.u)] + "-" +
                                     g.vertex_labels[static_cast<std::size_t>(e.v)]});
  return g;
}

namespace {

std::size_t falling_factorial(int n, int len) {
  std::size_t out = 1;
  for (int i = 0; i < len; ++i) out *= static_cast<std::size_t>(n - i);
  return out;
}

void extend_words(int n, int length, std::vector<int>& current, std::vector<bool>& used,
                  std::vector<Vertex>& out) {
  if (static_cast<int>(current.size()) == length) {
    out.push_back(Vertex::of_word(current));
    return;
  }
  for (int letter = 1; letter <= n; ++letter) {
    if (used[static_cast<std::size_t>(letter)]) continue;
    used[static_cast<std::size_t>(letter)] = true;
    current.push_back(letter);
    extend_words(n, length, current, used, out);
    current.pop_back();
    used[static_cast<std::size_t>(letter)] = false;
  }
}

}  // namespace

std::size_t expected_vertex_count(int n, int k) {
  std::size_t count = 2;
  for (int len = 1; len <= k; ++len) count += falling_factorial(n, len);
  return count;
}

std::size_t expected_edge_count(int n, int k) {
  if (k == 0) return 1;
  std::size_t count = static_cast<std::size_t>(n);
  for (int i = 2; i <= k; ++i) count += falling_factorial(n, i);
  return count + falling_factorial(n, k);
}

LabeledGraph build_G(int n, int k) {
  if (n < 1) throw Error("n must be positive");
  if (k < 0 || k >= n) throw Error("k out of range: need 0 <= k <= n-1");
  LabeledGraph g;
  g.n = n;
  g.k = k;
  g.vertices.push_back(Vertex::source());
  for (int len = 1; len <= k; ++len) {
    std::vector<int> current;
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    extend_words(n, len, current, used, g.vertices);
  }
  g.vertices.push_back(Vertex::sink());

  std::vector<LabeledEdge> edges;
  if (k == 0) {
    edges.push_back({g.source_index(), g.sink_index(), 1, 0});
  } else {
    for (std::size_t idx = 1; idx + 1 < g.vertices.size(); ++idx) {
      const auto& w = g.vertices[idx].word;
      const int self = static_cast<int>(idx);
      if (w.size() == 1) {
        edges.push_back({g.source_index(), self, 1, 0});
      } else {
        const int parent = g.vertex_index(Vertex::of_word({w.begin(), w.end() - 1}));
        edges.push_back({parent, self, 2, 0});
      }
      if (static_cast<int>(w.size()) == k) edges.push_back({self, g.sink_index(), 3, 0});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
    return std::tie(a.rule_class, a.u, a.v) < std::tie(b.rule_class, b.u, b.v);
  });
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].id = static_cast<int>(i);
  g.edges = std::move(edges);
  return g;
}

bool EdgeWeightAssignment::is_linear() const {
  return std::all_of(weights.begin(), weights.end(), [](const RationalFunction& w) { return w.is_polynomial(); });
}

EdgeWeightAssignment assign_weights(const LabeledGraph& g, int r) {
  if (r < g.k) throw Error("weight parameter r must be at least k");
  if (r > g.n - 1) throw Error("weight parameter r must be at most n-1");
  const int n = g.n;
  EdgeWeightAssignment out;
  out.n = n;
  out.k = g.k;
  out.r = r;
  out.weights.reserve(g.edges.size());

  Subset everything;
  for (int i = 1; i <= n; ++i) everything.push_back(i);

  for (const auto& e : g.edges) {
    if (g.k == 0) {
      out.weights.push_back(q_ratio(n, everything, r + 1) * Rational(factorial(static_cast<unsigned>(r + 1))));
      continue;
    }
    const Vertex& far = g.vertices[static_cast<std::size_t>(e.v)];
    switch (e.rule_class) {
      case 1:
      case 2: {
        const int depth = static_cast<int>(far.word.size());
        const Rational scale(factorial(static_cast<unsigned>(r - depth + 1)));
        out.weights.emplace_back(Polynomial::variable(n, far.word.back()) * scale);
        break;
      }
      case 3: {
        Subset letters = g.vertices[static_cast<std::size_t>(e.u)].word;
        std::sort(letters.begin(), letters.end());
        const int order = r - g.k + 1;
        out.weights.push_back(q_ratio(n, complement(n, letters), order) *
                              Rational(factorial(static_cast<unsigned>(order))));
        break;
      }
      default: throw Error("unknown edge rule class");
    }
  }
  return out;
}

SymbolicLaplacian::SymbolicLaplacian(int ambient_dim, std::vector<std::string> ordering)
    : ambient_dim_(ambient_dim), ordering_(std::move(ordering)) {}

int SymbolicLaplacian::index_of(const std::string& label) const {
  auto it = std::find(ordering_.begin(), ordering_.end(), label);
  if (it == ordering_.end()) throw Error("unknown vertex '" + label + "'");
  return static_cast<int>(it - ordering_.begin());
}

RationalFunction SymbolicLaplacian::entry(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = upper_.find({i, j});
  return it == upper_.end() ? RationalFunction(ambient_dim_) : it->second;
}

void SymbolicLaplacian::add(int i, int j, const RationalFunction& value) {
  if (i < 0 || j < 0 || i >= size() || j >= size()) throw Error("Laplacian index out of range");
  if (i > j) std::swap(i, j);
  auto [it, inserted] = upper_.try_emplace({i, j}, value);
  if (!inserted) it->second = it->second + value;
  if (it->second.is_zero()) upper_.erase(it);
}

RationalFunction SymbolicLaplacian::row_sum(int i) const {
  RationalFunction acc(ambient_dim_);
  for (int j = 0; j < size(); ++j) {
    auto it = upper_.find(i <= j ? std::pair{i, j} : std::pair{j, i});
    if (it != upper_.end()) acc = acc + it->second;
  }
  return acc;
}

SymmetricSparseMatrix SymbolicLaplacian::evaluate(std::span<const Rational> point) const {
  SymmetricSparseMatrix out(size());
  for (const auto& [ij, f] : upper_) out.add(ij.first, ij.second, f.evaluate(point));
  return out;
}

std::vector<std::vector<Polynomial>> SymbolicLaplacian::polynomial_matrix() const {
  const auto m = static_cast<std::size_t>(size());
  std::vector<std::vector<Polynomial>> out(m, std::vector<Polynomial>(m, Polynomial(ambient_dim_)));
  for (const auto& [ij, f] : upper_) {
    Polynomial p = f.as_polynomial();
    out[static_cast<std::size_t>(ij.first)][static_cast<std::size_t>(ij.second)] = p;
    out[static_cast<std::size_t>(ij.second)][static_cast<std::size_t>(ij.first)] = p;
  }
  return out;
}

SymbolicLaplacian weighted_laplacian(const Multigraph& g, std::span<const RationalFunction> weights) {
  if (weights.size() != g.edges.size()) throw Error("one weight per edge required");
  const int dim = weights.empty() ? 1 : weights.front().ambient_dim();
  SymbolicLaplacian l(dim, g.vertex_labels);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.u == e.v) throw Error("self-loops are not allowed");
    l.add(e.u, e.u, weights[i]);
    l.add(e.v, e.v, weights[i]);
    l.add(e.u, e.v, -weights[i]);
  }
  return l;
}

SymbolicLaplacian weighted_laplacian(const LabeledGraph& g, const EdgeWeightAssignment& w) {
  if (w.n != g.n || w.k != g.k || w.weights.size() != g.edges.size())
    throw Error("weight assignment was not built from this graph");
  return weighted_laplacian(g.topology(), w.weights);
}

SymbolicLaplacian reduced_laplacian(const SymbolicLaplacian& l, const std::string& vertex) {
  const int drop = l.index_of(vertex);
  std::vector<std::string> ordering = l.ordering();
  ordering.erase(ordering.begin() + drop);
  SymbolicLaplacian out(l.ambient_dim(), std::move(ordering));
  auto shift = [drop](int i) { return i > drop ? i - 1 : i; };
  for (const auto& [ij, f] : l.upper()) {
    if (ij.first == drop || ij.second == drop) continue;
    out.add(shift(ij.first), shift(ij.second), f);
  }
  return out;
}

SymbolicLaplacian reduced_weighted_laplacian(const Multigraph& g, std::span<const RationalFunction> weights,
                                             const std::string& vertex) {
  if (weights.size() != g.edges.size()) throw Error("one weight per edge required");
  const int drop = g.vertex_index(vertex);
  std::vector<std::string> ordering = g.vertex_labels;
  ordering.erase(ordering.begin() + drop);
  const int dim = weights.empty() ? 1 : weights.front().ambient_dim();
  SymbolicLaplacian l(dim, std::move(ordering));
  auto shift = [drop](int i) { return i > drop ? i - 1 : i; };
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.u == e.v) throw Error("self-loops are not allowed");
    if (e.u != drop) l.add(shift(e.u), shift(e.u), weights[i]);
    if (e.v != drop) l.add(shift(e.v), shift(e.v), weights[i]);
    if (e.u != drop && e.v != drop) l.add(shift(e.u), shift(e.v), -weights[i]);
  }
  return l;
}

SymbolicLaplacian reduced_weighted_laplacian(const LabeledGraph& g, const EdgeWeightAssignment& w,
                                             const std::string& vertex) {
  if (w.n != g.n || w.k != g.k || w.weights.size() != g.edges.size())
    throw Error("weight assignment was not built from this graph");
  return reduced_weighted_laplacian(g.topology(), w.weights, vertex);
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
  return x;
}

}  // namespace

std::vector<std::vector<int>> spanning_trees_bruteforce(const Multigraph& g) {
  if (g.edge_count() > kSpanningTreeEdgeBudget)
    throw GuardError("spanning tree enumeration refused: " + std::to_string(g.edge_count()) + " edges exceed budget of " +
                     std::to_string(kSpanningTreeEdgeBudget));
  const int need = g.vertex_count() - 1;
  std::vector<std::vector<int>> trees;
  std::vector<int> chosen;
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);

  auto rec = [&](auto& self, int next, std::vector<int> uf) -> void {
    if (static_cast<int>(chosen.size()) == need) {
      trees.push_back(chosen);
      return;
    }
    if (g.edge_count() - next < need - static_cast<int>(chosen.size())) return;
    const auto& e = g.edges[static_cast<std::size_t>(next)];
    const int a = find_root(uf, e.u);
    const int b = find_root(uf, e.v);
    if (a != b) {
      std::vector<int> joined = uf;
      joined[static_cast<std::size_t>(a)] = b;
      chosen.push_back(next);
      self(self, next + 1, std::move(joined));
      chosen.pop_back();
    }
    self(self, next + 1, std::move(uf));
  };
  rec(rec, 0, parent);
  return trees;
}

Polynomial spanning_tree_polynomial(const Multigraph& g) {
  const auto trees = spanning_trees_bruteforce(g);
  const int dim = std::max(1, g.edge_count());
  Polynomial::TermMap terms;
  for (const auto& t : trees) {
    std::vector<std::pair<int, unsigned>> powers;
    for (int e : t) powers.emplace_back(e + 1, 1U);
    terms[Monomial(std::move(powers))] += 1;
  }
  return Polynomial(dim, std::move(terms));
}

std::vector<RationalFunction> edge_variable_weights(const Multigraph& g) {
  std::vector<RationalFunction> out;
  const int dim = std::max(1, g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) out.emplace_back(Polynomial::variable(dim, i + 1));
  return out;
}

Multigraph example_four_edge_graph() {
  Multigraph g;
  g.vertex_labels = {"1", "2", "3"};
  g.edges = {{0, 1, "a"}, {1, 2, "b"}, {0, 2, "c"}, {0, 2, "d"}};
  return g;
}

}  // namespace esp
