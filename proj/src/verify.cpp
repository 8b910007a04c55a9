#include "esp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

namespace esp {

using nlohmann::ordered_json;

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "PASS";
    case CheckStatus::kFail: return "FAIL";
    case CheckStatus::kInconclusive: return "INCONCLUSIVE";
    case CheckStatus::kSkipped: return "SKIPPED";
  }
  return "?";
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << "[" << to_string(status) << "] " << suite;
  for (const auto& [key, value] : data.items()) os << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
  os << "\n";
  for (const auto& line : details) os << "  " << line << "\n";
  return os.str();
}

ordered_json CheckReport::to_json() const {
  ordered_json out;
  out["suite"] = suite;
  out["status"] = to_string(status);
  out["data"] = data;
  out["details"] = details;
  return out;
}

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  int count = hw > 0 ? hw : 1;
  if (const char* env = std::getenv("ESP_SPECTRA_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) count = std::min(requested, 64);
  }
  return std::max(1, count);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

/// Runs fn(i) for i in [begin, end) on worker threads; results are index-ordered.
template <typename T>
std::vector<T> parallel_map(std::size_t begin, std::size_t end, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(end - begin);
  const auto workers = static_cast<std::size_t>(std::min<long>(worker_count(), static_cast<long>(end - begin)));
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) out[i - begin] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{begin};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < end; i = next++) out[i - begin] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Collects `wanted` non-pole samples, drawing extra trial indices in
/// deterministic batches to replace poles, up to four times `wanted` draws.
template <typename T>
std::pair<std::vector<T>, std::size_t> collect_samples(std::size_t wanted,
                                                       const std::function<std::optional<T>(std::size_t)>& fn) {
  std::vector<T> good;
  std::size_t poles = 0;
  std::size_t drawn = 0;
  while (good.size() < wanted && drawn < 4 * wanted) {
    const std::size_t batch = wanted - good.size();
    auto results = parallel_map<std::optional<T>>(drawn, drawn + batch, fn);
    drawn += batch;
    for (auto& r : results) {
      if (r) good.push_back(std::move(*r));
      else ++poles;
    }
  }
  return {std::move(good), poles};
}

void check_esp_range(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw Error("k out of range: need 1 <= k <= n-1");
}

void record_config(CheckReport& report, const TrialConfig& cfg) {
  report.data["seed"] = cfg.seed;
  report.data["trials"] = cfg.trials;
  report.data["range"] = cfg.range;
}

RationalVector select(std::span<const Rational> point, const Subset& S) {
  RationalVector out;
  for (int i : S) out.push_back(point[static_cast<std::size_t>(i - 1)]);
  return out;
}

std::string point_string(std::span<const Rational> x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(x[i]);
  }
  return out + ")";
}

Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

RationalVector shifted(std::span<const Rational> y, std::span<const Rational> dir, const Rational& t) {
  RationalVector out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += t * dir[i];
  return out;
}

/// Largest root bracket of t -> h(y + t dir), or nullopt when it has no real root.
std::optional<RootBracket> line_bracket(const Polynomial& h, std::span<const Rational> y,
                                        std::span<const Rational> dir, const Rational& width) {
  const UnivariatePolynomial p = restrict_univariate(h, y, dir);
  if (p.degree() < 1 || distinct_real_root_count(p) == 0) return std::nullopt;
  return largest_root_bracket(p, width);
}

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

RationalVector random_integer_point(std::mt19937_64& rng, int n, long range) {
  RationalVector x;
  x.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x.emplace_back(uniform(rng, -range, range));
  return x;
}

Membership oracle_membership_esp(int n, int k, std::span<const Rational> x) {
  check_esp_range(n, k);
  if (static_cast<int>(x.size()) != n) throw Error("point dimension mismatch");
  const RationalVector e = elementary_symmetric_values(x, k + 1);
  bool strict = true;
  for (int j = 1; j <= k + 1; ++j) {
    const int s = sgn(e[static_cast<std::size_t>(j)]);
    if (s < 0) return Membership::kOutside;
    if (s == 0) strict = false;
  }
  return strict ? Membership::kInterior : Membership::kBoundary;
}

Membership root_oracle_membership(const Polynomial& h, std::span<const Rational> e, std::span<const Rational> x) {
  const UnivariatePolynomial p = restrict_univariate(h, x, e);
  if (p.is_zero() || p.degree() != h.total_degree())
    throw Error("h(e) vanishes: e is not a hyperbolic direction");
  if (!is_real_rooted(p))
    throw NotHyperbolicError("not hyperbolic: restriction " + p.to_string() + " has non-real roots");
  if (roots_above(p, Rational(0)) > 0) return Membership::kOutside;
  return p.evaluate(Rational(0)) == 0 ? Membership::kBoundary : Membership::kInterior;
}

Rational gamma_value(int n, int k, int r, std::span<const Rational> point) {
  if (k < 0 || k > r || r > n) throw Error("gamma needs 0 <= k <= r <= n");
  const auto exponent = static_cast<unsigned>(factorial(static_cast<unsigned>(k)).get_ui());
  Rational out = 1;
  for (const Subset& S : subsets_of_size(n, k)) {
    const RationalVector rest = select(point, complement(n, S));
    out *= pow_rational(elementary_symmetric_values(rest, r - k)[static_cast<std::size_t>(r - k)], exponent);
  }
  return out;
}

HEvaluator::HEvaluator(int n, int k, int r)
    : reduced_([&] {
        const LabeledGraph g = build_G(n, k);
        return reduced_weighted_laplacian(g, assign_weights(g, r), "z");
      }()) {}

Rational HEvaluator::operator()(std::span<const Rational> point) const { return determinant(reduced_.evaluate(point)); }

// ---------------------------------------------------------------------------
// Matrix-tree

CheckReport verify_matrix_tree(const Multigraph& g) {
  CheckReport report;
  report.suite = "matrix-tree";
  report.data["vertices"] = g.vertex_count();
  report.data["edges"] = g.edge_count();
  if (g.edge_count() > kSpanningTreeEdgeBudget) {
    report.status = CheckStatus::kSkipped;
    report.details.push_back("edge budget exceeded: " + std::to_string(g.edge_count()) + " > " +
                             std::to_string(kSpanningTreeEdgeBudget));
    return report;
  }
  const Polynomial trees = spanning_tree_polynomial(g);
  report.data["tree_polynomial_terms"] = trees.terms().size();
  const auto weights = edge_variable_weights(g);
  const SymbolicLaplacian full = weighted_laplacian(g, weights);
  const int dim = std::max(1, g.edge_count());
  bool all_equal = true;
  for (const auto& label : g.vertex_labels) {
    const auto matrix = reduced_laplacian(full, label).polynomial_matrix();
    const Polynomial det = expansion_determinant(matrix, Polynomial(dim), Polynomial::constant(dim, 1));
    const bool equal = det == trees;
    all_equal = all_equal && equal;
    report.details.push_back("delete " + label + ": " + (equal ? "equal" : "MISMATCH") + " (" +
                             std::to_string(det.terms().size()) + " terms)");
  }
  report.status = all_equal ? CheckStatus::kPass : CheckStatus::kFail;
  return report;
}

CheckReport verify_matrix_tree(const LabeledGraph& g) {
  CheckReport report = verify_matrix_tree(g.topology());
  report.data["n"] = g.n;
  report.data["k"] = g.k;
  return report;
}

// ---------------------------------------------------------------------------
// Step recursion

CheckReport verify_step_recursion(int n, int k, int r, const TrialConfig& cfg) {
  if (k < 1 || k > r || r > n - 1) throw Error("step recursion needs 1 <= k <= r <= n-1");
  if (cfg.range < kIdentityTestRange) throw Error("identity tests need a coordinate range of at least 10^6");
  CheckReport report;
  report.suite = "step";
  report.data["n"] = n;
  report.data["k"] = k;
  report.data["r"] = r;
  record_config(report, cfg);

  const HEvaluator h_k(n, k, r);
  const HEvaluator h_prev(n, k - 1, r);
  const HEvaluator h_zero(n, 0, r);
  const auto outer = static_cast<unsigned>(n - k + 1);

  struct Sample {
    Rational ratio;
    std::optional<Rational> c0;
  };
  auto fn = [&](std::size_t trial) -> std::optional<Sample> {
    auto rng = trial_rng(cfg.seed, trial);
    const RationalVector x = random_integer_point(rng, n, cfg.range);
    try {
      const Rational hk = h_k(x);
      const Rational hp = h_prev(x);
      const Rational g_prev = gamma_value(n, k - 1, r, x);
      const Rational g_k = gamma_value(n, k, r, x);
      if (hp == 0 || g_prev == 0 || g_k == 0) return std::nullopt;
      Sample s{hk * g_k / (hp * pow_rational(g_prev, outer)), std::nullopt};
      const RationalVector e = elementary_symmetric_values(x, r + 1);
      if (e[static_cast<std::size_t>(r + 1)] != 0)
        s.c0 = h_zero(x) / (e[static_cast<std::size_t>(r + 1)] / e[static_cast<std::size_t>(r)]);
      return s;
    } catch (const PoleError&) {
      return std::nullopt;
    }
  };
  auto [samples, poles] = collect_samples<Sample>(static_cast<std::size_t>(cfg.trials), fn);
  report.data["samples"] = samples.size();
  report.data["poles_skipped"] = poles;
  if (samples.empty()) {
    report.status = CheckStatus::kInconclusive;
    report.details.push_back("every sample hit a pole");
    return report;
  }
  const Rational constant = samples.front().ratio;
  const Rational expected_c0(factorial(static_cast<unsigned>(r + 1)));
  std::size_t mismatches = 0;
  std::size_t c0_mismatches = 0;
  for (const auto& s : samples) {
    if (s.ratio != constant) ++mismatches;
    if (s.c0 && *s.c0 != expected_c0) ++c0_mismatches;
  }
  report.data["C_kr"] = to_string(constant);
  report.data["C_0r"] = to_string(expected_c0);
  report.data["ratio_mismatches"] = mismatches;
  report.data["C_0r_mismatches"] = c0_mismatches;
  const bool ok = constant > 0 && mismatches == 0 && c0_mismatches == 0 &&
                  samples.size() >= static_cast<std::size_t>(cfg.trials);
  if (samples.size() < static_cast<std::size_t>(cfg.trials))
    report.details.push_back("only " + std::to_string(samples.size()) + " non-pole samples");
  report.details.push_back("H_{k,r} / (H_{k-1,r} gamma_{k-1,r}^" + std::to_string(outer) + " / gamma_{k,r}) = " +
                           to_string(constant) + " at every sample");
  report.status = ok ? CheckStatus::kPass : CheckStatus::kFail;
  return report;
}

// ---------------------------------------------------------------------------
// Closed form of H_{k,k}

CheckReport verify_hkk_identity(int n, int k, const TrialConfig& cfg) {
  check_esp_range(n, k);
  if (cfg.range < kIdentityTestRange) throw Error("identity tests need a coordinate range of at least 10^6");
  CheckReport report;
  report.suite = "hkk";
  report.data["n"] = n;
  report.data["k"] = k;
  record_config(report, cfg);

  const Pencil pencil = build_esp_pencil(n, k);
  report.data["m"] = pencil.m;
  const int degree = hkk_closed_form_degree(n, k);
  report.data["closed_form_degree"] = degree;

  auto fn = [&](std::size_t trial) -> std::optional<std::pair<Rational, bool>> {
    auto rng = trial_rng(cfg.seed, trial);
    const RationalVector x = random_integer_point(rng, n, cfg.range);
    const Rational rhs = hkk_closed_form_value(n, k, x);
    const Rational det = determinant(pencil_eval(pencil, x));
    if (rhs == 0) {
      if (det != 0) return std::pair{Rational(0), false};
      return std::nullopt;
    }
    return std::pair{det / rhs, true};
  };
  auto [samples, skipped] = collect_samples<std::pair<Rational, bool>>(static_cast<std::size_t>(cfg.trials), fn);
  report.data["samples"] = samples.size();
  report.data["zero_skipped"] = skipped;
  if (samples.empty()) {
    report.status = CheckStatus::kInconclusive;
    return report;
  }
  const Rational constant = samples.front().first;
  std::size_t mismatches = 0;
  for (const auto& [ratio, valid] : samples)
    if (!valid || ratio != constant) ++mismatches;
  report.data["C"] = to_string(constant);
  report.data["mismatches"] = mismatches;
  bool ok = mismatches == 0 && constant > 0 && constant == pencil.provenance.constant && degree == pencil.m;
  if (degree != pencil.m) report.details.push_back("closed-form degree differs from pencil size");
  report.details.push_back("det(pencil) = " + to_string(constant) + " * closed form at " +
                           std::to_string(samples.size()) + " samples");

  if (n <= 3) {
    std::vector<std::vector<Polynomial>> matrix(static_cast<std::size_t>(pencil.m),
                                                std::vector<Polynomial>(static_cast<std::size_t>(pencil.m), Polynomial(n)));
    for (int j = 0; j < n; ++j)
      for (const auto& [ij, v] : pencil.matrices[static_cast<std::size_t>(j)].upper) {
        const Polynomial term = Polynomial::variable(n, j + 1) * Rational(v);
        matrix[static_cast<std::size_t>(ij.first)][static_cast<std::size_t>(ij.second)] += term;
        if (ij.first != ij.second) matrix[static_cast<std::size_t>(ij.second)][static_cast<std::size_t>(ij.first)] += term;
      }
    const Polynomial det = expansion_determinant(matrix, Polynomial(n), Polynomial::constant(n, 1));
    const bool symbolic = det == hkk_closed_form(n, k) * constant;
    report.data["symbolic"] = symbolic;
    report.details.push_back(std::string("symbolic identity: ") + (symbolic ? "equal" : "MISMATCH"));
    ok = ok && symbolic;
  }
  report.status = ok ? CheckStatus::kPass : CheckStatus::kFail;
  return report;
}

// ---------------------------------------------------------------------------
// Samplers

RationalVector sample_interior_point(std::mt19937_64& rng, int n, int k, long range) {
  const RationalVector y = random_integer_point(rng, n, range);
  const RationalVector dir = ones(n);
  const auto bracket = line_bracket(elem_sym(n, k + 1), y, dir, Rational(1));
  const Rational t = bracket->upper + uniform(rng, 0, range);
  return shifted(y, dir, t);
}

RationalVector sample_boundary_point(std::mt19937_64& rng, int n, int k, long range) {
  RationalVector x = sample_interior_point(rng, n, k, range);
  const int axis = static_cast<int>(uniform(rng, 1, n));
  RationalVector rest;
  for (int i = 1; i <= n; ++i)
    if (i != axis) rest.push_back(x[static_cast<std::size_t>(i - 1)]);
  const Rational top = elementary_symmetric_values(x, k + 1)[static_cast<std::size_t>(k + 1)];
  const Rational slope = elementary_symmetric_values(rest, k)[static_cast<std::size_t>(k)];
  x[static_cast<std::size_t>(axis - 1)] -= top / slope;
  return x;
}

// ---------------------------------------------------------------------------
// Cone equivalence

namespace {

enum class SampleKind { kSpecial, kBox, kInterior, kBoundary, kNearBoundary, kSmallBox };

const char* kind_name(SampleKind kind) {
  switch (kind) {
    case SampleKind::kSpecial: return "special";
    case SampleKind::kBox: return "box";
    case SampleKind::kInterior: return "interior";
    case SampleKind::kBoundary: return "exact_boundary";
    case SampleKind::kNearBoundary: return "near_boundary";
    case SampleKind::kSmallBox: return "small_box";
  }
  return "?";
}

std::vector<RationalVector> special_points(int n) {
  std::vector<RationalVector> out{ones(n), RationalVector(static_cast<std::size_t>(n), Rational(-1)),
                                  RationalVector(static_cast<std::size_t>(n), Rational(0))};
  for (int i = 1; i <= n; ++i) out.push_back(unit_vector(n, i));
  return out;
}

struct ConeSample {
  SampleKind kind;
  RationalVector x;
};

ConeSample draw_cone_sample(int n, int k, const TrialConfig& cfg, std::size_t trial) {
  auto rng = trial_rng(cfg.seed, trial);
  const RationalVector dir = ones(n);
  switch (trial % 5) {
    case 0: return {SampleKind::kBox, random_integer_point(rng, n, cfg.range)};
    case 1: return {SampleKind::kInterior, sample_interior_point(rng, n, k, cfg.range)};
    case 2: return {SampleKind::kBoundary, sample_boundary_point(rng, n, k, cfg.range)};
    case 3: {
      const RationalVector y = random_integer_point(rng, n, cfg.range);
      const Rational width = Rational(std::max(1L, cfg.range)) / (1L << 20);
      const auto bracket = line_bracket(elem_sym(n, k + 1), y, dir, width);
      if (bracket->exact) return {SampleKind::kBoundary, shifted(y, dir, *bracket->exact)};
      const bool above = (trial / 5) % 2 == 0;
      return {SampleKind::kNearBoundary, shifted(y, dir, above ? bracket->upper : bracket->lower)};
    }
    default: return {SampleKind::kSmallBox, random_integer_point(rng, n, 3)};
  }
}

}  // namespace

CheckReport verify_cone_equivalence(int n, int k, const TrialConfig& cfg) {
  check_esp_range(n, k);
  CheckReport report;
  report.suite = "cone";
  report.data["n"] = n;
  report.data["k"] = k;
  record_config(report, cfg);

  const Pencil pencil = build_esp_pencil(n, k);
  const Polynomial h = elem_sym(n, k + 1);
  const RationalVector e = ones(n);
  const auto specials = special_points(n);

  struct Outcome {
    SampleKind kind = SampleKind::kSpecial;
    Membership pencil = Membership::kOutside;
    Membership signs = Membership::kOutside;
    Membership roots = Membership::kOutside;
    bool witness_ok = true;
    RationalVector x;
  };
  const std::size_t total = specials.size() + static_cast<std::size_t>(cfg.trials);
  auto outcomes = parallel_map<Outcome>(0, total, [&](std::size_t i) {
    ConeSample sample = i < specials.size() ? ConeSample{SampleKind::kSpecial, specials[i]}
                                            : draw_cone_sample(n, k, cfg, i - specials.size());
    Outcome o;
    o.kind = sample.kind;
    auto [verdict, cert] = membership_with_certificate(pencil, sample.x);
    o.pencil = verdict;
    if (verdict == Membership::kOutside) o.witness_ok = cert.witness_holds(pencil_eval(pencil, sample.x));
    o.signs = oracle_membership_esp(n, k, sample.x);
    o.roots = root_oracle_membership(h, e, sample.x);
    o.x = std::move(sample.x);
    return o;
  });

  std::map<std::string, std::map<std::string, int>> tally;
  std::size_t disagreements = 0;
  std::size_t boundary_misses = 0;
  std::size_t bad_witness = 0;
  for (const auto& o : outcomes) {
    tally[kind_name(o.kind)][to_string(o.pencil)] += 1;
    const bool agree = o.pencil == o.signs && o.signs == o.roots;
    if (!agree) {
      ++disagreements;
      if (disagreements <= 5)
        report.details.push_back("disagreement at " + point_string(o.x) + ": pencil " + to_string(o.pencil) +
                                 ", signs " + to_string(o.signs) + ", roots " + to_string(o.roots));
    }
    if (o.kind == SampleKind::kBoundary && o.pencil != Membership::kBoundary) ++boundary_misses;
    if (!o.witness_ok) ++bad_witness;
  }
  report.data["points"] = outcomes.size();
  report.data["disagreements"] = disagreements;
  report.data["boundary_misclassified"] = boundary_misses;
  report.data["bad_witnesses"] = bad_witness;
  for (const auto& [kind, counts] : tally) {
    std::string line = std::string(kind) + ":";
    for (const auto& [verdict, count] : counts) line += " " + verdict + "=" + std::to_string(count);
    report.details.push_back(line);
  }
  report.status =
      disagreements == 0 && boundary_misses == 0 && bad_witness == 0 ? CheckStatus::kPass : CheckStatus::kFail;
  return report;
}

// ---------------------------------------------------------------------------
// Factor cones

CheckReport verify_factor_cone_inclusion(int n, int k, const TrialConfig& cfg) {
  check_esp_range(n, k);
  CheckReport report;
  report.suite = "inclusion";
  report.data["n"] = n;
  report.data["k"] = k;
  record_config(report, cfg);

  const Polynomial ek = elem_sym(n, k);
  std::vector<std::pair<Subset, Polynomial>> factors;
  for (int size = 0; size <= k - 1; ++size)
    for (const Subset& S : subsets_of_size(n, size)) factors.emplace_back(S, partial_derivative(ek, S));
  report.data["factor_cones"] = factors.size();
  const RationalVector e = ones(n);

  struct Outcome {
    bool member = true;
    std::size_t violations = 0;
    std::string first;
  };
  const std::size_t total = static_cast<std::size_t>(cfg.trials);
  auto outcomes = parallel_map<Outcome>(0, total, [&](std::size_t trial) {
    RationalVector x;
    if (trial == 0) {
      x = ones(n);
    } else if (trial <= static_cast<std::size_t>(n)) {
      x = unit_vector(n, static_cast<int>(trial));
    } else {
      auto rng = trial_rng(cfg.seed, trial);
      x = trial % 2 == 0 ? sample_interior_point(rng, n, k, cfg.range) : sample_boundary_point(rng, n, k, cfg.range);
    }
    Outcome o;
    o.member = is_member(oracle_membership_esp(n, k, x));
    for (const auto& [S, f] : factors) {
      if (is_member(root_oracle_membership(f, e, x))) continue;
      if (o.violations++ == 0) {
        std::string set = "{";
        for (std::size_t i = 0; i < S.size(); ++i) set += (i ? "," : "") + std::to_string(S[i]);
        o.first = point_string(x) + " outside the cone of d^" + set + "} e_" + std::to_string(k);
      }
    }
    return o;
  });

  std::size_t violations = 0;
  std::size_t non_members = 0;
  for (const auto& o : outcomes) {
    if (!o.member) ++non_members;
    violations += o.violations;
    if (o.violations > 0 && report.details.size() < 5) report.details.push_back(o.first);
  }
  report.data["points"] = outcomes.size();
  report.data["violations"] = violations;
  report.data["sampler_non_members"] = non_members;
  report.status = violations == 0 && non_members == 0 ? CheckStatus::kPass : CheckStatus::kFail;
  return report;
}

// ---------------------------------------------------------------------------
// Derivative cones

LinearFormsSystem random_forms_system(std::mt19937_64& rng, int d, int n) {
  while (true) {
    std::vector<RationalVector> rows;
    for (int j = 0; j < d; ++j) {
      RationalVector row;
      const long den = uniform(rng, 1, 3);
      for (int i = 0; i < n; ++i) row.emplace_back(uniform(rng, -4, 4), den);
      for (auto& c : row) c.canonicalize();
      rows.push_back(std::move(row));
    }
    RationalVector base = random_integer_point(rng, n, 3);
    bool admissible = true;
    for (const auto& row : rows) {
      Rational v = 0;
      for (int i = 0; i < n; ++i) v += row[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(i)];
      if (v == 0) admissible = false;
    }
    if (admissible) return LinearFormsSystem(std::move(rows), std::move(base));
  }
}

CheckReport verify_derivative_cone(const LinearFormsSystem& forms, int kderiv, const TrialConfig& cfg) {
  CheckReport report;
  report.suite = "derivative-cone";
  report.data["d"] = forms.d();
  report.data["n"] = forms.n();
  report.data["kderiv"] = kderiv;
  record_config(report, cfg);

  const Pencil pencil = derivative_cone_pencil(forms, kderiv);
  report.data["m"] = pencil.m;
  const RationalVector& e = forms.base_point();
  Polynomial g = forms.product();
  for (int i = 0; i < kderiv; ++i) g = directional_derivative(g, e);

  const bool base_pd = psd_check(pencil_eval(pencil, e)).verdict == PsdVerdict::kPositiveDefinite;
  report.data["pd_at_base_point"] = base_pd;

  const int n = forms.n();
  std::vector<RationalVector> specials{e, shifted(RationalVector(static_cast<std::size_t>(n), Rational(0)), e, -1),
                                       RationalVector(static_cast<std::size_t>(n), Rational(0))};
  for (int i = 1; i <= n; ++i) specials.push_back(unit_vector(n, i));

  struct Outcome {
    Membership pencil = Membership::kOutside;
    Membership roots = Membership::kOutside;
    RationalVector x;
  };
  const std::size_t total = specials.size() + static_cast<std::size_t>(cfg.trials);
  auto outcomes = parallel_map<Outcome>(0, total, [&](std::size_t i) {
    RationalVector x;
    if (i < specials.size()) {
      x = specials[i];
    } else {
      const std::size_t trial = i - specials.size();
      auto rng = trial_rng(cfg.seed, trial);
      const RationalVector y = random_integer_point(rng, n, cfg.range);
      const auto bracket = trial % 3 == 0 ? std::nullopt
                                          : line_bracket(g, y, e, Rational(std::max(1L, cfg.range)) / (1L << 16));
      if (!bracket) {
        x = y;
      } else if (bracket->exact) {
        x = shifted(y, e, *bracket->exact);
      } else if (trial % 3 == 1) {
        x = shifted(y, e, (trial / 3) % 2 == 0 ? bracket->upper : bracket->lower);
      } else {
        x = shifted(y, e, bracket->upper + uniform(rng, 0, cfg.range));
      }
    }
    Outcome o;
    o.pencil = membership(pencil, x);
    o.roots = root_oracle_membership(g, e, x);
    o.x = std::move(x);
    return o;
  });

  std::size_t disagreements = 0;
  std::map<std::string, int> tally;
  for (const auto& o : outcomes) {
    tally[to_string(o.roots)] += 1;
    if (o.pencil == o.roots) continue;
    if (++disagreements <= 5)
      report.details.push_back("disagreement at " + point_string(o.x) + ": pencil " + to_string(o.pencil) +
                               ", roots " + to_string(o.roots));
  }
  report.data["points"] = outcomes.size();
  report.data["disagreements"] = disagreements;
  std::string line = "root-oracle verdicts:";
  for (const auto& [verdict, count] : tally) line += " " + verdict + "=" + std::to_string(count);
  report.details.push_back(line);
  report.status = disagreements == 0 && base_pd ? CheckStatus::kPass : CheckStatus::kFail;
  return report;
}

}  // namespace esp
