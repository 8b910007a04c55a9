#pragma once

// Independent oracles and seeded verification suites.
//
// Every suite is deterministic given its TrialConfig: trial i draws from an
// RNG seeded by splitmix64(seed, i), so results do not depend on how trials
// are spread over worker threads.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "esp/graph.hpp"
#include "esp/pencil.hpp"
#include "esp/poly.hpp"

namespace esp {

struct TrialConfig {
  std::uint64_t seed = 20240601;
  int trials = 50;
  long range = 1'000'000;  // coordinates drawn from integers in [-range, range]
};

/// Minimum coordinate range for randomized identity tests.
inline constexpr long kIdentityTestRange = 1'000'000;

/// The restriction of a polynomial to some line was not real-rooted.
class NotHyperbolicError : public Error {
 public:
  using Error::Error;
};

enum class CheckStatus { kPass, kFail, kInconclusive, kSkipped };
std::string to_string(CheckStatus status);

struct CheckReport {
  std::string suite;
  CheckStatus status = CheckStatus::kPass;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();  // parameters, counts, constants
  std::vector<std::string> details;                                // human-readable lines

  bool passed() const { return status == CheckStatus::kPass; }
  std::string to_text() const;
  nlohmann::ordered_json to_json() const;
};

/// Worker count: ESP_SPECTRA_THREADS when set (at most 64), else hardware concurrency.
int worker_count();

/// Deterministic per-trial generator.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

RationalVector random_integer_point(std::mt19937_64& rng, int n, long range);

/// x in the hyperbolicity cone of e_{k+1} iff e_1(x), ..., e_{k+1}(x) >= 0; interior iff all > 0.
Membership oracle_membership_esp(int n, int k, std::span<const Rational> x);

/// Verdict from the roots of t -> h(x + t e): all negative is interior, all
/// nonpositive with t = 0 a root is boundary. Throws NotHyperbolicError if the
/// restriction is not real-rooted.
Membership root_oracle_membership(const Polynomial& h, std::span<const Rational> e, std::span<const Rational> x);

/// prod over |S| = k of e_{r-k}([n] \ S)^{k!}.
Rational gamma_value(int n, int k, int r, std::span<const Rational> point);

/// H_{k,r}(x): determinant of the reduced weighted Laplacian of G_{n,k} with
/// parameter-r weights, evaluated pointwise. Throws PoleError at poles.
class HEvaluator {
 public:
  HEvaluator(int n, int k, int r);
  Rational operator()(std::span<const Rational> point) const;

 private:
  SymbolicLaplacian reduced_;
};

CheckReport verify_matrix_tree(const Multigraph& g);
CheckReport verify_matrix_tree(const LabeledGraph& g);

CheckReport verify_step_recursion(int n, int k, int r, const TrialConfig& cfg);

CheckReport verify_hkk_identity(int n, int k, const TrialConfig& cfg);

CheckReport verify_cone_equivalence(int n, int k, const TrialConfig& cfg);

CheckReport verify_factor_cone_inclusion(int n, int k, const TrialConfig& cfg);

/// Pencil membership against the root oracle on D_e^kderiv h; also certifies the pencil at e is PD.
CheckReport verify_derivative_cone(const LinearFormsSystem& forms, int kderiv, const TrialConfig& cfg);

/// Random admissible system with small integer coefficients.
LinearFormsSystem random_forms_system(std::mt19937_64& rng, int d, int n);

/// Point in the interior of the cone of e_{k+1}: y shifted along the all-ones direction.
RationalVector sample_interior_point(std::mt19937_64& rng, int n, int k, long range);

/// Exact boundary point: an interior point moved along a coordinate axis until e_{k+1} vanishes.
RationalVector sample_boundary_point(std::mt19937_64& rng, int n, int k, long range);

}  // namespace esp
