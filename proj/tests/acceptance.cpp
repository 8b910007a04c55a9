// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "esp/export.hpp"
#include "esp/graph.hpp"
#include "esp/verify.hpp"

#ifndef ESP_SPECTRA_BIN
#error "ESP_SPECTRA_BIN must point at the CLI binary"
#endif

using esp::Polynomial;
using esp::Rational;
using esp::RationalVector;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < limit_seconds;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " [" << std::fixed
       << std::setprecision(2) << elapsed << "s / limit " << std::setprecision(0) << limit_seconds << "s]";
  if (!in_time) line << " time limit exceeded;";
  if (!out.note.empty()) line << " " << out.note;
  std::cout << line.str() << std::endl;
}

Polynomial x(int n, int i) { return Polynomial::variable(n, i); }

Rational esp_value(std::span<const Rational> v, int k) { return esp::elementary_symmetric_values(v, k)[static_cast<std::size_t>(k)]; }

std::string run_capture(const std::string& args) {
  const std::string cmd = std::string(ESP_SPECTRA_BIN) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  if (pclose(pipe) != 0) throw std::runtime_error("command failed: " + cmd);
  return out;
}

Outcome fig_example() {
  const auto g = esp::example_four_edge_graph();
  const int a = 1, b = 2, c = 3, d = 4;
  const Polynomial printed =
      x(4, a) * x(4, b) + x(4, a) * x(4, c) + x(4, a) * x(4, d) + x(4, b) * x(4, c) + x(4, b) * x(4, d);
  const std::vector<std::vector<Polynomial>> matrix{
      {x(4, a) + x(4, c) + x(4, d), -x(4, a), -x(4, c) - x(4, d)},
      {-x(4, a), x(4, a) + x(4, b), -x(4, b)},
      {-x(4, c) - x(4, d), -x(4, b), x(4, b) + x(4, c) + x(4, d)}};
  const bool poly_ok = esp::spanning_tree_polynomial(g) == printed;
  const bool matrix_ok = esp::weighted_laplacian(g, esp::edge_variable_weights(g)).polynomial_matrix() == matrix;
  const auto tree = esp::verify_matrix_tree(g);
  return {poly_ok && matrix_ok && tree.passed(),
          std::string("polynomial ") + (poly_ok ? "matches" : "differs") + ", Laplacian " +
              (matrix_ok ? "matches" : "differs") + ", matrix-tree " + esp::to_string(tree.status) + " for 3 deletions"};
}

Outcome worked_example() {
  const esp::Pencil p = esp::build_esp_pencil(4, 2);
  int equal = 0;
  const int samples = 100;
  for (int t = 0; t < samples; ++t) {
    auto rng = esp::trial_rng(20240601, static_cast<std::uint64_t>(t));
    const RationalVector y = esp::random_integer_point(rng, 4, 1'000'000);
    Rational rhs = 96 * esp_value(y, 3);
    const Rational e2 = esp_value(y, 2);
    rhs *= e2 * e2 * e2;
    for (int j = 0; j < 4; ++j) {
      RationalVector rest;
      for (int i = 0; i < 4; ++i)
        if (i != j) rest.push_back(y[static_cast<std::size_t>(i)]);
      const Rational e1 = esp_value(rest, 1);
      rhs *= e1 * e1;
    }
    if (esp::determinant(esp::pencil_eval(p, y)) == rhs) ++equal;
  }
  return {p.m == 17 && equal == samples,
          "m=" + std::to_string(p.m) + ", exact equality at " + std::to_string(equal) + "/" + std::to_string(samples) +
              " points in [-10^6, 10^6]"};
}

Outcome small_symbolic() {
  const esp::Pencil p = esp::build_esp_pencil(3, 1);
  std::vector<std::vector<Polynomial>> m(4, std::vector<Polynomial>(4, Polynomial(3)));
  for (int j = 0; j < 3; ++j)
    for (const auto& [ij, v] : p.matrices[static_cast<std::size_t>(j)].upper) {
      const Polynomial term = x(3, j + 1) * Rational(v);
      m[static_cast<std::size_t>(ij.first)][static_cast<std::size_t>(ij.second)] += term;
      if (ij.first != ij.second) m[static_cast<std::size_t>(ij.second)][static_cast<std::size_t>(ij.first)] += term;
    }
  const Polynomial det = esp::berkowitz_determinant(m, Polynomial(3), Polynomial::constant(3, 1));
  const Polynomial expected = esp::elem_sym(3, 2) * esp::elem_sym(3, 1).pow(2) * Rational(2);
  return {det == expected, "det = " + det.to_string()};
}

Outcome psd_structure() {
  int pencils = 0;
  int bad = 0;
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const auto certs = esp::certify_pencil(esp::build_esp_pencil(n, k));
      ++pencils;
      if (!certs.all_psd() || !certs.sum_pd()) ++bad;
    }
  return {bad == 0, std::to_string(pencils) + " pencils, " + std::to_string(bad) + " with a non-PSD B_j or non-PD sum"};
}

Outcome step_recursion() {
  esp::TrialConfig cfg;
  cfg.trials = 50;
  int runs = 0;
  int bad = 0;
  std::size_t min_samples = SIZE_MAX;
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n - 1; ++k)
      for (int r = k; r <= n - 1; ++r) {
        const auto report = esp::verify_step_recursion(n, k, r, cfg);
        ++runs;
        min_samples = std::min(min_samples, report.data["samples"].get<std::size_t>());
        if (!report.passed()) ++bad;
      }
  return {bad == 0, std::to_string(runs) + " (n,k,r) triples, min " + std::to_string(min_samples) +
                        " non-pole samples, C_{0,r} = (r+1)! checked, " + std::to_string(bad) + " failures"};
}

Outcome triple_oracle() {
  esp::TrialConfig cfg;
  cfg.trials = 1000;
  std::size_t points = 0;
  std::size_t disagreements = 0;
  std::size_t boundary_misses = 0;
  int bad = 0;
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const auto report = esp::verify_cone_equivalence(n, k, cfg);
      points += report.data["points"].get<std::size_t>();
      disagreements += report.data["disagreements"].get<std::size_t>();
      boundary_misses += report.data["boundary_misclassified"].get<std::size_t>();
      if (!report.passed()) ++bad;
    }
  return {bad == 0, std::to_string(points) + " points over 15 (n,k), " + std::to_string(disagreements) +
                        " disagreements, " + std::to_string(boundary_misses) + " misclassified exact boundary points"};
}

Outcome derivative_cones() {
  esp::TrialConfig cfg;
  cfg.trials = 200;
  cfg.range = 1000;
  int systems = 0;
  int checks = 0;
  int bad = 0;
  for (int s = 0; s < 12; ++s) {
    const int d = 2 + s % 4;
    const int n = 2 + s % 3;
    auto rng = esp::trial_rng(4242, static_cast<std::uint64_t>(s));
    const auto forms = esp::random_forms_system(rng, d, n);
    ++systems;
    for (int kd = 1; kd <= d - 1; ++kd) {
      cfg.seed = 1000 + static_cast<std::uint64_t>(s);
      const auto report = esp::verify_derivative_cone(forms, kd, cfg);
      ++checks;
      if (!report.passed()) ++bad;
    }
  }
  return {bad == 0, std::to_string(systems) + " systems (d<=5, n<=4), " + std::to_string(checks) +
                        " (system, kderiv) pairs at >=200 points, " + std::to_string(bad) + " failures"};
}

Outcome factor_cones() {
  esp::TrialConfig cfg;
  cfg.trials = 500;
  std::size_t violations = 0;
  int bad = 0;
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const auto report = esp::verify_factor_cone_inclusion(n, k, cfg);
      violations += report.data["violations"].get<std::size_t>();
      if (!report.passed()) ++bad;
    }
  return {bad == 0, "500 member points per (n,k), n<=5, " + std::to_string(violations) + " violations"};
}

Outcome determinism() {
  int mismatches = 0;
  for (const char* args : {"build --n 4 --k 2 --format json", "build --n 5 --k 3 --format sdpa",
                           "build --n 3 --k 2 --format json"})
    if (run_capture(args) != run_capture(args)) ++mismatches;
  const char* verify = "verify --suite all --n 4 --k 2 --trials 40 --seed 7 --json";
  if (run_capture(verify) != run_capture(verify)) ++mismatches;
  esp::TrialConfig cfg;
  cfg.trials = 200;
  cfg.seed = 11;
  ::setenv("ESP_SPECTRA_THREADS", "1", 1);
  const auto one = esp::verify_cone_equivalence(4, 2, cfg).to_json();
  ::setenv("ESP_SPECTRA_THREADS", "3", 1);
  const auto three = esp::verify_cone_equivalence(4, 2, cfg).to_json();
  ::unsetenv("ESP_SPECTRA_THREADS");
  if (one != three) ++mismatches;
  return {mismatches == 0, "3 build outputs, 1 CLI verify report, 1 report across thread counts; " +
                               std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main() {
  criterion(1, "four-edge example graph reproduced exactly", 1, fig_example);
  criterion(2, "n=4, k=2 determinant equals 96 e3 e2^3 prod e1(rest)^2", 30, worked_example);
  criterion(3, "n=3, k=1 symbolic determinant equals 2 e2 e1^2", 5, small_symbolic);
  criterion(4, "B_j PSD and sum PD for all 1 <= k < n <= 6", 120, psd_structure);
  criterion(5, "step recursion ratio constant for all k <= r <= n-1, n <= 5", 120, step_recursion);
  criterion(6, "pencil, sign and root oracles agree, n <= 6", 300, triple_oracle);
  criterion(7, "derivative-cone pencils match the root oracle", 180, derivative_cones);
  criterion(8, "no factor-cone inclusion violations, n <= 5", 120, factor_cones);
  criterion(9, "byte-identical builds and reproducible reports", 120, determinism);
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
