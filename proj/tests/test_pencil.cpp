#include <doctest.h>

#include "esp/pencil.hpp"
#include "esp/verify.hpp"
#include "oracles.hpp"

using esp::Membership;
using esp::Pencil;
using esp::Polynomial;
using esp::Rational;
using esp::RationalVector;

namespace {

std::vector<std::vector<Polynomial>> symbolic_matrix(const Pencil& p) {
  std::vector<std::vector<Polynomial>> m(static_cast<std::size_t>(p.m),
                                         std::vector<Polynomial>(static_cast<std::size_t>(p.m), Polynomial(p.n)));
  for (int j = 0; j < p.n; ++j)
    for (const auto& [ij, v] : p.matrices[static_cast<std::size_t>(j)].upper) {
      const Polynomial term = Polynomial::variable(p.n, j + 1) * Rational(v);
      m[static_cast<std::size_t>(ij.first)][static_cast<std::size_t>(ij.second)] += term;
      if (ij.first != ij.second) m[static_cast<std::size_t>(ij.second)][static_cast<std::size_t>(ij.first)] += term;
    }
  return m;
}

RationalVector scaled(const RationalVector& x, const Rational& s) {
  RationalVector out = x;
  for (auto& c : out) c *= s;
  return out;
}

}  // namespace

TEST_CASE("pencil sizes") {
  CHECK(esp::build_esp_pencil(3, 1).m == 4);
  CHECK(esp::build_esp_pencil(4, 2).m == 17);
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const Pencil p = esp::build_esp_pencil(n, k);
      CHECK(p.m == oracle::graph_vertices(n, k) - 1);
      CHECK(static_cast<int>(p.matrices.size()) == n);
      CHECK(esp::hkk_closed_form_degree(n, k) == p.m);
      CHECK(p.provenance.ordering.size() == static_cast<std::size_t>(p.m + 1));
      CHECK(p.provenance.ordering.back() == "z");
    }
  CHECK_THROWS_WITH_AS(esp::build_esp_pencil(2, 2), doctest::Contains("k out of range"), esp::Error);
  CHECK_THROWS_AS(esp::build_esp_pencil(3, 0), esp::Error);
}

TEST_CASE("n=3, k=1: det = 2 e2 e1^2 symbolically") {
  const Pencil p = esp::build_esp_pencil(3, 1);
  const Polynomial det = esp::expansion_determinant(symbolic_matrix(p), Polynomial(3), Polynomial::constant(3, 1));
  CHECK(det == esp::elem_sym(3, 2) * esp::elem_sym(3, 1).pow(2) * Rational(2));
  CHECK(p.provenance.constant == 2);
  CHECK(esp::determinant(esp::pencil_eval(p, esp::ones(3))) == 54);
}

TEST_CASE("n=4, k=2 constant is 96") {
  const Pencil p = esp::build_esp_pencil(4, 2);
  CHECK(p.provenance.constant == 96);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalVector y = oracle::random_point(rng, 4, 1000);
    Rational rhs = 96 * oracle::elem_sym(y, 3) * oracle::elem_sym(y, 2) * oracle::elem_sym(y, 2) * oracle::elem_sym(y, 2);
    for (int j = 0; j < 4; ++j) {
      RationalVector rest;
      for (int i = 0; i < 4; ++i)
        if (i != j) rest.push_back(y[static_cast<std::size_t>(i)]);
      rhs *= oracle::elem_sym(rest, 1) * oracle::elem_sym(rest, 1);
    }
    CHECK(esp::determinant(esp::pencil_eval(p, y)) == rhs);
  }
}

TEST_CASE("closed form value and polynomial agree") {
  std::mt19937_64 rng(6);
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const Polynomial f = esp::hkk_closed_form(n, k);
      CHECK(f.total_degree() == esp::hkk_closed_form_degree(n, k));
      CHECK(f.is_homogeneous());
      const RationalVector y = oracle::random_point(rng, n, 50);
      CHECK(f.evaluate(y) == esp::hkk_closed_form_value(n, k, y));
    }
}

TEST_CASE("pencil evaluation") {
  const Pencil p = esp::build_esp_pencil(3, 1);
  CHECK(esp::pencil_eval(p, RationalVector{0, 0, 0}).nonzeros() == 0);
  CHECK(esp::pencil_eval(p, esp::unit_vector(3, 1)) == p.matrices[0].to_rational());
  CHECK_THROWS_AS(esp::pencil_eval(p, RationalVector{1, 1}), esp::Error);
}

TEST_CASE("every B_j is PSD and their sum PD") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const auto certs = esp::certify_pencil(esp::build_esp_pencil(n, k));
      CHECK(certs.all_psd());
      CHECK(certs.sum_pd());
    }
}

TEST_CASE("exact PSD check on dense input") {
  CHECK(esp::psd_check_exact(std::vector<RationalVector>{{1, 0}, {0, 1}}).verdict == esp::PsdVerdict::kPositiveDefinite);
  CHECK_THROWS_AS(esp::psd_check_exact(std::vector<RationalVector>{{1, 2}, {0, 1}}), esp::Error);
}

TEST_CASE("membership examples") {
  const Pencil p31 = esp::build_esp_pencil(3, 1);
  CHECK(esp::membership(p31, esp::ones(3)) == Membership::kInterior);
  CHECK(esp::membership(p31, RationalVector{1, 1, Rational(-1, 2)}) == Membership::kBoundary);
  CHECK(esp::membership(p31, RationalVector{1, 1, Rational(-2, 5)}) == Membership::kInterior);
  CHECK(esp::membership(p31, RationalVector{1, 1, -1}) == Membership::kOutside);
  CHECK(esp::membership(esp::build_esp_pencil(4, 2), RationalVector{1, 1, 1, -1}) == Membership::kOutside);
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const Pencil p = esp::build_esp_pencil(n, k);
      for (int i = 1; i <= n; ++i) CHECK(esp::is_member(esp::membership(p, esp::unit_vector(n, i))));
      CHECK(esp::membership(p, scaled(esp::ones(n), -1)) == Membership::kOutside);
    }
  const auto [verdict, cert] = esp::membership_with_certificate(p31, RationalVector{1, 1, -1});
  CHECK(verdict == Membership::kOutside);
  CHECK(cert.witness_holds(esp::pencil_eval(p31, RationalVector{1, 1, -1})));
}

TEST_CASE("membership is invariant under positive scaling and the cone is convex") {
  std::mt19937_64 rng(8);
  for (int n = 3; n <= 4; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      const Pencil p = esp::build_esp_pencil(n, k);
      std::vector<RationalVector> members;
      for (int trial = 0; trial < 30; ++trial) {
        const RationalVector y = oracle::random_point(rng, n, 20);
        const Membership v = esp::membership(p, y);
        CHECK(esp::membership(p, scaled(y, Rational(7, 3))) == v);
        if (v == Membership::kInterior) CHECK(esp::membership(p, scaled(y, -1)) == Membership::kOutside);
        if (esp::is_member(v)) members.push_back(y);
      }
      for (std::size_t i = 1; i < members.size(); ++i) {
        RationalVector mid = members[i];
        for (std::size_t c = 0; c < mid.size(); ++c) mid[c] = (mid[c] + members[i - 1][c]) / 2;
        CHECK(esp::is_member(esp::membership(p, mid)));
      }
    }
}

TEST_CASE("linear forms systems") {
  const esp::LinearFormsSystem sys({{1, 0}, {0, -1}, {1, 1}}, {1, 1});
  CHECK(sys.coefficients()[1] == RationalVector{0, 1});  // negated so that the form is positive at e
  CHECK(sys.product() == Polynomial::variable(2, 1) * Polynomial::variable(2, 2) *
                             (Polynomial::variable(2, 1) + Polynomial::variable(2, 2)));
  CHECK_THROWS_WITH_AS(esp::LinearFormsSystem({{1, 0}, {1, -1}}, {1, 1}),
                       doctest::Contains("inadmissible base point"), esp::Error);
}

TEST_CASE("identity forms reproduce the pencil") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n - 2; ++k) {
      std::vector<RationalVector> rows;
      for (int i = 1; i <= n; ++i) rows.push_back(esp::unit_vector(n, i));
      const Pencil d = esp::derivative_cone_pencil(esp::LinearFormsSystem(rows, esp::ones(n)), n - k - 1);
      const Pencil p = esp::build_esp_pencil(n, k);
      CHECK(d.matrices == p.matrices);
      CHECK(d.m == p.m);
    }
}

TEST_CASE("derivative cone of three lines in the plane") {
  const esp::LinearFormsSystem sys({{1, 0}, {0, 1}, {1, 1}}, {1, 1});
  const Pencil p = esp::derivative_cone_pencil(sys, 1);
  CHECK(esp::psd_check(esp::pencil_eval(p, RationalVector{1, 1})).verdict == esp::PsdVerdict::kPositiveDefinite);
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalVector y = oracle::random_point(rng, 2, 30);
    // Forms divided by their values (1, 1, 2) at e.
    const RationalVector l{y[0], y[1], (y[0] + y[1]) / 2};
    const Rational e1 = oracle::elem_sym(l, 1);
    const Rational e2 = oracle::elem_sym(l, 2);
    const bool member = e1 >= 0 && e2 >= 0;
    CHECK(esp::is_member(esp::membership(p, y)) == member);
  }
  CHECK_THROWS_AS(esp::derivative_cone_pencil(sys, 3), esp::Error);
  CHECK_THROWS_AS(esp::derivative_cone_pencil(sys, 0), esp::Error);
}

TEST_CASE("fractional forms are scaled to integers") {
  const esp::LinearFormsSystem sys({{Rational(1, 2), 0}, {0, Rational(1, 3)}, {1, 1}}, {1, 1});
  const Pencil p = esp::derivative_cone_pencil(sys, 1);
  REQUIRE(p.provenance.derivative.has_value());
  CHECK(p.provenance.derivative->scale == 2);
  const Pencil q = esp::derivative_cone_pencil(esp::LinearFormsSystem({{3, 0}, {0, 2}, {6, 6}}, {1, 1}), 1);
  CHECK(p.matrices == q.matrices);
}

TEST_CASE("linear substitution") {
  const Pencil p = esp::build_esp_pencil(3, 1);
  std::vector<RationalVector> identity{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(esp::substitute_linear(p, identity).matrices == p.matrices);
  std::vector<RationalVector> perm{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  const Pencil q = esp::substitute_linear(p, perm);
  CHECK(q.matrices[1] == p.matrices[0]);
  CHECK(q.matrices[2] == p.matrices[1]);
  CHECK(q.matrices[0] == p.matrices[2]);

  std::vector<RationalVector> drop{{1, 0, 0}, {0, 0, 0}, {0, 0, 1}};
  const Pencil r = esp::substitute_linear(p, drop);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    RationalVector y = oracle::random_point(rng, 3, 100);
    const Rational lhs = esp::determinant(esp::pencil_eval(r, y));
    y[1] = 0;
    CHECK(lhs == esp::determinant(esp::pencil_eval(p, y)));
  }
  CHECK_THROWS_AS(esp::substitute_linear(p, {{Rational(1, 2), 0, 0}, {0, 1, 0}, {0, 0, 1}}), esp::Error);
  CHECK_THROWS_AS(esp::substitute_linear(p, {{1, 0}, {0, 1}}), esp::Error);
}
