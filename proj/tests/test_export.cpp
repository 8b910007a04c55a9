#include <doctest.h>

#include <sstream>

#include "esp/export.hpp"

using esp::Pencil;
using esp::Rational;
using esp::RationalVector;
using nlohmann::ordered_json;

namespace {

/// Minimal SDPA-sparse reader: comments start with '*' or '"', then
/// mDIM, nBLOCK, block sizes, objective, and "mat block i j value" lines.
struct SdpaProblem {
  int variables = 0;
  int blocks = 0;
  int block_size = 0;
  RationalVector objective;
  std::vector<std::map<std::pair<int, int>, long>> matrices;  // index 0 is F0
};

SdpaProblem parse_sdpa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> body;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '*' && line[0] != '"') body.push_back(line);
  SdpaProblem p;
  REQUIRE(body.size() >= 4);
  p.variables = std::stoi(body[0]);
  p.blocks = std::stoi(body[1]);
  p.block_size = std::stoi(body[2]);
  std::istringstream obj(body[3]);
  std::string tok;
  while (obj >> tok) p.objective.push_back(esp::parse_rational(tok));
  p.matrices.resize(static_cast<std::size_t>(p.variables + 1));
  for (std::size_t i = 4; i < body.size(); ++i) {
    std::istringstream ls(body[i]);
    int mat = -1, block = -1, r = -1, c = -1;
    std::string value;
    ls >> mat >> block >> r >> c >> value;
    REQUIRE(!ls.fail());
    REQUIRE(mat >= 0);
    REQUIRE(mat <= p.variables);
    REQUIRE(block == 1);
    REQUIRE(r >= 1);
    REQUIRE(r <= c);
    REQUIRE(c <= p.block_size);
    REQUIRE(value.find_first_of("eE") == std::string::npos);
    p.matrices[static_cast<std::size_t>(mat)][{r, c}] = std::stol(value);
  }
  return p;
}

Pencil derivative_example() {
  const esp::LinearFormsSystem sys({{Rational(1, 2), 0}, {0, 1}, {1, -1}}, {2, 1});
  return esp::derivative_cone_pencil(sys, 1);
}

}  // namespace

TEST_CASE("JSON round trip is exact") {
  for (const Pencil& p : {esp::build_esp_pencil(3, 1), esp::build_esp_pencil(4, 2), esp::build_esp_pencil(5, 3),
                          derivative_example()}) {
    const std::string text = esp::write_pencil_json(p);
    const Pencil back = esp::read_pencil_json(text);
    CHECK(back == p);
    CHECK(esp::write_pencil_json(back) == text);
  }
}

TEST_CASE("JSON layout") {
  const auto j = esp::pencil_to_json(esp::build_esp_pencil(3, 1));
  CHECK(j["schema_version"] == 1);
  CHECK(j["m"] == 4);
  CHECK(j["matrices"].size() == 3);
  CHECK(j["matrices"][0]["var_index"] == 1);
  CHECK(j["provenance"]["deleted_vertex"] == "z");
  CHECK(j["provenance"]["constant"]["numerator"] == "2");
  CHECK(j["provenance"]["constant"]["denominator"] == "1");
  for (const auto& m : j["matrices"])
    for (const auto& e : m["entries"]) {
      CHECK(e[0].get<int>() >= 1);
      CHECK(e[0].get<int>() <= e[1].get<int>());
      CHECK(e[1].get<int>() <= 4);
    }
  const auto d = esp::pencil_to_json(derivative_example());
  CHECK(d["provenance"]["derivative"]["scale"] == "2");
  CHECK(d["provenance"]["derivative"]["kderiv"] == 1);
}

TEST_CASE("malformed JSON is rejected") {
  const auto good = esp::pencil_to_json(esp::build_esp_pencil(3, 1));
  auto mutate = [&](auto&& edit) {
    ordered_json j = good;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(esp::read_pencil_json("{not json"), esp::Error);
  CHECK_THROWS_AS(esp::pencil_from_json(mutate([](ordered_json& j) { j["schema_version"] = 2; })), esp::Error);
  CHECK_THROWS_AS(esp::pencil_from_json(mutate([](ordered_json& j) { j.erase("m"); })), esp::Error);
  CHECK_THROWS_AS(esp::pencil_from_json(mutate([](ordered_json& j) { j["matrices"][0]["entries"][0] = {2, 1, 1}; })),
                  esp::Error);
  CHECK_THROWS_AS(esp::pencil_from_json(mutate([](ordered_json& j) { j["matrices"][0]["entries"][0] = {1, 9, 1}; })),
                  esp::Error);
  CHECK_THROWS_AS(esp::pencil_from_json(mutate([](ordered_json& j) { j["matrices"][1]["var_index"] = 1; })),
                  esp::Error);
  CHECK_THROWS_AS(esp::pencil_from_json(mutate([](ordered_json& j) { j["matrices"][0]["entries"][0][2] = 1.5; })),
                  esp::Error);
  CHECK_THROWS_AS(esp::pencil_from_json(mutate([](ordered_json& j) { j["matrices"].erase(0); })), esp::Error);
}

TEST_CASE("entries beyond int64 are refused") {
  Pencil p = esp::build_esp_pencil(3, 1);
  p.matrices[0].add(0, 0, esp::Integer("100000000000000000000000"));
  CHECK_THROWS_WITH_AS(esp::write_pencil_json(p), doctest::Contains("int64"), esp::Error);
}

TEST_CASE("SDPA output parses and reproduces the pencil") {
  for (const Pencil& p : {esp::build_esp_pencil(3, 1), esp::build_esp_pencil(4, 3), derivative_example()}) {
    const auto sdpa = parse_sdpa(esp::write_pencil_sdpa(p));
    CHECK(sdpa.variables == p.n);
    CHECK(sdpa.blocks == 1);
    CHECK(sdpa.block_size == p.m);
    CHECK(sdpa.objective == esp::ones(p.n));
    CHECK(sdpa.matrices[0].empty());
    for (int j = 1; j <= p.n; ++j) {
      const auto& expected = p.matrices[static_cast<std::size_t>(j - 1)].upper;
      CHECK(sdpa.matrices[static_cast<std::size_t>(j)].size() == expected.size());
      for (const auto& [ij, v] : expected)
        CHECK(sdpa.matrices[static_cast<std::size_t>(j)].at({ij.first + 1, ij.second + 1}) == v.get_si());
    }
  }
  const Pencil p = esp::build_esp_pencil(3, 1);
  const auto custom = parse_sdpa(esp::write_pencil_sdpa(p, {Rational(1, 4), -2, Rational(3, 8)}));
  CHECK(custom.objective == RationalVector{Rational(1, 4), -2, Rational(3, 8)});
  CHECK_THROWS_AS(esp::write_pencil_sdpa(p, {Rational(1, 3), 1, 1}), esp::Error);
  CHECK_THROWS_AS(esp::write_pencil_sdpa(p, {1, 1}), esp::Error);
}

TEST_CASE("decimal rendering") {
  CHECK(esp::to_decimal_string(Rational(1, 4)) == "0.25");
  CHECK(esp::to_decimal_string(Rational(-3, 8)) == "-0.375");
  CHECK(esp::to_decimal_string(Rational(5)) == "5");
  CHECK(esp::to_decimal_string(Rational(-1, 20)) == "-0.05");
  CHECK(esp::to_decimal_string(Rational(123, 10)) == "12.3");
  CHECK_THROWS_AS(esp::to_decimal_string(Rational(1, 3)), esp::Error);
}

TEST_CASE("forms file parsing") {
  const auto sys = esp::parse_forms("# three lines\n3 2\n1 0\n0 1  # second\n1 1\n1 1\n");
  CHECK(sys.d() == 3);
  CHECK(sys.n() == 2);
  CHECK(sys.coefficients()[2] == RationalVector{1, 1});
  CHECK(sys.base_point() == RationalVector{1, 1});
  const auto frac = esp::parse_forms("2 2\n1/2 -0.25\n0 -1\n4 1\n");
  CHECK(frac.coefficients()[0] == RationalVector{Rational(1, 2), Rational(-1, 4)});
  CHECK(frac.coefficients()[1] == RationalVector{0, 1});
  CHECK_THROWS_AS(esp::parse_forms("3 2\n1 0\n0 1\n1 1\n"), esp::Error);
  CHECK_THROWS_AS(esp::parse_forms("x 2\n"), esp::Error);
  CHECK_THROWS_WITH_AS(esp::parse_forms("2 2\n1 0\n1 -1\n1 1\n"), doctest::Contains("inadmissible base point"),
                       esp::Error);
}
