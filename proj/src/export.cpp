#include "esp/export.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace esp {

using nlohmann::ordered_json;

namespace {

std::int64_t to_int64(const Integer& v) {
  if (!v.fits_slong_p() || sizeof(long) < sizeof(std::int64_t)) throw Error("pencil entry exceeds int64: " + v.get_str());
  return static_cast<std::int64_t>(v.get_si());
}

const ordered_json& field(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("pencil JSON: missing field '") + key + "'");
  return j.at(key);
}

int int_field(const ordered_json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw Error(std::string("pencil JSON: field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string string_field(const ordered_json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw Error(std::string("pencil JSON: field '") + key + "' must be a string");
  return v.get<std::string>();
}

Integer parse_integer(const std::string& s) {
  Integer out;
  if (s.empty() || out.set_str(s, 10) != 0) throw Error("pencil JSON: bad integer '" + s + "'");
  return out;
}

}  // namespace

ordered_json pencil_to_json(const Pencil& p) {
  ordered_json j;
  j["schema_version"] = kPencilSchemaVersion;
  j["n"] = p.n;
  j["k"] = p.k;
  j["m"] = p.m;
  ordered_json prov;
  prov["graph_n"] = p.provenance.n;
  prov["graph_k"] = p.provenance.k;
  prov["deleted_vertex"] = p.provenance.deleted_vertex;
  prov["ordering"] = p.provenance.ordering;
  prov["constant"] = {{"numerator", p.provenance.constant.get_num().get_str()},
                      {"denominator", p.provenance.constant.get_den().get_str()}};
  if (p.provenance.derivative) {
    prov["derivative"] = {{"forms", p.provenance.derivative->forms},
                          {"kderiv", p.provenance.derivative->kderiv},
                          {"scale", p.provenance.derivative->scale.get_str()}};
  }
  j["provenance"] = prov;
  ordered_json matrices = ordered_json::array();
  for (std::size_t v = 0; v < p.matrices.size(); ++v) {
    ordered_json entries = ordered_json::array();
    for (const auto& [ij, value] : p.matrices[v].upper)
      entries.push_back(ordered_json::array({ij.first + 1, ij.second + 1, to_int64(value)}));
    matrices.push_back({{"var_index", v + 1}, {"entries", entries}});
  }
  j["matrices"] = matrices;
  return j;
}

Pencil pencil_from_json(const ordered_json& j) {
  if (int_field(j, "schema_version") != kPencilSchemaVersion)
    throw Error("pencil JSON: unsupported schema_version " + field(j, "schema_version").dump());
  Pencil p;
  p.n = int_field(j, "n");
  p.k = int_field(j, "k");
  p.m = int_field(j, "m");
  if (p.n < 1 || p.m < 1) throw Error("pencil JSON: n and m must be positive");

  const auto& prov = field(j, "provenance");
  p.provenance.n = int_field(prov, "graph_n");
  p.provenance.k = int_field(prov, "graph_k");
  p.provenance.deleted_vertex = string_field(prov, "deleted_vertex");
  for (const auto& label : field(prov, "ordering")) {
    if (!label.is_string()) throw Error("pencil JSON: ordering entries must be strings");
    p.provenance.ordering.push_back(label.get<std::string>());
  }
  const auto& c = field(prov, "constant");
  p.provenance.constant = Rational(parse_integer(string_field(c, "numerator")), parse_integer(string_field(c, "denominator")));
  if (p.provenance.constant.get_den() == 0) throw Error("pencil JSON: zero denominator");
  p.provenance.constant.canonicalize();
  if (prov.contains("derivative")) {
    const auto& d = prov.at("derivative");
    p.provenance.derivative =
        DerivativeProvenance{int_field(d, "forms"), int_field(d, "kderiv"), parse_integer(string_field(d, "scale"))};
  }

  const auto& matrices = field(j, "matrices");
  if (!matrices.is_array() || static_cast<int>(matrices.size()) != p.n)
    throw Error("pencil JSON: expected " + std::to_string(p.n) + " matrices");
  p.matrices.assign(static_cast<std::size_t>(p.n), IntegerSymmetricMatrix{p.m, {}});
  std::vector<bool> seen(static_cast<std::size_t>(p.n), false);
  for (const auto& mat : matrices) {
    const int v = int_field(mat, "var_index");
    if (v < 1 || v > p.n || seen[static_cast<std::size_t>(v - 1)]) throw Error("pencil JSON: bad var_index");
    seen[static_cast<std::size_t>(v - 1)] = true;
    auto& target = p.matrices[static_cast<std::size_t>(v - 1)];
    for (const auto& e : field(mat, "entries")) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number_integer())
        throw Error("pencil JSON: entries must be [row, col, integer]");
      const int r = e[0].get<int>();
      const int col = e[1].get<int>();
      if (r < 1 || col < r || col > p.m) throw Error("pencil JSON: entry index out of range or below the diagonal");
      const Integer value(static_cast<long>(e[2].get<std::int64_t>()));
      if (value == 0) continue;
      if (target.upper.contains({r - 1, col - 1})) throw Error("pencil JSON: duplicate entry");
      target.add(r - 1, col - 1, value);
    }
  }
  return p;
}

std::string write_pencil_json(const Pencil& p) { return pencil_to_json(p).dump(2) + "\n"; }

Pencil read_pencil_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(std::string("pencil JSON: ") + e.what());
  }
  return pencil_from_json(j);
}

std::string to_decimal_string(const Rational& value) {
  Integer den = value.get_den();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) throw Error("value " + to_string(value) + " has no finite decimal expansion");
  const int digits = std::max(twos, fives);
  if (digits == 0) return value.get_num().get_str();
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Integer scaled = value.get_num() * (scale / value.get_den());
  const Integer mag = abs(scaled);
  std::string s = mag.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (scaled < 0 ? "-" : "") + s;
}

std::string write_pencil_sdpa(const Pencil& p, const RationalVector& objective) {
  RationalVector c = objective.empty() ? ones(p.n) : objective;
  if (static_cast<int>(c.size()) != p.n)
    throw Error("objective has " + std::to_string(c.size()) + " entries, pencil has " + std::to_string(p.n) +
                " variables");
  std::ostringstream os;
  os << "* esp-spectra pencil n=" << p.n << " k=" << p.k << " m=" << p.m << "\n";
  os << "* constraint: sum_j x_j F_j is positive semidefinite (F0 = 0)\n";
  if (p.provenance.derivative)
    os << "* derivative cone: forms=" << p.provenance.derivative->forms
       << " kderiv=" << p.provenance.derivative->kderiv << " scale=" << p.provenance.derivative->scale.get_str() << "\n";
  os << p.n << "\n1\n" << p.m << "\n";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << to_decimal_string(c[i]);
  os << "\n";
  for (std::size_t v = 0; v < p.matrices.size(); ++v)
    for (const auto& [ij, value] : p.matrices[v].upper)
      os << v + 1 << " 1 " << ij.first + 1 << " " << ij.second + 1 << " " << value.get_str() << "\n";
  return os.str();
}

LinearFormsSystem parse_forms(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.size() < 2) throw Error("forms file: expected header \"d n\"");
  auto to_dim = [](const std::string& s, const char* name) {
    const Rational v = parse_rational(s);
    if (!is_integer(v) || v < 1 || v > 64) throw Error(std::string("forms file: bad ") + name + " '" + s + "'");
    return static_cast<int>(v.get_num().get_si());
  };
  const int d = to_dim(tokens[0], "d");
  const int n = to_dim(tokens[1], "n");
  const std::size_t expected = 2 + static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(n);
  if (tokens.size() != expected)
    throw Error("forms file: expected " + std::to_string(expected - 2) + " rationals after the header, got " +
                std::to_string(tokens.size() - 2));
  std::size_t pos = 2;
  std::vector<RationalVector> rows(static_cast<std::size_t>(d));
  for (auto& row : rows)
    for (int i = 0; i < n; ++i) row.push_back(parse_rational(tokens[pos++]));
  RationalVector base;
  for (int i = 0; i < n; ++i) base.push_back(parse_rational(tokens[pos++]));
  return LinearFormsSystem(std::move(rows), std::move(base));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw Error("cannot write " + path);
}

}  // namespace esp
