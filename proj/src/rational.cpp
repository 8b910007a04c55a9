#include "esp/rational.hpp"

#include <cctype>

namespace esp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error("cannot parse rational '" + std::string(whole) + "'");
  Integer v(std::string(s), 10);
  return negative ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw Error("cannot parse rational from empty text");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), s);
    std::string_view den_text = trim(s.substr(slash + 1));
    if (!all_digits(den_text)) throw Error("cannot parse rational '" + std::string(s) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw Error("zero denominator in '" + std::string(s) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view head = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = false;
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
      negative = head.front() == '-';
      head.remove_prefix(1);
    }
    if ((head.empty() && frac.empty()) || (!head.empty() && !all_digits(head)) ||
        (!frac.empty() && !all_digits(frac)))
      throw Error("cannot parse rational '" + std::string(s) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string digits = std::string(head) + std::string(frac);
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    if (negative) num = -num;
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }

  return Rational(parse_integer(s, s));
}

RationalVector parse_rational_list(std::string_view text) {
  RationalVector out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

RationalVector ones(int n) { return RationalVector(static_cast<std::size_t>(n), Rational(1)); }

RationalVector unit_vector(int n, int index) {
  RationalVector v(static_cast<std::size_t>(n), Rational(0));
  v.at(static_cast<std::size_t>(index - 1)) = 1;
  return v;
}

}  // namespace esp
