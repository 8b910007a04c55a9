#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace esp {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational function was evaluated where its denominator vanishes.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A brute-force routine refused an input beyond its size budget.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Parses "7", "-3/4", "2.125" or "-.5" into an exact rational.
Rational parse_rational(std::string_view text);

/// Parses a comma-separated list of rationals.
RationalVector parse_rational_list(std::string_view text);

/// Canonical "p" or "p/q" rendering.
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

Integer factorial(unsigned n);

Integer binomial(unsigned n, unsigned k);

RationalVector ones(int n);

RationalVector unit_vector(int n, int index);  // index is 1-based

}  // namespace esp
