#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace wallcross {

// All coefficients in the engine are exact rationals.
using Rational = mpq_class;

// Parses "p/q", "p" or "-p/q"; the result is canonical. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& value);

Rational factorial(unsigned n);

// (-1)^e as a rational.
inline Rational sign_power(std::int64_t e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

// Largest integer <= value.
std::int64_t floor_to_int(const Rational& value);
// Smallest integer >= value.
std::int64_t ceil_to_int(const Rational& value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

}  // namespace wallcross
