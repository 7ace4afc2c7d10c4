#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace plover {

// Exact rational arithmetic. mpq_class keeps results in canonical form
// (gcd(|num|, den) = 1, den > 0) as long as its inputs are canonical; the
// factories below are the only places raw fractions enter the system.
using Rational = mpq_class;

struct RationalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational make_rational(long num, long den = 1);

// Accepts "3", "19/20", "0.95", ".95". Decimals become exact fractions.
Rational parse_rational(const std::string& text);

// "19/20", or just "1" when the denominator is one.
std::string to_string(const Rational& q);

// Decimal approximation, e.g. "0.95"; annotation only, never authoritative.
std::string to_decimal_string(const Rational& q, int digits = 6);

inline bool in_unit_interval(const Rational& q) { return q >= 0 && q <= 1; }

}  // namespace plover
