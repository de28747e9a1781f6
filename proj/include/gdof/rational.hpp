#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace gdof {

// All region arithmetic runs on exact rationals. mpq_class keeps values in
// lowest terms with a positive denominator, which is exactly the invariant
// the rest of the library relies on.
using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational rat(long num, long den = 1);

// Accepts "p", "p/q" and finite decimals ("1.25", "-0.5"). Decimals are
// converted exactly, never through floating point.
Rational parse_rational(const std::string& text);

// "p/q", with "/q" omitted when the denominator is 1.
std::string rational_str(const Rational& r);

std::vector<Rational> parse_rational_list(const std::string& csv);

double to_double(const Rational& r);

}  // namespace gdof
