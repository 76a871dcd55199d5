#pragma once

// Exact rational scalars. Backed by GMP's mpq_class, which keeps every value
// in lowest terms with a positive denominator.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace alginv {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "12", "-3/4", "0.125", "1e-3" (decimal forms are converted exactly).
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "a" when the denominator is 1, otherwise "a/b".
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace alginv
