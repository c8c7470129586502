#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace caplat {

// Exact rational. GMP keeps results of arithmetic canonical (reduced,
// positive denominator); values built from strings go through
// parse_rational, which canonicalizes.
using Rational = mpq_class;

// Accepts "p/q" or an integer literal, optional leading '-'.
// Throws std::invalid_argument on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// p/q in lowest terms; mpq_class(p, q) alone does not reduce.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace caplat
