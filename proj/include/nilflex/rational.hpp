#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nilflex {

// Arbitrary precision rational, always canonical (lowest terms, positive
// denominator). Every arithmetic operator of mpq_class canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-7", "5/4", "-2/6" (reduced on read). Throws Error(Parse).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace nilflex
