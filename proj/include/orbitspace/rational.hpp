#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace orbitspace {

// GMP keeps mpq_class canonical (reduced, positive denominator) after every
// arithmetic operation, which is the invariant the whole pipeline relies on.
using Integer = mpz_class;
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;

// Size of |numerator| + size of denominator, in bits. Used for pivot choice.
inline std::size_t bit_size(const Integer& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::size_t bit_size(const Rational& v) {
  return bit_size(v.get_num()) + bit_size(v.get_den());
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

// "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& v) { return v.get_str(); }

// Parses "a" or "a/b" with an optional sign; throws ParseError otherwise.
Rational parse_rational(const std::string& text);

// v^n for a non-negative exponent.
Rational power(const Rational& v, unsigned long n);
Integer power(const Integer& v, unsigned long n);

Integer lcm_of_denominators(std::span<const Rational> values);

// gcd of the numerators of the values (0 for an all-zero span).
Integer gcd_of_numerators(std::span<const Rational> values);

}  // namespace orbitspace
