#include "orbitspace/rational.hpp"

#include <cctype>

#include "orbitspace/errors.hpp"

namespace orbitspace {

namespace {

bool is_signed_digits(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
  if (!is_signed_digits(num) || !is_signed_digits(den) || den[0] == '-' ||
      den[0] == '+') {
    throw ParseError("malformed rational '" + text + "'");
  }
  Integer n(num[0] == '+' ? num.substr(1) : num, 10);
  Integer d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Integer power(const Integer& v, unsigned long n) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), v.get_mpz_t(), n);
  return out;
}

Rational power(const Rational& v, unsigned long n) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), v.get_num_mpz_t(), n);
  mpz_pow_ui(out.get_den_mpz_t(), v.get_den_mpz_t(), n);
  return out;  // already reduced: powers of coprime integers stay coprime
}

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

Integer gcd_of_numerators(std::span<const Rational> values) {
  Integer g = 0;
  for (const auto& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  return g;
}

}  // namespace orbitspace
