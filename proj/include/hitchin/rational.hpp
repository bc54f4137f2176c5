#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hitchin {

// Arbitrary-precision coefficients. mpq_class keeps values canonical
// (reduced, positive denominator, zero is 0/1) after every operation.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }

inline Rational inverse(const Rational& x) {
  if (is_zero(x)) throw std::domain_error("division by zero rational");
  return Rational(1) / x;
}

inline Rational exact_quotient(const Rational& a, const Rational& b) { return a * inverse(b); }

inline Rational pow(const Rational& base, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return out;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(const Integer& x) { return x.get_str(); }

// Accepts "a" or "a/b" with an optional sign; the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational out;
  if (s.empty() || out.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational: '" + s + "'");
  if (out.get_den() == 0)
    throw std::invalid_argument("zero denominator: '" + s + "'");
  out.canonicalize();
  return out;
}

}  // namespace hitchin
