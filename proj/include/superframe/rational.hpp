#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace superframe {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

/// Parses "a" or "a/b" (optional sign on a) into a canonical rational.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// "a" when the denominator is 1, otherwise "a/b" in lowest terms.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

/// Nearest double (mpq_get_d truncates, this rounds).
double to_double(const Rational& q);

/// e^{2 pi i phase}. Exact for multiples of 1/4; phase is reduced mod 1 first.
Complex unit_phase(const Rational& phase);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace superframe
