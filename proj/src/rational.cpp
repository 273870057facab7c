#include "superframe/rational.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "superframe/errors.hpp"

namespace superframe {
namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Integer parse_integer(std::string_view text) {
  const std::string s = strip(text);
  if (!valid_integer_text(s)) throw Error(ErrorKind::Parse, "bad integer '" + std::string(text) + "'");
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  const std::string s = strip(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+')
    throw Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "'");
  Integer d(den, 10);
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(num, 10), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational frac(const Rational& q) {
  Rational r = q - Rational(floor(q));
  r.canonicalize();
  return r;
}

double to_double(const Rational& q) {
  const double t = q.get_d();  // truncated toward zero
  if (!std::isfinite(t)) return t;
  const double away = std::nextafter(t, q > 0 ? HUGE_VAL : -HUGE_VAL);
  const Rational err_t = abs(q - Rational(t));
  const Rational err_a = abs(q - Rational(away));
  return err_a < err_t ? away : t;
}

Complex unit_phase(const Rational& phase) {
  const Rational r = frac(phase);
  const Rational four = r * 4;
  if (four.get_den() == 1) {
    switch (four.get_num().get_si()) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  // Evaluate on the symmetric range (-1/2, 1/2] for better accuracy near 1.
  const double t = to_double(r > Rational(1, 2) ? Rational(r - 1) : r);
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace superframe
