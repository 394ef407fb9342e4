#include "gkz/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "gkz/errors.hpp"

namespace gkz {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);

  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError(1, 1, "not an exact fraction literal: '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError(1, 1, "zero denominator in '" + std::string(text) + "'");
  Rational r(negative ? Integer(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

bool is_natural(const Rational& r) { return is_integer(r) && sgn(r) >= 0; }

std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r) || !r.get_num().fits_slong_p())
    throw Error(ErrorCode::InvalidArgument, "not a machine integer: " + to_string(r));
  return r.get_num().get_si();
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

double log_abs(const Integer& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const Rational& r) { return log_abs(r.get_num()) - log_abs(r.get_den()); }

Rational falling(const Rational& z, std::int64_t n) {
  Rational out = 1;
  for (std::int64_t j = 0; j < n; ++j) {
    out *= z - j;
    if (out == 0) break;
  }
  return out;
}

Rational rising_from_next(const Rational& z, std::int64_t n) {
  Rational out = 1;
  for (std::int64_t t = 1; t <= n; ++t) {
    out *= z + t;
    if (out == 0) break;
  }
  return out;
}

Integer factorial(std::int64_t n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace gkz
