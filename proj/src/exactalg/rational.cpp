#include "dynsml/exactalg/rational.hpp"

#include <cctype>

#include "dynsml/error.hpp"

namespace dynsml::exactalg {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  s = strip(s);
  std::string digits;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
    digits.push_back(c);
  }
  Integer z(digits, 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (strip(den_text).front() == '-' || strip(den_text).front() == '+'))
    fail(ErrorCode::ParseError, "sign must be on the numerator in '" + std::string(text) + "'");
  const Integer den = parse_integer(den_text, text);
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

std::string to_string(const Integer& z) { return z.get_str(10); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

int valuation(const Integer& z, unsigned long p) {
  if (z == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
  Integer rest = z;
  int v = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    ++v;
  }
  return v;
}

}  // namespace dynsml::exactalg
