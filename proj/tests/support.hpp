#pragma once

// Test-only helpers: a tiny infix polynomial reader so tests can state maps
// the way they are written by hand, plus a seeded RNG.

#include <cctype>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynsml/error.hpp"
#include "dynsml/exactalg/automorphism.hpp"

namespace testsupport {

using namespace dynsml::exactalg;

class PolyReader {
 public:
  PolyReader(FieldPtr field, std::vector<std::string> vars) : field_(std::move(field)), vars_(std::move(vars)) {}

  MultiPoly read(const std::string& text) {
    text_ = text;
    pos_ = 0;
    MultiPoly out = expr();
    skip();
    if (pos_ != text_.size()) throw std::runtime_error("trailing input in '" + text + "'");
    return out;
  }

  PolyMap map(const std::vector<std::string>& comps) {
    std::vector<MultiPoly> out;
    for (const auto& c : comps) out.push_back(read(c));
    return PolyMap(std::move(out));
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  MultiPoly one() const { return MultiPoly::constant(field_, vars_.size(), AlgNum(field_, Rational(1))); }

  MultiPoly expr() {
    MultiPoly acc(field_, vars_.size());
    bool negate = false;
    if (peek() == '-' || peek() == '+') negate = text_[pos_++] == '-';
    MultiPoly t = term();
    acc = negate ? -t : t;
    while (peek() == '+' || peek() == '-') {
      const bool minus = text_[pos_++] == '-';
      MultiPoly next = term();
      if (minus)
        acc -= next;
      else
        acc += next;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (peek() == '*' || peek() == '(' || std::isalpha(static_cast<unsigned char>(peek()))) {
      if (peek() == '*') ++pos_;
      acc *= factor();
    }
    return acc;
  }

  unsigned exponent() {
    if (peek() != '^') return 1;
    ++pos_;
    skip();
    unsigned e = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) e = e * 10 + (text_[pos_++] - '0');
    return e;
  }

  MultiPoly factor() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (peek() != ')') throw std::runtime_error("missing ) in '" + text_ + "'");
      ++pos_;
      return inner.pow(exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
        num.push_back(text_[pos_++]);
      return one().scaled(AlgNum(field_, parse_rational(num)));
    }
    std::string name;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) name.push_back(text_[pos_++]);
    if (name == "w") return one().scaled(AlgNum::theta(field_)).pow(exponent());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return MultiPoly::variable(field_, vars_.size(), i).pow(exponent());
    throw std::runtime_error("unknown symbol '" + name + "' in '" + text_ + "'");
  }

  FieldPtr field_;
  std::vector<std::string> vars_;
  std::string text_;
  std::size_t pos_ = 0;
};

inline std::vector<AlgNum> point(const FieldPtr& f, const std::vector<long>& xs) {
  std::vector<AlgNum> out;
  for (long x : xs) out.emplace_back(f, Rational(x));
  return out;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

template <class F>
dynsml::ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const dynsml::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected dynsml::Error, none thrown");
}

}  // namespace testsupport

namespace testsupport {

// Random triangular automorphism x_i -> eps_i x_i + f_i(x_1..x_{i-1}) + c_i with
// integer coefficients of height <= h, and its inverse by back-substitution.
struct RandomAutomorphism {
  PolyMap forward;
  PolyMap inverse;
};

inline RandomAutomorphism random_triangular(const FieldPtr& f, std::size_t n, std::mt19937_64& g, int h = 5,
                                            unsigned max_deg = 2) {
  std::uniform_int_distribution<int> coeff(-h, h);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<MultiPoly> fwd, inv;
  std::vector<MultiPoly> partial;  // inverse components found so far, padded with variables
  for (std::size_t i = 0; i < n; ++i) partial.push_back(MultiPoly::variable(f, n, i));
  for (std::size_t i = 0; i < n; ++i) {
    const long eps = coin(g) ? 1 : -1;
    MultiPoly lower(f, n);
    if (i > 0) {
      const int nterms = std::uniform_int_distribution<int>(0, 3)(g);
      for (int t = 0; t < nterms; ++t) {
        Exponents e(n, 0);
        unsigned budget = std::uniform_int_distribution<unsigned>(1, max_deg)(g);
        for (unsigned b = 0; b < budget; ++b) e[std::uniform_int_distribution<std::size_t>(0, i - 1)(g)] += 1;
        lower.add_term(e, AlgNum(f, Rational(coeff(g))));
      }
    }
    lower.add_term(Exponents(n, 0), AlgNum(f, Rational(coeff(g))));
    MultiPoly xi = MultiPoly::variable(f, n, i);
    fwd.push_back(xi.scaled(AlgNum(f, Rational(eps))) + lower);
    MultiPoly back = substitute(lower, PolyMap(partial));
    inv.push_back((xi - back).scaled(AlgNum(f, Rational(eps))));
    partial[i] = inv.back();
  }
  return {PolyMap(std::move(fwd)), PolyMap(std::move(inv))};
}

inline std::vector<AlgNum> random_point(const FieldPtr& f, std::size_t n, std::mt19937_64& g, int h = 20) {
  std::uniform_int_distribution<int> d(-h, h);
  std::vector<AlgNum> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> coords;
    for (int c = 0; c < f->degree(); ++c) coords.emplace_back(d(g));
    out.emplace_back(f, coords);
  }
  return out;
}

}  // namespace testsupport

#include "dynsml/decide/instance.hpp"

namespace testsupport {

// Instance over f in variables `vars`, components and generators as infix text.
inline dynsml::ProblemInstance make_instance(const FieldPtr& f, const std::vector<std::string>& vars,
                                             const std::vector<std::string>& sigma,
                                             const std::vector<std::string>& sigma_inv,
                                             const std::vector<std::string>& q,
                                             const std::vector<std::string>& variety) {
  PolyReader r(f, vars);
  std::vector<AlgNum> pt;
  for (const auto& s : q) pt.push_back(r.read(s).constant_term());
  std::vector<MultiPoly> gens;
  for (const auto& s : variety) gens.push_back(r.read(s));
  return dynsml::ProblemInstance{f, std::nullopt, r.map(sigma), r.map(sigma_inv), pt, gens, {}};
}

}  // namespace testsupport

namespace testsupport {

// Integer polynomial, low degree first.
using IntPoly = std::vector<dynsml::exactalg::Integer>;

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, dynsml::exactalg::Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline dynsml::exactalg::Integer poly_eval(const IntPoly& a, const dynsml::exactalg::Integer& z) {
  dynsml::exactalg::Integer acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
  return acc;
}

}  // namespace testsupport
