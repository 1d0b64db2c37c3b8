#include "dynsml/exactalg/multipoly.hpp"

#include <sstream>

#include "dynsml/error.hpp"

namespace dynsml::exactalg {

MultiPoly::MultiPoly(FieldPtr field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

MultiPoly MultiPoly::constant(FieldPtr field, std::size_t nvars, const AlgNum& value) {
  MultiPoly out(std::move(field), nvars);
  out.add_term(Exponents(nvars, 0), value);
  return out;
}

MultiPoly MultiPoly::variable(FieldPtr field, std::size_t nvars, std::size_t index) {
  if (index >= nvars) fail(ErrorCode::ArityMismatch, "variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  MultiPoly out(field, nvars);
  out.add_term(e, AlgNum(field, Rational(1)));
  return out;
}

void MultiPoly::add_term(const Exponents& exps, const AlgNum& coeff) {
  if (exps.size() != nvars_) fail(ErrorCode::ArityMismatch, "exponent vector length differs from nvars");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.begin()->first)
    if (e != 0) return false;
  return true;
}

AlgNum MultiPoly::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? AlgNum(field_) : it->second;
}

unsigned MultiPoly::total_degree() const {
  unsigned best = 0;
  for (const auto& [exps, c] : terms_) {
    unsigned s = 0;
    for (auto e : exps) s += e;
    best = std::max(best, s);
  }
  return best;
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (nvars_ != other.nvars_) fail(ErrorCode::ArityMismatch, "polynomials in different numbers of variables");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly out(a.field_, a.nvars_);
  Exponents sum(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
      out.add_term(sum, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(field_, nvars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

MultiPoly MultiPoly::scaled(const AlgNum& c) const {
  MultiPoly out(field_, nvars_);
  if (c.is_zero()) return out;
  for (const auto& [e, coeff] : terms_) out.add_term(e, coeff * c);
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(field_, nvars_, AlgNum(field_, Rational(1)));
  MultiPoly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= nvars_) fail(ErrorCode::ArityMismatch, "derivative variable out of range");
  MultiPoly out(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * AlgNum(field_, Rational(e[var])));
  }
  return out;
}

AlgNum MultiPoly::evaluate(std::span<const AlgNum> point) const {
  if (point.size() != nvars_) fail(ErrorCode::ArityMismatch, "point length differs from nvars");
  std::vector<std::vector<AlgNum>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) powers[i].emplace_back(field_, Rational(1));
  AlgNum acc(field_);
  for (const auto& [e, c] : terms_) {
    AlgNum term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
      term *= pw[e[i]];
    }
    acc += term;
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out << "*x" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

PolyMap::PolyMap(std::vector<MultiPoly> components) : components_(std::move(components)) {
  if (components_.empty()) fail(ErrorCode::ArityMismatch, "polynomial map needs at least one component");
  for (const auto& c : components_)
    if (c.nvars() != components_.size())
      fail(ErrorCode::ArityMismatch, "every component must be a polynomial in n = #components variables");
}

PolyMap PolyMap::identity(FieldPtr field, std::size_t n) {
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(MultiPoly::variable(field, n, i));
  return PolyMap(std::move(comps));
}

MultiPoly substitute(const MultiPoly& outer, const PolyMap& inner) {
  if (outer.nvars() != inner.nvars())
    fail(ErrorCode::ArityMismatch, "substitution arity mismatch");
  const std::size_t n = inner.nvars();
  const auto& field = outer.field();
  std::vector<std::vector<MultiPoly>> powers(n);
  for (std::size_t i = 0; i < n; ++i)
    powers[i].push_back(MultiPoly::constant(field, n, AlgNum(field, Rational(1))));
  MultiPoly acc(field, n);
  for (const auto& [e, c] : outer.terms()) {
    MultiPoly term = MultiPoly::constant(field, n, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * inner[i]);
      term *= pw[e[i]];
    }
    acc += term;
  }
  return acc;
}

PolyMap poly_compose(const PolyMap& outer, const PolyMap& inner) {
  if (outer.nvars() != inner.nvars()) fail(ErrorCode::ArityMismatch, "composition arity mismatch");
  std::vector<MultiPoly> comps;
  comps.reserve(outer.nvars());
  for (const auto& c : outer.components()) comps.push_back(substitute(c, inner));
  return PolyMap(std::move(comps));
}

PolyMap poly_power(const PolyMap& sigma, unsigned e) {
  PolyMap out = PolyMap::identity(sigma.field(), sigma.nvars());
  for (unsigned i = 0; i < e; ++i) out = poly_compose(sigma, out);
  return out;
}

std::vector<AlgNum> evaluate_map(const PolyMap& map, std::span<const AlgNum> point) {
  if (point.size() != map.nvars()) fail(ErrorCode::ArityMismatch, "point length differs from nvars");
  std::vector<AlgNum> out;
  out.reserve(map.nvars());
  for (const auto& c : map.components()) out.push_back(c.evaluate(point));
  return out;
}

}  // namespace dynsml::exactalg
