#include "dynsml/exactalg/number_field.hpp"

#include <sstream>

#include "dynsml/error.hpp"

namespace dynsml::exactalg {

NumberField::NumberField(upoly::ZPoly minpoly) : minpoly_(std::move(minpoly)) {
  if (minpoly_.size() < 2)
    fail(ErrorCode::InvalidArgument, "minimal polynomial must have degree >= 1");
  if (minpoly_.back() != 1) fail(ErrorCode::InvalidArgument, "minimal polynomial must be monic");
  switch (upoly::irreducibility_screen(minpoly_)) {
    case upoly::Irreducibility::Irreducible:
      break;
    case upoly::Irreducibility::Reducible:
      fail(ErrorCode::ReducibleMinpoly, "minimal polynomial is reducible over Q");
    case upoly::Irreducibility::Inconclusive:
      fail(ErrorCode::IrreducibilityInconclusive,
           "could not prove the minimal polynomial irreducible (rational-root and modular "
           "factor-degree screens inconclusive); refusing to continue");
  }
  discriminant_ = upoly::discriminant(minpoly_);
  if (discriminant_ == 0) fail(ErrorCode::ReducibleMinpoly, "minimal polynomial has zero discriminant");
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q = std::make_shared<const NumberField>(upoly::ZPoly{Integer(0), Integer(1)});
  return q;
}

FieldPtr make_field(upoly::ZPoly minpoly) {
  if (minpoly.size() == 2 && minpoly[0] == 0 && minpoly[1] == 1) return NumberField::rationals();
  return std::make_shared<const NumberField>(std::move(minpoly));
}

AlgNum::AlgNum(FieldPtr field) : field_(std::move(field)), coords_(field_->degree()) {}

AlgNum::AlgNum(FieldPtr field, const Rational& value) : AlgNum(std::move(field)) {
  coords_[0] = value;
}

AlgNum::AlgNum(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  const auto d = static_cast<std::size_t>(field_->degree());
  if (coords_.size() > d) {
    // Accept longer vectors by reducing modulo the minimal polynomial.
    upoly::QPoly q, r;
    upoly::divmod(coords_, upoly::from_integer(field_->minpoly()), q, r);
    coords_ = std::move(r);
  }
  coords_.resize(d);
}

AlgNum AlgNum::theta(FieldPtr field) {
  std::vector<Rational> c{Rational(0), Rational(1)};
  return AlgNum(std::move(field), std::move(c));
}

bool AlgNum::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool AlgNum::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Integer AlgNum::common_denominator() const {
  Integer out = 1;
  for (const auto& c : coords_) out = lcm(out, c.get_den());
  return out;
}

AlgNum& AlgNum::operator+=(const AlgNum& other) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

AlgNum& AlgNum::operator-=(const AlgNum& other) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

AlgNum& AlgNum::operator*=(const AlgNum& other) {
  const int d = field_->degree();
  if (d == 1) {
    coords_[0] *= other.coords_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * d - 1);
  for (int i = 0; i < d; ++i) {
    if (coords_[i] == 0) continue;
    for (int j = 0; j < d; ++j) prod[i + j] += coords_[i] * other.coords_[j];
  }
  const auto& f = field_->minpoly();
  for (int top = 2 * d - 2; top >= d; --top) {
    if (prod[top] == 0) continue;
    const Rational c = prod[top];
    for (int i = 0; i < d; ++i) prod[top - d + i] -= c * f[i];
    prod[top] = 0;
  }
  prod.resize(d);
  coords_ = std::move(prod);
  return *this;
}

AlgNum AlgNum::operator-() const {
  AlgNum out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

AlgNum AlgNum::pow(unsigned long e) const {
  AlgNum result(field_, Rational(1));
  AlgNum base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

AlgNum AlgNum::inverse() const {
  if (is_zero()) fail(ErrorCode::InvalidArgument, "inverse of zero");
  if (field_->degree() == 1) return AlgNum(field_, 1 / coords_[0]);
  upoly::QPoly a = coords_;
  upoly::trim(a);
  return AlgNum(field_, upoly::inverse_mod(a, upoly::from_integer(field_->minpoly())));
}

bool AlgNum::operator==(const AlgNum& other) const {
  return coords_ == other.coords_ && (field_ == other.field_ || *field_ == *other.field_);
}

std::string AlgNum::to_string() const {
  if (is_rational()) return exactalg::to_string(coords_[0]);
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << coords_[i].get_str() << ")";
    if (i >= 1) out << "*t";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

}  // namespace dynsml::exactalg
