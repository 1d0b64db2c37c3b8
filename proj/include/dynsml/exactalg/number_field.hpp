#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dynsml/exactalg/rational.hpp"
#include "dynsml/exactalg/upoly.hpp"

namespace dynsml::exactalg {

// Q(theta) with theta a root of a monic irreducible integer polynomial.
// Degree 1 stands for Q itself.
class NumberField {
 public:
  // minpoly = (c_0, ..., c_d) with c_d == 1. Throws ReducibleMinpoly or
  // IrreducibilityInconclusive when irreducibility cannot be established.
  explicit NumberField(upoly::ZPoly minpoly);

  static std::shared_ptr<const NumberField> rationals();

  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  bool is_rationals() const { return degree() == 1; }
  const upoly::ZPoly& minpoly() const { return minpoly_; }
  const Integer& discriminant() const { return discriminant_; }

  bool operator==(const NumberField& other) const { return minpoly_ == other.minpoly_; }

 private:
  upoly::ZPoly minpoly_;
  Integer discriminant_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(upoly::ZPoly minpoly);

// Element of Q(theta) in the power basis 1, theta, ..., theta^(d-1).
class AlgNum {
 public:
  explicit AlgNum(FieldPtr field);
  AlgNum(FieldPtr field, const Rational& value);
  AlgNum(FieldPtr field, std::vector<Rational> coords);

  static AlgNum theta(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  // Valid only when is_rational().
  const Rational& rational_part() const { return coords_[0]; }

  // lcm of the coordinate denominators.
  Integer common_denominator() const;

  AlgNum& operator+=(const AlgNum& other);
  AlgNum& operator-=(const AlgNum& other);
  AlgNum& operator*=(const AlgNum& other);
  friend AlgNum operator+(AlgNum a, const AlgNum& b) { return a += b; }
  friend AlgNum operator-(AlgNum a, const AlgNum& b) { return a -= b; }
  friend AlgNum operator*(AlgNum a, const AlgNum& b) { return a *= b; }
  AlgNum operator-() const;

  AlgNum pow(unsigned long e) const;
  // Throws InvalidArgument for zero.
  AlgNum inverse() const;

  bool operator==(const AlgNum& other) const;

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<Rational> coords_;
};

}  // namespace dynsml::exactalg
