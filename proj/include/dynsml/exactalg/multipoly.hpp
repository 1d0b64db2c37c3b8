#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dynsml/exactalg/number_field.hpp"

namespace dynsml::exactalg {

using Exponents = std::vector<std::uint32_t>;

// Sparse polynomial over a number field; zero coefficients are never stored.
class MultiPoly {
 public:
  MultiPoly(FieldPtr field, std::size_t nvars);

  static MultiPoly constant(FieldPtr field, std::size_t nvars, const AlgNum& value);
  static MultiPoly variable(FieldPtr field, std::size_t nvars, std::size_t index);

  const FieldPtr& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, AlgNum>& terms() const { return terms_; }

  // Adds coeff * x^exps to the polynomial (accumulating into an existing term).
  void add_term(const Exponents& exps, const AlgNum& coeff);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  AlgNum constant_term() const;
  unsigned total_degree() const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  MultiPoly scaled(const AlgNum& c) const;
  MultiPoly pow(unsigned e) const;

  MultiPoly derivative(std::size_t var) const;
  AlgNum evaluate(std::span<const AlgNum> point) const;

  bool operator==(const MultiPoly& other) const;

  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& other) const;

  FieldPtr field_;
  std::size_t nvars_;
  std::map<Exponents, AlgNum> terms_;
};

// A polynomial self-map of affine n-space: n components in n variables.
class PolyMap {
 public:
  explicit PolyMap(std::vector<MultiPoly> components);

  static PolyMap identity(FieldPtr field, std::size_t n);

  std::size_t nvars() const { return components_.size(); }
  const FieldPtr& field() const { return components_.front().field(); }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }

  bool operator==(const PolyMap& other) const { return components_ == other.components_; }

 private:
  std::vector<MultiPoly> components_;
};

// outer(inner_1(x), ..., inner_n(x)).
MultiPoly substitute(const MultiPoly& outer, const PolyMap& inner);

// result(x) = outer(inner(x)). Throws ArityMismatch.
PolyMap poly_compose(const PolyMap& outer, const PolyMap& inner);

// sigma composed with itself e times (e = 0 gives the identity).
PolyMap poly_power(const PolyMap& sigma, unsigned e);

std::vector<AlgNum> evaluate_map(const PolyMap& map, std::span<const AlgNum> point);

}  // namespace dynsml::exactalg
