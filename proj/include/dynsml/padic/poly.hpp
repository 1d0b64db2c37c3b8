#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynsml/exactalg/multipoly.hpp"
#include "dynsml/exactalg/rational.hpp"

namespace dynsml::padic {

using exactalg::Exponents;
using exactalg::Integer;

// Multivariate polynomial with integer coefficients already reduced mod p^N.
// Evaluation takes its own modulus so the same object serves mod p and mod p^N.
class PadicPoly {
 public:
  PadicPoly() = default;
  explicit PadicPoly(std::size_t nvars) : nvars_(nvars) {}

  void add_term(Exponents e, Integer c) { terms_.emplace_back(std::move(e), std::move(c)); }

  std::size_t nvars() const { return nvars_; }
  const std::vector<std::pair<Exponents, Integer>>& terms() const { return terms_; }
  unsigned max_exponent() const;

  // Value at the point, reduced into [0, modulus).
  Integer evaluate(std::span<const Integer> point, const Integer& modulus) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<std::pair<Exponents, Integer>> terms_;
};

class PadicPolyMap {
 public:
  PadicPolyMap() = default;
  explicit PadicPolyMap(std::vector<PadicPoly> comps) : comps_(std::move(comps)) {}

  std::size_t nvars() const { return comps_.size(); }
  const std::vector<PadicPoly>& components() const { return comps_; }
  const PadicPoly& operator[](std::size_t i) const { return comps_[i]; }

  std::vector<Integer> evaluate(std::span<const Integer> point, const Integer& modulus) const;

 private:
  std::vector<PadicPoly> comps_;
};

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix mat_mul_mod(const IntMatrix& a, const IntMatrix& b, const Integer& modulus);
IntMatrix identity_matrix(std::size_t n);
bool is_identity_mod(const IntMatrix& a, const Integer& modulus);

}  // namespace dynsml::padic
