#pragma once

#include <optional>
#include <vector>

#include "dynsml/decide/decide.hpp"
#include "dynsml/exactalg/rational.hpp"

namespace dynsml::sml {

using exactalg::Rational;
using RatMatrix = std::vector<std::vector<Rational>>;

// f(n) = a_1 f(n-1) + ... + a_r f(n-r) for n >= r, with f(0..r-1) given.
struct LinearRecurrence {
  std::vector<Rational> coeffs;   // a_1..a_r
  std::vector<Rational> initial;  // f(0)..f(r-1)
  std::size_t order() const { return coeffs.size(); }
  bool operator==(const LinearRecurrence&) const = default;
};

// c_i = v^T M^i w + P_i (P_i = 0 past the end of P).
struct LinearRep {
  RatMatrix M;
  std::vector<Rational> v;
  std::vector<Rational> w;
  std::vector<Rational> P;
  bool operator==(const LinearRep&) const = default;
};

// Throws InvalidArgument when the initial values do not match the order.
void check_recurrence(const LinearRecurrence& rec);

// Companion matrix on the state (f(n), ..., f(n+r-1)). Throws
// DegenerateRecurrence when a_r = 0.
LinearRep recurrence_to_linear_rep(const LinearRecurrence& rec);
std::vector<Rational> linear_rep_to_coeffs(const LinearRep& rep, std::size_t count);
std::vector<Rational> unroll(const LinearRecurrence& rec, std::size_t count);

// Drops trailing zero coefficients. The result describes g(k) = f(k + shift)
// with g(0..order-1) = f(shift..r-1); the recurrence holds for all k >= order.
struct Stripped {
  LinearRecurrence rec;
  std::size_t shift = 0;
};
Stripped strip_trailing_zeros(const LinearRecurrence& rec);

// The companion automorphism, its inverse, the initial state and the
// hyperplane x_0 = 0. Throws DegenerateRecurrence when a_r = 0.
ProblemInstance companion_instance(const LinearRecurrence& rec, const SolverConfig& config = {});

// Zeros of f over m >= 0: every m >= start in one of the full classes, plus
// the finite set sporadic.
struct RecurrenceZeroSet {
  unsigned long modulus = 1;
  std::vector<unsigned long> full_classes;
  long start = 0;
  std::vector<long> sporadic;
  std::size_t shift = 0;                              // trailing zeros stripped
  std::optional<decide::ProgressionSet> certificate;  // doubly infinite answer for the stripped recurrence
  bool operator==(const RecurrenceZeroSet&) const = default;

  bool contains(long m) const;
  bool complete() const;
};

RecurrenceZeroSet zero_set_of_recurrence(const LinearRecurrence& rec, const SolverConfig& config = {});

}  // namespace dynsml::sml
