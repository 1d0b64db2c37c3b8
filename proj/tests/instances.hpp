#pragma once

// Named instances shared by the decide, sml and acceptance tests.

#include "support.hpp"

namespace testsupport {

inline FieldPtr rationals() { return dynsml::exactalg::NumberField::rationals(); }

// sigma(a,b,c,d) = (a, b - 3d^2 - 3da^2 - a^4, w c, d + a^2), w of order 2k,
// q = (-1,-1,1,1), X: a + a^2 b + c^2 + d^3 = 0.
inline dynsml::ProblemInstance omega_instance(int k) {
  using dynsml::exactalg::Integer;
  FieldPtr f = k == 2 ? dynsml::exactalg::make_field({Integer(1), Integer(0), Integer(1)})
                      : dynsml::exactalg::make_field({Integer(1), Integer(-1), Integer(1)});
  const std::string winv = k == 2 ? "(-w)" : "(1 - w)";
  auto in = make_instance(f, {"a", "b", "c", "d"}, {"a", "b - 3*d^2 - 3*d*a^2 - a^4", "w*c", "d + a^2"},
                          {"a", "b + 3*d^2 - 3*d*a^2 + a^4", winv + "*c", "d - a^2"}, {"-1", "-1", "1", "1"},
                          {"a + a^2*b + c^2 + d^3"});
  in.congruence = dynsml::Congruence{static_cast<unsigned long>(2 * k), 1};
  return in;
}

inline dynsml::ProblemInstance swap_instance() {
  return make_instance(rationals(), {"x", "y"}, {"y", "x"}, {"y", "x"}, {"0", "1"}, {"x"});
}

inline dynsml::ProblemInstance translation_instance() {
  return make_instance(rationals(), {"x"}, {"x + 1"}, {"x - 1"}, {"0"}, {"x*(x - 2)"});
}

}  // namespace testsupport
