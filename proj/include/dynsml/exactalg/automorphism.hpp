#pragma once

#include <vector>

#include "dynsml/exactalg/multipoly.hpp"

namespace dynsml::exactalg {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

// Entry (i, l) is d(component i)/d(x_l).
PolyMatrix jacobian(const PolyMap& map);

// Exact determinant by cofactor expansion (memoised over column subsets).
// Throws InvalidArgument for a non-square matrix.
MultiPoly det_polymatrix(const PolyMatrix& m);

// Proof that forward is a polynomial automorphism with the given inverse:
// both compositions are literally the identity and det J(forward) is the
// nonzero constant jac_det.
struct AutomorphismCert {
  PolyMap forward;
  PolyMap inverse;
  AlgNum jac_det;
};

// Throws NotInverse, NonConstantJacobian or ZeroJacobian.
AutomorphismCert validate_automorphism(const PolyMap& forward, const PolyMap& inverse);

}  // namespace dynsml::exactalg
