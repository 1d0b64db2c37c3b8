#include "dynsml/exactalg/automorphism.hpp"

#include <bit>
#include <unordered_map>

#include "dynsml/error.hpp"

namespace dynsml::exactalg {

PolyMatrix jacobian(const PolyMap& map) {
  const std::size_t n = map.nvars();
  PolyMatrix out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<MultiPoly> row;
    row.reserve(n);
    for (std::size_t l = 0; l < n; ++l) row.push_back(map[i].derivative(l));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

struct Minors {
  const PolyMatrix& m;
  std::size_t n;
  std::unordered_map<std::uint64_t, MultiPoly> memo;

  // Determinant of the rows n-popcount(mask)..n-1 restricted to the columns in mask.
  MultiPoly minor(std::uint64_t mask) {
    const auto& field = m[0][0].field();
    const std::size_t nvars = m[0][0].nvars();
    if (mask == 0) return MultiPoly::constant(field, nvars, AlgNum(field, Rational(1)));
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    MultiPoly acc(field, nvars);
    int position = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask >> col & 1)) continue;
      if (!m[row][col].is_zero()) {
        MultiPoly term = m[row][col] * minor(mask & ~(std::uint64_t{1} << col));
        if (position % 2 == 0)
          acc += term;
        else
          acc -= term;
      }
      ++position;
    }
    memo.emplace(mask, acc);
    return acc;
  }
};

}  // namespace

MultiPoly det_polymatrix(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "determinant of an empty matrix");
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  if (n > 20) fail(ErrorCode::InvalidArgument, "determinant dimension too large");
  Minors minors{m, n, {}};
  return minors.minor((std::uint64_t{1} << n) - 1);
}

AutomorphismCert validate_automorphism(const PolyMap& forward, const PolyMap& inverse) {
  if (forward.nvars() != inverse.nvars())
    fail(ErrorCode::ArityMismatch, "forward and inverse maps have different dimensions");
  const auto identity = PolyMap::identity(forward.field(), forward.nvars());
  if (!(poly_compose(forward, inverse) == identity))
    fail(ErrorCode::NotInverse, "forward(inverse(x)) is not the identity map");
  if (!(poly_compose(inverse, forward) == identity))
    fail(ErrorCode::NotInverse, "inverse(forward(x)) is not the identity map");
  const MultiPoly det = det_polymatrix(jacobian(forward));
  if (!det.is_constant())
    fail(ErrorCode::NonConstantJacobian, "Jacobian determinant is not constant: " + det.to_string());
  const AlgNum c = det.constant_term();
  if (c.is_zero()) fail(ErrorCode::ZeroJacobian, "Jacobian determinant vanishes");
  return AutomorphismCert{forward, inverse, c};
}

}  // namespace dynsml::exactalg
