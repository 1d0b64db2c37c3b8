#include "dynsml/padic/poly.hpp"

#include <algorithm>

namespace dynsml::padic {

unsigned PadicPoly::max_exponent() const {
  unsigned m = 0;
  for (const auto& [e, c] : terms_)
    for (auto x : e) m = std::max(m, x);
  return m;
}

Integer PadicPoly::evaluate(std::span<const Integer> point, const Integer& modulus) const {
  // powers[i][k] = point[i]^k mod modulus, filled lazily up to the needed degree
  std::vector<std::vector<Integer>> powers(nvars_);
  Integer acc = 0, term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Integer(1));
      while (pw.size() <= e[i]) {
        Integer next = pw.back() * point[i];
        mpz_mod(next.get_mpz_t(), next.get_mpz_t(), modulus.get_mpz_t());
        pw.push_back(std::move(next));
      }
      term *= pw[e[i]];
      mpz_mod(term.get_mpz_t(), term.get_mpz_t(), modulus.get_mpz_t());
    }
    acc += term;
  }
  mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), modulus.get_mpz_t());
  return acc;
}

std::vector<Integer> PadicPolyMap::evaluate(std::span<const Integer> point, const Integer& modulus) const {
  std::vector<Integer> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.evaluate(point, modulus));
  return out;
}

IntMatrix mat_mul_mod(const IntMatrix& a, const IntMatrix& b, const Integer& modulus) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  IntMatrix out(n, std::vector<Integer>(m, Integer(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Integer s = 0;
      for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
      mpz_mod(s.get_mpz_t(), s.get_mpz_t(), modulus.get_mpz_t());
      out[i][j] = s;
    }
  return out;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix out(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

bool is_identity_mod(const IntMatrix& a, const Integer& modulus) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      Integer d = a[i][j] - (i == j ? 1 : 0);
      if (mpz_divisible_p(d.get_mpz_t(), modulus.get_mpz_t()) == 0) return false;
    }
  return true;
}

}  // namespace dynsml::padic
