#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polymono/linalg.hpp"
#include "polymono/polynomial.hpp"

namespace polymono {

/// Half-degree of the monomial vector (1, x, ..., x^sigma) used to write a
/// degree-d polynomial as a quadratic form.
inline std::size_t sigma_for_degree(std::size_t d) { return d % 2 == 0 ? d / 2 : (d + 1) / 2; }

/// Coefficients c_k = sum_{i+j=k} M[i][j] of the polynomial m(x)^T M m(x).
inline Polynomial quadratic_form_poly(const SymMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<double> c(2 * n - 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i + j] += m(i, j);
  return Polynomial(std::move(c));
}

/// Canonical Gram matrix: even powers on the diagonal, odd powers split
/// evenly over the adjacent symmetric pair.
inline SymMatrix base_gram(const Polynomial& p) {
  const std::size_t sigma = sigma_for_degree(p.degree());
  SymMatrix g(sigma + 1);
  for (std::size_t k = 0; k <= p.degree(); ++k) {
    if (k % 2 == 0) {
      g.set(k / 2, k / 2, p[k]);
    } else {
      g.set((k - 1) / 2, (k + 1) / 2, p[k] / 2.0);
    }
  }
  return g;
}

/// Number of free parameters in the Gram family for a given sigma.
inline std::size_t null_dimension(std::size_t sigma) {
  return (sigma + 1) * (sigma + 2) / 2 - (2 * sigma + 1);
}

/// Basis of the symmetric matrices whose quadratic form in (1, x, ..., x^sigma)
/// vanishes identically, i.e. every anti-diagonal sums to zero.
///
/// For each anti-diagonal, the independent positions (i, j) with i <= j are
/// listed by increasing i and one matrix is emitted per consecutive pair.
/// Between two off-diagonal positions the later pair gets +1 and the earlier
/// pair -1. When the later position is the diagonal, the earlier off-diagonal
/// pair gets +1 and the diagonal -2, so sigma = 2 yields
/// [[0,0,1],[0,-2,0],[1,0,0]].
inline std::vector<SymMatrix> null_basis(std::size_t sigma) {
  const std::size_t n = sigma + 1;
  std::vector<SymMatrix> basis;
  basis.reserve(null_dimension(sigma));
  for (std::size_t k = 0; k <= 2 * sigma; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> pos;
    for (std::size_t i = 0; i < n; ++i)
      if (k >= i && k - i < n && i <= k - i) pos.emplace_back(i, k - i);
    for (std::size_t t = 1; t < pos.size(); ++t) {
      const auto [ei, ej] = pos[t - 1];
      const auto [li, lj] = pos[t];
      SymMatrix l(n);
      if (li == lj) {
        l.set(ei, ej, 1.0);
        l.set(li, lj, -2.0);
      } else {
        l.set(li, lj, 1.0);
        l.set(ei, ej, -1.0);
      }
      basis.push_back(std::move(l));
    }
  }
  return basis;
}

/// Full-matrix sums of each anti-diagonal k = 0..2(n-1).
inline std::vector<double> anti_diagonal_sums(const SymMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<double> s(2 * n - 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i + j] += m(i, j);
  return s;
}

/// Every Gram matrix of a polynomial: base + sum_i alpha_i * basis[i].
struct GramParam {
  std::size_t sigma = 0;
  SymMatrix base;
  std::vector<SymMatrix> basis;
  Polynomial source;

  std::size_t dim() const { return sigma + 1; }
  std::size_t num_params() const { return basis.size(); }
};

inline GramParam make_gram_param(const Polynomial& p) {
  GramParam gp;
  gp.sigma = sigma_for_degree(p.degree());
  gp.base = base_gram(p);
  gp.basis = null_basis(gp.sigma);
  gp.source = p;
  return gp;
}

inline SymMatrix assemble(const GramParam& gp, std::span<const double> alpha) {
  if (alpha.size() != gp.basis.size())
    throw std::invalid_argument("assemble: expected " + std::to_string(gp.basis.size()) +
                                " parameters, got " + std::to_string(alpha.size()));
  SymMatrix m = gp.base;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] != 0.0) m += alpha[i] * gp.basis[i];
  return m;
}

/// Orthogonal projection (Frobenius inner product) of a symmetric matrix onto
/// the null family: subtracts each anti-diagonal's mean entry.
inline SymMatrix project_to_null_space(const SymMatrix& m) {
  const std::size_t n = m.dim();
  const std::vector<double> sums = anti_diagonal_sums(m);
  SymMatrix out = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t k = i + j;
      const std::size_t count = k < n ? k + 1 : 2 * n - 1 - k;
      out.add(i, j, -sums[k] / static_cast<double>(count));
    }
  return out;
}

/// Least-squares coordinates of `m` in the null basis.
inline std::vector<double> null_coordinates(const GramParam& gp, const SymMatrix& m) {
  const std::size_t k = gp.basis.size();
  if (k == 0) return {};
  DenseMatrix gram(k, k);
  std::vector<double> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = frobenius_inner(gp.basis[i], m);
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = frobenius_inner(gp.basis[i], gp.basis[j]);
  }
  return solve_spd(gram, rhs);
}

}  // namespace polymono
