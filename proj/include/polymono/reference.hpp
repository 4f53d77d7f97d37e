#pragma once

#include "polymono/decomposition.hpp"
#include "polymono/polynomial.hpp"

// Worked decompositions with published coefficients, kept as regression
// fixtures. The Legendre and quadratic-map sets are printed to four
// significant figures from a first-order conic solver, so they are close to,
// but not exactly, the optimal splits this library computes.
namespace polymono::reference {

/// x^2 + 1
inline Polynomial square_plus_one() { return Polynomial{1.0, 0.0, 1.0}; }

/// Fourth Legendre polynomial (35 x^4 - 30 x^2 + 3) / 8.
inline Polynomial legendre4() { return Polynomial{3.0 / 8.0, 0.0, -15.0 / 4.0, 0.0, 35.0 / 8.0}; }

/// 0.7 x + 0.32 x^2
inline Polynomial quadratic_map() { return Polynomial{0.0, 0.7, 0.32}; }

/// Exact Frobenius-optimal decomposition of x^2 + 1.
inline DecompositionFunction square_plus_one_frobenius() {
  return decomposition_from_coefficients(square_plus_one(), Polynomial{1.0, 0.5, 0.5, 1.0 / 6.0},
                                         Polynomial{0.0, 0.5, -0.5, 1.0 / 6.0}, "reference");
}

/// Jacobian-bound decomposition of x^2 + 1 on [-2, 2] (L = 4).
inline JacobianDecomposition square_plus_one_jacobian() { return {square_plus_one(), 4.0, Interval(-2.0, 2.0)}; }

/// Frobenius-objective decomposition of the fourth Legendre polynomial.
inline DecompositionFunction legendre4_frobenius() {
  return decomposition_from_coefficients(legendre4(), Polynomial{0.375, 0.9206, -1.875, 0.4897, 2.1875, 0.8109},
                                         Polynomial{0.0, 0.9206, 1.875, 0.4897, -2.1875, 0.8109}, "reference");
}

/// Induced-one-norm-objective decomposition of the fourth Legendre polynomial.
inline DecompositionFunction legendre4_one_norm() {
  return decomposition_from_coefficients(legendre4(), Polynomial{0.375, 8.1767, -1.875, 1.2672, 2.1875, 1.1353},
                                         Polynomial{0.0, 8.1767, 1.875, 1.2672, -2.1875, 1.1353}, "reference");
}

/// Frobenius-objective decomposition of 0.7 x + 0.32 x^2.
inline DecompositionFunction quadratic_map_frobenius() {
  return decomposition_from_coefficients(quadratic_map(), Polynomial{0.0, 0.7163, 0.2781, 0.03599},
                                         Polynomial{0.0, 0.0163, -0.0419, 0.03599}, "reference");
}

}  // namespace polymono::reference
