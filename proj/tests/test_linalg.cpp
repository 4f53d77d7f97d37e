#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "polymono/linalg.hpp"

using polymono::DenseMatrix;
using polymono::SymMatrix;

namespace {

SymMatrix sym(const std::vector<std::vector<double>>& rows) { return SymMatrix::from_rows(rows); }

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

// Q diag(l) Q^T
SymMatrix reconstruct(const polymono::EigenDecomposition& e) {
  const std::size_t n = e.eigvals.size();
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += e.eigvecs(i, k) * e.eigvals[k] * e.eigvecs(j, k);
      out.set(i, j, s);
    }
  return out;
}

double orthonormality_residual(const DenseMatrix& q) {
  const DenseMatrix qtq = q.transpose() * q;
  double s = 0.0;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      const double d = qtq(i, j) - (i == j ? 1.0 : 0.0);
      s += d * d;
    }
  return std::sqrt(s);
}

}  // namespace

TEST(SymMatrix, FromRowsValidatesAndSymmetrizes) {
  EXPECT_THROW(sym({{1.0, 2.0}, {2.5, 1.0}}), std::invalid_argument);
  EXPECT_THROW(sym({{1.0, 2.0}}), std::invalid_argument);
  EXPECT_THROW(sym({{1.0, NAN}, {NAN, 1.0}}), std::invalid_argument);
  const SymMatrix m = sym({{1.0, 2.0}, {2.0 + 1e-13, 1.0}});
  EXPECT_EQ(m(0, 1), m(1, 0));
  EXPECT_EQ(m.rows()[0][1], m.rows()[1][0]);
}

TEST(SymMatrix, Norms) {
  const SymMatrix half = 0.5 * sym({{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_DOUBLE_EQ(frobenius_norm(half), 1.0);
  const SymMatrix i3 = SymMatrix::identity(3);
  EXPECT_DOUBLE_EQ(frobenius_norm(i3), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(induced_one_norm(i3), 1.0);
  EXPECT_DOUBLE_EQ(induced_one_norm(sym({{0.0, 1.0}, {1.0, 0.0}})), 1.0);
  const SymMatrix a = sym({{1.0, -2.0, 0.0}, {-2.0, 0.5, 3.0}, {0.0, 3.0, -1.0}});
  EXPECT_DOUBLE_EQ(induced_one_norm(a), 5.5);
  EXPECT_DOUBLE_EQ(entrywise_one_norm(a), 1.0 + 4.0 + 0.5 + 6.0 + 1.0);
}

TEST(SymEigen, SwapMatrix) {
  const auto e = polymono::sym_eigen(sym({{0.0, 1.0}, {1.0, 0.0}}));
  ASSERT_EQ(e.eigvals.size(), 2u);
  EXPECT_NEAR(e.eigvals[0], 1.0, 1e-15);
  EXPECT_NEAR(e.eigvals[1], -1.0, 1e-15);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(e.eigvecs(0, 0), h, 1e-15);
  EXPECT_NEAR(e.eigvecs(1, 0), h, 1e-15);
  EXPECT_NEAR(e.eigvecs(0, 1), h, 1e-15);
  EXPECT_NEAR(e.eigvecs(1, 1), -h, 1e-15);
}

TEST(SymEigen, IdentityAndLegendreGram) {
  const auto id = polymono::sym_eigen(SymMatrix::identity(3));
  for (double l : id.eigvals) EXPECT_DOUBLE_EQ(l, 1.0);
  const auto e = polymono::sym_eigen(sym({{0.0, -3.75, 0.0}, {-3.75, 0.0, 8.75}, {0.0, 8.75, 0.0}}));
  const double s = std::sqrt(90.625);
  EXPECT_NEAR(e.eigvals[0], s, 1e-12);
  EXPECT_NEAR(e.eigvals[1], 0.0, 1e-12);
  EXPECT_NEAR(e.eigvals[2], -s, 1e-12);
  EXPECT_NEAR(s, 9.51972, 1e-5);
}

TEST(SymEigen, MinEigenvalueExamples) {
  EXPECT_NEAR(polymono::min_eigenvalue(sym({{3.0, -2.0, -1.0}, {-2.0, 2.0, 0.0}, {-1.0, 0.0, 1.0}})), 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(polymono::min_eigenvalue(SymMatrix::identity(2)), 1.0);
  EXPECT_NEAR(polymono::min_eigenvalue(sym({{0.0, 1.0}, {1.0, 0.0}})), -1.0, 1e-15);
}

TEST(SymEigen, DeterministicSignConvention) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const SymMatrix m = oracle::random_symmetric(rng, 4, 5.0);
    const auto a = polymono::sym_eigen(m);
    const auto b = polymono::sym_eigen(m);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(a.eigvals[j], b.eigvals[j]);
      double big = 0.0;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < 4; ++i)
        if (std::abs(a.eigvecs(i, j)) > big + 1e-12) {
          big = std::abs(a.eigvecs(i, j));
          arg = i;
        }
      EXPECT_GT(a.eigvecs(arg, j), 0.0);
    }
  }
}

TEST(PsdProject, Examples) {
  const SymMatrix psd = sym({{2.0, 1.0}, {1.0, 2.0}});
  EXPECT_LE(frobenius_norm(polymono::psd_project(psd) - psd), 1e-12);
  EXPECT_LE(max_abs_diff(polymono::psd_project(sym({{0.0, 1.0}, {1.0, 0.0}})), 0.5 * sym({{1.0, 1.0}, {1.0, 1.0}})),
            1e-15);
  EXPECT_LE(frobenius_norm(polymono::psd_project(-SymMatrix::identity(2))), 1e-15);
}

TEST(SolveSpd, SolvesAndRejectsIndefinite) {
  DenseMatrix a(2, 2);
  a(0, 0) = 4.0;
  a(0, 1) = a(1, 0) = 1.0;
  a(1, 1) = 3.0;
  const std::vector<double> b{1.0, 2.0};
  const auto x = polymono::solve_spd(a, b);
  EXPECT_NEAR(4.0 * x[0] + x[1], 1.0, 1e-14);
  EXPECT_NEAR(x[0] + 3.0 * x[1], 2.0, 1e-14);
  a(1, 1) = -1.0;
  EXPECT_THROW(polymono::solve_spd(a, b), std::domain_error);
}

TEST(LinalgProperty, EigenReconstructionAndOrthonormality) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int t = 0; t < 1000; ++t) {
    const SymMatrix m = oracle::random_symmetric(rng, static_cast<std::size_t>(dim(rng)), 10.0);
    const auto e = polymono::sym_eigen(m);
    EXPECT_LE(frobenius_norm(reconstruct(e) - m), 1e-12 * std::max(1.0, frobenius_norm(m)));
    EXPECT_LE(orthonormality_residual(e.eigvecs), 1e-12);
    EXPECT_TRUE(std::is_sorted(e.eigvals.rbegin(), e.eigvals.rend()));
  }
}

TEST(LinalgProperty, PsdProjectIsIdempotentAndPsd) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 500; ++t) {
    const SymMatrix m = oracle::random_symmetric(rng, 5, 10.0);
    const SymMatrix p = polymono::psd_project(m);
    EXPECT_GE(polymono::min_eigenvalue(p), -1e-12 * frobenius_norm(m));
    EXPECT_LE(frobenius_norm(polymono::psd_project(p) - p), 1e-10);
  }
}

TEST(LinalgProperty, SpectrumInvariantUnderOrthogonalSimilarity) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 200; ++t) {
    const SymMatrix m = oracle::random_symmetric(rng, 5, 10.0);
    // random orthogonal Q from the eigenvectors of an unrelated matrix
    const DenseMatrix q = polymono::sym_eigen(oracle::random_symmetric(rng, 5, 1.0)).eigvecs;
    const SymMatrix rotated = SymMatrix::symmetric_part(q.transpose() * m.dense() * q);
    const auto a = polymono::sym_eigen(m).eigvals;
    const auto b = polymono::sym_eigen(rotated).eigvals;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
  }
}
