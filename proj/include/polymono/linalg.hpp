#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polymono {

/// Dense row-major n x m matrix. Used for eigenvector bases and solver work
/// arrays that are not guaranteed symmetric.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Small dense symmetric matrix. Only the lower triangle is stored, so an
/// asymmetric value cannot be represented.
class SymMatrix {
 public:
  SymMatrix() : SymMatrix(1) {}
  explicit SymMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * (n + 1) / 2, fill) {
    if (n == 0) throw std::invalid_argument("SymMatrix: dimension must be >= 1");
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
  }

  /// Builds from full square rows. Rejects non-square or non-finite input and
  /// any asymmetry beyond `tol` (absolute, scaled by max(1, |entry|)); the
  /// stored value is the average of the two mirrored entries.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows, double tol = 1e-12) {
    const std::size_t n = rows.size();
    if (n == 0) throw std::invalid_argument("SymMatrix: empty matrix");
    for (const auto& r : rows)
      if (r.size() != n) throw std::invalid_argument("SymMatrix: rows must form a square matrix");
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double a = rows[i][j];
        const double b = rows[j][i];
        if (!std::isfinite(a) || !std::isfinite(b))
          throw std::invalid_argument("SymMatrix: non-finite entry");
        if (std::abs(a - b) > tol * std::max({1.0, std::abs(a), std::abs(b)}))
          throw std::invalid_argument("SymMatrix: matrix is not symmetric at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
        m.set(i, j, 0.5 * (a + b));
      }
    return m;
  }

  /// Symmetric part (M + M^T)/2 of a square dense matrix.
  static SymMatrix symmetric_part(const DenseMatrix& d) {
    if (d.rows() != d.cols()) throw std::invalid_argument("SymMatrix: matrix must be square");
    SymMatrix m(d.rows());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j <= i; ++j) m.set(i, j, 0.5 * (d(i, j) + d(j, i)));
    return m;
  }

  std::size_t dim() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { data_[index(i, j)] = v; }
  void add(std::size_t i, std::size_t j, double v) { data_[index(i, j)] += v; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> r(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
    return r;
  }

  DenseMatrix dense() const {
    DenseMatrix d(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) d(i, j) = (*this)(i, j);
    return d;
  }

  SymMatrix& operator+=(const SymMatrix& o) {
    check_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  SymMatrix& operator-=(const SymMatrix& o) {
    check_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  SymMatrix& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend SymMatrix operator-(SymMatrix a) { return a *= -1.0; }

  bool operator==(const SymMatrix&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }
  void check_dim(const SymMatrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
  }

  std::size_t n_;
  std::vector<double> data_;
};

inline double frobenius_norm(const SymMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

/// Induced 1-norm: maximum absolute column sum.
inline double induced_one_norm(const SymMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

/// Sum of absolute values of all n^2 entries.
inline double entrywise_one_norm(const SymMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) s += std::abs(m(i, j));
  return s;
}

/// Frobenius inner product <A, B> = trace(A B).
inline double frobenius_inner(const SymMatrix& a, const SymMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * b(i, j);
  return s;
}

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct EigenDecomposition {
  std::vector<double> eigvals;  // descending
  DenseMatrix eigvecs;          // column i pairs with eigvals[i]
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver.
///
/// Stops once the off-diagonal Frobenius mass is at most 1e-14 * ||M||_F, and
/// throws `ConvergenceError` after 100 sweeps. Eigenvalues are returned in
/// descending order; each eigenvector is oriented so that its
/// largest-magnitude component (first one on ties) is positive, which makes
/// the result reproducible bit-for-bit.
inline EigenDecomposition sym_eigen(const SymMatrix& m) {
  constexpr int kMaxSweeps = 100;
  constexpr double kRelTol = 1e-14;
  const std::size_t n = m.dim();
  DenseMatrix a = m.dense();
  DenseMatrix v = DenseMatrix::identity(n);
  const double scale = frobenius_norm(m);

  auto off = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; off() > kRelTol * scale; ++sweep) {
    if (sweep == kMaxSweeps) throw ConvergenceError("sym_eigen: Jacobi iteration cap reached", off());
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.eigvals.resize(n);
  out.eigvecs = DenseMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.eigvals[c] = a(src, src);
    double biggest = 0.0;
    for (std::size_t k = 0; k < n; ++k) biggest = std::max(biggest, std::abs(v(k, src)));
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(v(k, src)) >= biggest * (1.0 - 1e-12)) {
        sign = v(k, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) out.eigvecs(k, c) = sign * v(k, src);
  }
  return out;
}

/// Sum of w_i u_i u_i^T over the eigenpairs, with weights from `weight(lambda)`.
template <typename Weight>
SymMatrix spectral_sum(const EigenDecomposition& e, Weight weight) {
  const std::size_t n = e.eigvals.size();
  SymMatrix out(n);
  for (std::size_t c = 0; c < n; ++c) {
    const double w = weight(e.eigvals[c]);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) out.add(i, j, w * e.eigvecs(i, c) * e.eigvecs(j, c));
  }
  return out;
}

inline double min_eigenvalue(const SymMatrix& m) { return sym_eigen(m).eigvals.back(); }

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped to 0).
inline SymMatrix psd_project(const SymMatrix& m) {
  return spectral_sum(sym_eigen(m), [](double l) { return std::max(l, 0.0); });
}

/// Solves S x = b for symmetric positive definite S via Cholesky.
inline std::vector<double> solve_spd(const DenseMatrix& s, std::span<const double> b) {
  const std::size_t n = s.rows();
  if (s.cols() != n || b.size() != n) throw std::invalid_argument("solve_spd: dimension mismatch");
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0) throw std::domain_error("solve_spd: matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= l(i, k) * y[k];
    y[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= l(k, i) * y[k];
    y[i] /= l(i, i);
  }
  return y;
}

}  // namespace polymono
