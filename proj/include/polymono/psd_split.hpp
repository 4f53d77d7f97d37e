#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polymono/gram.hpp"
#include "polymono/linalg.hpp"
#include "polymono/nelder_mead.hpp"

namespace polymono {

/// Cost J(U, V) = h(U) + h(V) minimized over all PSD splits of the Gram family.
enum class Objective { frobenius, one_norm, one_norm_entrywise };

enum class SplitMethod { eigen, sdp_frobenius, sdp_one_norm, sdp_one_norm_entrywise };

inline std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::frobenius: return "frobenius";
    case Objective::one_norm: return "one-norm";
    case Objective::one_norm_entrywise: return "one-norm-entrywise";
  }
  return "?";
}

inline std::string_view to_string(SplitMethod m) {
  switch (m) {
    case SplitMethod::eigen: return "eigen";
    case SplitMethod::sdp_frobenius: return "sdp-frobenius";
    case SplitMethod::sdp_one_norm: return "sdp-one-norm";
    case SplitMethod::sdp_one_norm_entrywise: return "sdp-one-norm-entrywise";
  }
  return "?";
}

inline SplitMethod method_for(Objective o) {
  switch (o) {
    case Objective::frobenius: return SplitMethod::sdp_frobenius;
    case Objective::one_norm: return SplitMethod::sdp_one_norm;
    case Objective::one_norm_entrywise: return SplitMethod::sdp_one_norm_entrywise;
  }
  return SplitMethod::sdp_frobenius;
}

inline double matrix_cost(Objective o, const SymMatrix& m) {
  switch (o) {
    case Objective::frobenius: return frobenius_norm(m);
    case Objective::one_norm: return induced_one_norm(m);
    case Objective::one_norm_entrywise: return entrywise_one_norm(m);
  }
  return 0.0;
}

inline double objective_value(Objective o, const SymMatrix& u, const SymMatrix& v) {
  return matrix_cost(o, u) + matrix_cost(o, v);
}

struct EigenSplit {
  SymMatrix U;
  SymMatrix V;
};

/// A = U - V with U, V PSD built from the positive and negative eigenpairs of A.
inline EigenSplit eigen_split(const SymMatrix& a) {
  const EigenDecomposition e = sym_eigen(a);
  return {spectral_sum(e, [](double l) { return std::max(l, 0.0); }),
          spectral_sum(e, [](double l) { return -std::min(l, 0.0); })};
}

/// (U + R, V + R); R must be PSD (min eigenvalue >= -1e-10).
inline EigenSplit shift_split(const SymMatrix& u, const SymMatrix& v, const SymMatrix& r) {
  const double lmin = min_eigenvalue(r);
  if (lmin < -1e-10)
    throw std::invalid_argument("shift_split: shift matrix is not PSD (min eigenvalue " + std::to_string(lmin) + ")");
  return {u + r, v + r};
}

struct PsdSplit {
  std::vector<double> alpha;
  SymMatrix U;
  SymMatrix V;
  double feas_residual = 0.0;  // ||(U - V) - (G + L(alpha))||_F
  double min_eig_U = 0.0;
  double min_eig_V = 0.0;
  Objective objective = Objective::frobenius;
  double objective_value = 0.0;
  SplitMethod method = SplitMethod::eigen;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool cap_reached = false;
};

namespace detail {

inline PsdSplit finish_split(const GramParam& gp, std::vector<double> alpha, SymMatrix u, SymMatrix v,
                             Objective objective, SplitMethod method) {
  PsdSplit s;
  const SymMatrix target = assemble(gp, alpha);
  s.alpha = std::move(alpha);
  s.feas_residual = frobenius_norm((u - v) - target);
  s.min_eig_U = min_eigenvalue(u);
  s.min_eig_V = min_eigenvalue(v);
  s.objective = objective;
  s.objective_value = objective_value(objective, u, v);
  s.method = method;
  s.U = std::move(u);
  s.V = std::move(v);
  return s;
}

inline DenseMatrix prox_frobenius(DenseMatrix x, double t) {
  const double nrm = x.frobenius_norm();
  if (nrm <= t) return DenseMatrix(x.rows(), x.cols());
  x *= 1.0 - t / nrm;
  return x;
}

inline DenseMatrix prox_entrywise(DenseMatrix x, double t) {
  for (double& v : x.data()) v = std::copysign(std::max(std::abs(v) - t, 0.0), v);
  return x;
}

/// Soft threshold that projects `col` onto the l1 ball of radius `radius`
/// (0 when the column is already inside).
inline double l1_ball_threshold(const std::vector<double>& abs_sorted_desc, double radius) {
  double total = 0.0;
  for (double v : abs_sorted_desc) total += v;
  if (total <= radius) return 0.0;
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < abs_sorted_desc.size(); ++k) {
    cum += abs_sorted_desc[k];
    const double cand = (cum - radius) / static_cast<double>(k + 1);
    if (abs_sorted_desc[k] > cand) theta = cand;
  }
  return std::max(theta, 0.0);
}

/// prox of t * (max absolute column sum). With column l1 radius s, each column
/// is projected onto the radius-s l1 ball; s is the root of
/// sum_j threshold_j(s) = t, found by bisection.
inline DenseMatrix prox_induced_one(const DenseMatrix& x, double t) {
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  std::vector<std::vector<double>> cols(m, std::vector<double>(n));
  double sum_max = 0.0;
  double max_l1 = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cols[j][i] = std::abs(x(i, j));
      l1 += cols[j][i];
    }
    std::sort(cols[j].begin(), cols[j].end(), std::greater<>());
    sum_max += cols[j].front();
    max_l1 = std::max(max_l1, l1);
  }
  if (sum_max <= t) return DenseMatrix(n, m);

  auto excess = [&](double radius) {
    double s = 0.0;
    for (const auto& c : cols) s += l1_ball_threshold(c, radius);
    return s - t;
  };
  double lo = 0.0;
  double hi = max_l1;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, max_l1); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double radius = 0.5 * (lo + hi);
  DenseMatrix out(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double th = l1_ball_threshold(cols[j], radius);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = x(i, j);
      out(i, j) = std::copysign(std::max(std::abs(v) - th, 0.0), v);
    }
  }
  return out;
}

inline DenseMatrix prox_cost(Objective o, const DenseMatrix& x, double t) {
  switch (o) {
    case Objective::frobenius: return prox_frobenius(x, t);
    case Objective::one_norm: return prox_induced_one(x, t);
    case Objective::one_norm_entrywise: return prox_entrywise(x, t);
  }
  return x;
}

inline double sq(double v) { return v * v; }

}  // namespace detail

struct SdpOptions {
  double rho = 1.0;
  double tol = 1e-9;
  int max_iterations = 0;  // 0: 20000 for frobenius, 50000 for the one-norm objectives
};

/// Minimizes J(U, V) over alpha and U, V PSD subject to U - V = G + L(alpha).
///
/// Consensus ADMM on (alpha, U, V). The affine block is an exact projection
/// (anti-diagonal mean removal); the PSD copies use eigenvalue clipping and
/// the cost copies use the proximal operator of the chosen norm. Starts from
/// the eigen split at alpha = 0 with zero duals.
///
/// The returned split is the better (by J) of the ADMM iterate, made PSD and
/// exactly feasible, and the eigen split of G + L(alpha*) at the ADMM's own
/// alpha*. Hitting the iteration cap sets `cap_reached` and still returns the
/// best split found.
inline PsdSplit solve_split_sdp(const GramParam& gp, Objective objective, const SdpOptions& opts = {}) {
  const std::size_t n = gp.dim();
  const std::size_t m = gp.num_params();
  const SplitMethod method = method_for(objective);

  if (frobenius_norm(gp.base) == 0.0 && m == 0)
    return detail::finish_split(gp, {}, SymMatrix(n), SymMatrix(n), objective, method);

  const int cap = opts.max_iterations > 0 ? opts.max_iterations
                                          : (objective == Objective::frobenius ? 20000 : 50000);
  const double rho = opts.rho;
  const double scale = std::max(1.0, frobenius_norm(gp.base));
  const SymMatrix& g = gp.base;

  EigenSplit start = eigen_split(g);
  SymMatrix u = start.U;
  SymMatrix v = start.V;
  SymMatrix pu = u;
  SymMatrix pv = v;
  DenseMatrix nu = u.dense();
  DenseMatrix nv = v.dense();
  SymMatrix y1(n);
  SymMatrix y2(n);
  DenseMatrix y3(n, n);
  DenseMatrix y4(n, n);

  PsdSplit result;
  int it = 0;
  double r_norm = 0.0;
  double s_norm = 0.0;
  bool converged = false;
  for (; it < cap; ++it) {
    // x-update: nearest (U, V) with U - V in G + span(L).
    const SymMatrix a = 0.5 * ((pu - y1) + SymMatrix::symmetric_part(nu - y3));
    const SymMatrix b = 0.5 * ((pv - y2) + SymMatrix::symmetric_part(nv - y4));
    const SymMatrix s = a + b;
    const SymMatrix d = g + project_to_null_space(a - b - g);
    u = 0.5 * (s + d);
    v = 0.5 * (s - d);

    // z-update.
    const SymMatrix pu_old = pu;
    const SymMatrix pv_old = pv;
    const DenseMatrix nu_old = nu;
    const DenseMatrix nv_old = nv;
    pu = psd_project(u + y1);
    pv = psd_project(v + y2);
    const DenseMatrix ud = u.dense();
    const DenseMatrix vd = v.dense();
    nu = detail::prox_cost(objective, ud + y3, 1.0 / rho);
    nv = detail::prox_cost(objective, vd + y4, 1.0 / rho);

    // Dual update and residuals.
    const SymMatrix r1 = u - pu;
    const SymMatrix r2 = v - pv;
    const DenseMatrix r3 = ud - nu;
    const DenseMatrix r4 = vd - nv;
    y1 += r1;
    y2 += r2;
    y3 += r3;
    y4 += r4;
    r_norm = std::sqrt(detail::sq(frobenius_norm(r1)) + detail::sq(frobenius_norm(r2)) +
                       detail::sq(r3.frobenius_norm()) + detail::sq(r4.frobenius_norm()));
    s_norm = rho * std::sqrt(detail::sq(frobenius_norm(pu - pu_old)) + detail::sq(frobenius_norm(pv - pv_old)) +
                             detail::sq((nu - nu_old).frobenius_norm()) +
                             detail::sq((nv - nv_old).frobenius_norm()));
    if (r_norm <= opts.tol * scale && s_norm <= opts.tol * scale) {
      converged = true;
      ++it;
      break;
    }
  }

  std::vector<double> alpha = null_coordinates(gp, (u - v) - g);
  const SymMatrix target = assemble(gp, alpha);

  // Projecting the iterate onto the PSD cone leaves a small residual against
  // the target; its eigen split is added back so U - V is exact.
  SymMatrix au = psd_project(u);
  SymMatrix av = psd_project(v);
  EigenSplit fix = eigen_split(target - (au - av));
  au += fix.U;
  av += fix.V;
  PsdSplit admm = detail::finish_split(gp, alpha, std::move(au), std::move(av), objective, method);
  EigenSplit es = eigen_split(target);
  PsdSplit eig = detail::finish_split(gp, alpha, std::move(es.U), std::move(es.V), objective, method);

  const bool admm_feasible = admm.feas_residual <= 1e-7 * std::max(1.0, frobenius_norm(target));
  const bool admm_better = admm.objective_value < eig.objective_value - 1e-9 * std::max(1.0, eig.objective_value);
  result = (admm_feasible && admm_better) ? std::move(admm) : std::move(eig);
  result.iterations = it;
  result.primal_residual = r_norm;
  result.dual_residual = s_norm;
  result.cap_reached = !converged;
  return result;
}

/// Constructive split of G + L(alpha) (alpha = 0 when not given).
inline PsdSplit split_by_eigen(const GramParam& gp, std::vector<double> alpha = {}) {
  if (alpha.empty()) alpha.assign(gp.num_params(), 0.0);
  EigenSplit es = eigen_split(assemble(gp, alpha));
  return detail::finish_split(gp, std::move(alpha), std::move(es.U), std::move(es.V), Objective::frobenius,
                              SplitMethod::eigen);
}

enum class Direction { increasing, decreasing };

inline std::string_view to_string(Direction d) { return d == Direction::increasing ? "increasing" : "decreasing"; }

struct MonotonicityCertificate {
  Direction direction = Direction::increasing;
  std::vector<double> alpha;
  SymMatrix gram;        // G + L(alpha)
  double min_eig = 0.0;  // of gram, or of -gram when decreasing
};

/// Searches for alpha making S * (G + L(alpha)) PSD, with S = +1 for
/// increasing and -1 for decreasing, by maximizing its smallest eigenvalue
/// (Nelder-Mead from 0 and from +-1 along each coordinate).
///
/// A certificate is returned when the best smallest eigenvalue is at least
/// -1e-8 * max(1, ||G + L(alpha)||_F). No certificate does not prove the
/// polynomial is non-monotone; the Gram condition is only sufficient.
inline std::optional<MonotonicityCertificate> certify_monotone(const GramParam& gp, Direction direction) {
  const double sign = direction == Direction::increasing ? 1.0 : -1.0;
  const std::size_t m = gp.num_params();
  auto neg_min_eig = [&](const std::vector<double>& alpha) { return -min_eigenvalue(sign * assemble(gp, alpha)); };

  std::vector<std::vector<double>> starts{std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < m; ++i)
    for (double d : {1.0, -1.0}) {
      std::vector<double> s(m, 0.0);
      s[i] = d;
      starts.push_back(std::move(s));
    }
  const NelderMeadResult best = nelder_mead_multistart(neg_min_eig, starts);

  MonotonicityCertificate cert;
  cert.direction = direction;
  cert.alpha = best.x;
  cert.gram = assemble(gp, cert.alpha);
  cert.min_eig = -best.fx;
  if (cert.min_eig < -1e-8 * std::max(1.0, frobenius_norm(cert.gram))) return std::nullopt;
  return cert;
}

}  // namespace polymono
