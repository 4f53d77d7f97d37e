#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polymono/gram.hpp"
#include "polymono/linalg.hpp"
#include "polymono/polynomial.hpp"
#include "polymono/psd_split.hpp"

namespace polymono {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lower bound exceeds upper bound");
  }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// How the PSD split behind a decomposition is chosen.
enum class DecompositionMethod { eigen, frobenius, one_norm, one_norm_entrywise };

inline std::string_view to_string(DecompositionMethod m) {
  switch (m) {
    case DecompositionMethod::eigen: return "eigen";
    case DecompositionMethod::frobenius: return "frobenius";
    case DecompositionMethod::one_norm: return "one-norm";
    case DecompositionMethod::one_norm_entrywise: return "one-norm-entrywise";
  }
  return "?";
}

inline std::optional<DecompositionMethod> parse_decomposition_method(std::string_view s) {
  if (s == "eigen") return DecompositionMethod::eigen;
  if (s == "frobenius") return DecompositionMethod::frobenius;
  if (s == "one-norm") return DecompositionMethod::one_norm;
  if (s == "one-norm-entrywise") return DecompositionMethod::one_norm_entrywise;
  return std::nullopt;
}

/// g(x, y) = q(x) - r(y) with q, r nondecreasing polynomials and q - r = p.
///
/// `witness_U` and `witness_V` are PSD Gram matrices of q' and r'. They are
/// optional only for decompositions built from printed coefficients, where a
/// witness has to be searched for and may not exist.
struct DecompositionFunction {
  Polynomial source;
  Polynomial q;
  Polynomial r;
  std::optional<SymMatrix> witness_U;
  std::optional<SymMatrix> witness_V;
  std::string method;
  std::optional<PsdSplit> split;

  double operator()(double x, double y) const { return q(x) - r(y); }
};

inline double evaluate_g(const DecompositionFunction& df, double x, double y) { return df(x, y); }

inline DecompositionFunction decompose(const Polynomial& p, DecompositionMethod method = DecompositionMethod::frobenius,
                                       const SdpOptions& opts = {}) {
  const GramParam gp = make_gram_param(derivative(p));
  PsdSplit split;
  switch (method) {
    case DecompositionMethod::eigen: split = split_by_eigen(gp); break;
    case DecompositionMethod::frobenius: split = solve_split_sdp(gp, Objective::frobenius, opts); break;
    case DecompositionMethod::one_norm: split = solve_split_sdp(gp, Objective::one_norm, opts); break;
    case DecompositionMethod::one_norm_entrywise:
      split = solve_split_sdp(gp, Objective::one_norm_entrywise, opts);
      break;
  }
  DecompositionFunction df;
  df.source = p;
  df.q = antiderivative(quadratic_form_poly(split.U), p(0.0));
  df.r = antiderivative(quadratic_form_poly(split.V), 0.0);
  df.witness_U = split.U;
  df.witness_V = split.V;
  df.method = std::string(to_string(method));
  df.split = std::move(split);
  return df;
}

/// Wraps given q, r coefficients (e.g. published reference values) and looks
/// for PSD Gram witnesses of q' and r'.
inline DecompositionFunction decomposition_from_coefficients(const Polynomial& source, const Polynomial& q,
                                                             const Polynomial& r, std::string method) {
  DecompositionFunction df;
  df.source = source;
  df.q = q;
  df.r = r;
  df.method = std::move(method);
  if (auto c = certify_monotone(make_gram_param(derivative(q)), Direction::increasing)) df.witness_U = c->gram;
  if (auto c = certify_monotone(make_gram_param(derivative(r)), Direction::increasing)) df.witness_V = c->gram;
  return df;
}

/// Sign-change roots of p on a uniform 4096-cell scan, refined by bisection
/// and deduplicated within 1e-8. Roots of even multiplicity that do not
/// change sign are only found when they land on a grid point.
inline std::vector<double> real_roots_in_interval(const Polynomial& p, const Interval& domain) {
  if (p.is_zero()) throw std::invalid_argument("real_roots_in_interval: polynomial is identically zero");
  constexpr int kCells = 4096;
  std::vector<double> roots;
  if (p.degree() == 0) return roots;

  const double h = domain.width() / kCells;
  auto grid = [&](int i) { return i == kCells ? domain.hi : domain.lo + h * i; };
  double x0 = grid(0);
  double f0 = p(x0);
  if (f0 == 0.0) roots.push_back(x0);
  for (int i = 1; i <= kCells && domain.width() > 0.0; ++i) {
    const double x1 = grid(i);
    const double f1 = p(x1);
    if (f1 == 0.0) {
      roots.push_back(x1);
    } else if (f0 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
      double a = x0;
      double b = x1;
      double fa = f0;
      double mid = 0.5 * (a + b);
      for (int k = 0; k < 200; ++k) {
        mid = 0.5 * (a + b);
        const double fm = p(mid);
        if (fm == 0.0 || mid <= a || mid >= b) break;
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(mid);
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || r - out.back() > 1e-8) out.push_back(r);
  return out;
}

/// Exact extrema of p over a closed interval from endpoints and critical points.
struct Extrema {
  double min = 0.0;
  double max = 0.0;
};

inline Extrema extrema_on(const Polynomial& p, const Interval& domain) {
  Extrema e{std::min(p(domain.lo), p(domain.hi)), std::max(p(domain.lo), p(domain.hi))};
  const Polynomial dp = derivative(p);
  if (dp.is_zero() || domain.width() == 0.0) return e;
  for (double x : real_roots_in_interval(dp, domain)) {
    const double v = p(x);
    e.min = std::min(e.min, v);
    e.max = std::max(e.max, v);
  }
  return e;
}

/// g(x, y) = p(x) + L (x - y) with L >= |p'| on `domain`.
struct JacobianDecomposition {
  Polynomial p;
  double L = 0.0;
  Interval domain;

  double operator()(double x, double y) const { return p(x) + L * (x - y); }

  /// Smallest L - |p'(x)| over 10^4 uniform samples of the domain.
  double bound_slack() const {
    const Polynomial dp = derivative(p);
    constexpr int kSamples = 10000;
    double slack = L - std::abs(dp(domain.lo));
    for (int i = 0; i < kSamples; ++i) {
      const double x = domain.lo + domain.width() * i / (kSamples - 1);
      slack = std::min(slack, L - std::abs(dp(x)));
    }
    return slack;
  }
};

/// L is max |p'| on the domain: endpoints, roots of p'' inside, and the scan
/// grid used for root finding as a fallback.
inline JacobianDecomposition jacobian_decomposition(const Polynomial& p, const Interval& domain) {
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi))
    throw std::invalid_argument("jacobian_decomposition: domain must be finite");
  const Polynomial dp = derivative(p);
  const Polynomial ddp = derivative(dp);
  double L = std::max(std::abs(dp(domain.lo)), std::abs(dp(domain.hi)));
  if (!ddp.is_zero()) {
    for (double x : real_roots_in_interval(ddp, domain)) L = std::max(L, std::abs(dp(x)));
  }
  constexpr int kCells = 4096;
  for (int i = 0; i <= kCells; ++i) L = std::max(L, std::abs(dp(domain.lo + domain.width() * i / kCells)));
  return {p, L, domain};
}

struct ValidationReport {
  double embedding_residual = 0.0;  // max_k |(q - r - p)_k| / max(1, max_k |p_k|)
  double min_dq = 0.0;              // min of q'(x)/scale(x) over the sample grid
  double min_dr = 0.0;
  std::optional<double> witness_U_min_eig;
  std::optional<double> witness_V_min_eig;
  bool embedding_ok = false;
  bool increasing_ok = false;
  bool decreasing_ok = false;

  bool ok() const { return embedding_ok && increasing_ok && decreasing_ok; }
};

namespace detail {

/// min over 10^4 samples in [-10, 10] of f(x) / max(1, sum_k |c_k| |x|^k).
inline double min_scaled_on_grid(const Polynomial& f) {
  constexpr int kSamples = 10000;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const double x = -10.0 + 20.0 * i / (kSamples - 1);
    double mag = 0.0;
    double xp = 1.0;
    for (std::size_t k = 0; k <= f.degree(); ++k) {
      mag += std::abs(f[k]) * xp;
      xp *= std::abs(x);
    }
    best = std::min(best, f(x) / std::max(1.0, mag));
  }
  return best;
}

inline bool witness_matches(const SymMatrix& w, const Polynomial& dpoly) {
  const Polynomial qf = quadratic_form_poly(w);
  return max_coeff_diff(qf, dpoly) <= 1e-8 * std::max(1.0, dpoly.max_abs_coeff());
}

}  // namespace detail

/// Checks the three decomposition-function properties: the embedding
/// q - r = p, and nonnegativity of q' and r' both on a sample grid and through
/// a PSD Gram witness.
inline ValidationReport validate(const DecompositionFunction& df) {
  constexpr double kTol = 1e-8;
  ValidationReport rep;
  rep.embedding_residual = max_coeff_diff(df.q - df.r, df.source) / std::max(1.0, df.source.max_abs_coeff());
  rep.embedding_ok = rep.embedding_residual <= kTol;

  const Polynomial dq = derivative(df.q);
  const Polynomial dr = derivative(df.r);
  rep.min_dq = detail::min_scaled_on_grid(dq);
  rep.min_dr = detail::min_scaled_on_grid(dr);

  auto witness_ok = [&](const std::optional<SymMatrix>& w, const Polynomial& d, std::optional<double>& eig) {
    if (!w) return false;
    eig = min_eigenvalue(*w);
    return *eig >= -kTol * std::max(1.0, frobenius_norm(*w)) && detail::witness_matches(*w, d);
  };
  rep.increasing_ok = rep.min_dq >= -kTol && witness_ok(df.witness_U, dq, rep.witness_U_min_eig);
  rep.decreasing_ok = rep.min_dr >= -kTol && witness_ok(df.witness_V, dr, rep.witness_V_min_eig);
  return rep;
}

}  // namespace polymono
