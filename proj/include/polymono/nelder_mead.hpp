#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace polymono {

struct NelderMeadOptions {
  double initial_step = 1.0;
  double diameter_tol = 1e-7;  // stop when every vertex is this close to the best
  int max_evaluations = 20000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free minimization with the standard reflection (1), expansion
/// (2), contraction (1/2) and shrink (1/2) coefficients. Deterministic.
template <typename F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const NelderMeadOptions& opts = {}) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  if (n == 0) {
    res.x = std::move(x0);
    res.fx = f(res.x);
    res.evaluations = 1;
    res.converged = true;
    return res;
  }

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> idx(n + 1);
  auto along = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = from[k] + t * (to[k] - from[k]);
    return p;
  };

  bool converged = false;
  while (evals < opts.max_evaluations) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = idx.front();
    const std::size_t worst = idx.back();
    const std::size_t second = idx[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(pts[i][k] - pts[best][k]));
      diameter = std::max(diameter, d);
    }
    if (diameter < opts.diameter_tol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }

    const auto reflected = along(centroid, pts[worst], -1.0);
    const double fr = eval(reflected);
    if (fr < vals[best]) {
      const auto expanded = along(centroid, pts[worst], -2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    // Outside contraction if the reflection beat the worst point, inside otherwise.
    const bool outside = fr < vals[worst];
    const auto contracted = along(centroid, outside ? reflected : pts[worst], 0.5);
    const double fc = eval(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = along(pts[best], pts[i], 0.5);
      vals[i] = eval(pts[i]);
    }
  }

  const auto it = std::min_element(vals.begin(), vals.end());
  const auto b = static_cast<std::size_t>(it - vals.begin());
  res.x = pts[b];
  res.fx = vals[b];
  res.evaluations = evals;
  res.converged = converged;
  return res;
}

/// Runs `nelder_mead` from each start, then keeps restarting from the best
/// point with a fresh simplex until a restart no longer improves it.
template <typename F>
NelderMeadResult nelder_mead_multistart(F&& f, const std::vector<std::vector<double>>& starts,
                                        const NelderMeadOptions& opts = {}, int max_restarts = 20) {
  NelderMeadResult best;
  bool have = false;
  int evals = 0;
  for (const auto& s : starts) {
    auto r = nelder_mead(f, s, opts);
    evals += r.evaluations;
    if (!have || r.fx < best.fx) {
      best = std::move(r);
      have = true;
    }
  }
  NelderMeadOptions polish = opts;
  for (int k = 0; k < max_restarts; ++k) {
    polish.initial_step = std::max(opts.diameter_tol * 10.0, polish.initial_step * 0.1);
    auto r = nelder_mead(f, best.x, polish);
    evals += r.evaluations;
    if (!(r.fx < best.fx)) break;
    best = std::move(r);
  }
  best.evaluations = evals;
  return best;
}

}  // namespace polymono
