#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "polymono/decomposition.hpp"
#include "polymono/polynomial.hpp"

namespace polymono {

/// x[k+1] = f(x[k]) + u[k] with u[k] in `u_bounds` and x[0] in `x0_bounds`.
struct ReachSpec {
  Polynomial f;
  Interval u_bounds;
  Interval x0_bounds;
  int steps = 1;

  void check() const {
    if (steps < 1) throw std::invalid_argument("ReachSpec: steps must be >= 1");
  }
};

struct ReachTube {
  int horizon = 0;               // requested N
  std::vector<Interval> bounds;  // k = 0..N, shorter when truncated
  bool truncated = false;        // a bound became non-finite
};

/// Propagates the embedding system
///   hi[k+1] = g(hi[k], lo[k]) + u.hi,  lo[k+1] = g(lo[k], hi[k]) + u.lo
/// for `spec.steps` steps. Stops early (and flags the tube) if a bound
/// overflows.
template <typename G>
ReachTube propagate_embedding(const G& g, const ReachSpec& spec) {
  spec.check();
  ReachTube tube;
  tube.horizon = spec.steps;
  double lo = spec.x0_bounds.lo;
  double hi = spec.x0_bounds.hi;
  tube.bounds.emplace_back(lo, hi);
  for (int k = 0; k < spec.steps; ++k) {
    const double next_hi = g(hi, lo) + spec.u_bounds.hi;
    const double next_lo = g(lo, hi) + spec.u_bounds.lo;
    if (!std::isfinite(next_hi) || !std::isfinite(next_lo)) {
      tube.truncated = true;
      break;
    }
    if (next_lo > next_hi) throw std::logic_error("propagate_embedding: lower bound crossed upper bound");
    lo = next_lo;
    hi = next_hi;
    tube.bounds.emplace_back(lo, hi);
  }
  return tube;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [lo, hi] from the top 53 bits of one 64-bit draw.
inline double uniform_in(std::mt19937_64& rng, const Interval& iv) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return iv.lo + (iv.hi - iv.lo) * u;
}

}  // namespace detail

/// Trajectory i uses an mt19937_64 seeded with splitmix64 applied to
/// (seed + i), so each trajectory is independent of generation order.
/// x[0] and every u[k] are uniform on their intervals.
inline std::vector<std::vector<double>> sample_trajectories(const ReachSpec& spec, int samples, std::uint64_t seed) {
  spec.check();
  if (samples < 1) throw std::invalid_argument("sample_trajectories: samples must be >= 1");
  std::vector<std::vector<double>> out(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    std::uint64_t state = seed + static_cast<std::uint64_t>(i);
    std::mt19937_64 rng(detail::splitmix64(state));
    auto& traj = out[static_cast<std::size_t>(i)];
    traj.reserve(static_cast<std::size_t>(spec.steps) + 1);
    double x = detail::uniform_in(rng, spec.x0_bounds);
    traj.push_back(x);
    for (int k = 0; k < spec.steps; ++k) {
      x = spec.f(x) + detail::uniform_in(rng, spec.u_bounds);
      traj.push_back(x);
    }
  }
  return out;
}

struct ContainmentReport {
  std::vector<int> violations;          // per step k
  std::vector<double> tightness_ratio;  // NaN when the sample spread is <= 1e-12
  int total_violations = 0;
  int compared_steps = 0;  // steps with a finite tube bound
};

/// Counts samples outside the tube (slack 1e-9) and the ratio of tube width
/// to sample spread at each step.
inline ContainmentReport containment_report(const ReachTube& tube, const std::vector<std::vector<double>>& trajectories) {
  constexpr double kSlack = 1e-9;
  const std::size_t len = static_cast<std::size_t>(tube.horizon) + 1;
  for (const auto& t : trajectories)
    if (t.size() != len) throw std::invalid_argument("containment_report: trajectory horizon does not match tube");
  ContainmentReport rep;
  rep.compared_steps = static_cast<int>(tube.bounds.size());
  rep.violations.assign(tube.bounds.size(), 0);
  rep.tightness_ratio.assign(tube.bounds.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < tube.bounds.size(); ++k) {
    const Interval& b = tube.bounds[k];
    double smin = std::numeric_limits<double>::infinity();
    double smax = -std::numeric_limits<double>::infinity();
    for (const auto& t : trajectories) {
      const double x = t[k];
      if (!(x >= b.lo - kSlack && x <= b.hi + kSlack)) ++rep.violations[k];
      smin = std::min(smin, x);
      smax = std::max(smax, x);
    }
    if (smax - smin > 1e-12) rep.tightness_ratio[k] = b.width() / (smax - smin);
    rep.total_violations += rep.violations[k];
  }
  return rep;
}

}  // namespace polymono
