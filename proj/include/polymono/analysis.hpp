#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "polymono/decomposition.hpp"
#include "polymono/polynomial.hpp"

namespace polymono {

/// Tightest possible decomposition: min of p over [x, y] when x <= y,
/// otherwise max of p over [y, x].
inline double tight_envelope(const Polynomial& p, double x, double y) {
  if (x == y) return p(x);
  if (x < y) return extrema_on(p, Interval(x, y)).min;
  return extrema_on(p, Interval(y, x)).max;
}

/// Evaluator wrapper so the tight envelope can be profiled like any other g.
struct TightEnvelope {
  Polynomial p;
  double operator()(double x, double y) const { return tight_envelope(p, x, y); }
};

struct WidthRow {
  double z = 0.0;
  double g_hi = 0.0;  // g(z + a, z - b)
  double g_lo = 0.0;  // g(z - b, z + a)
  double width = 0.0;
};

struct WidthProfile {
  double z_lo = 0.0;
  double z_hi = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::vector<WidthRow> rows;

  std::size_t size() const { return rows.size(); }
  double min_width() const {
    double m = rows.empty() ? 0.0 : rows.front().width;
    for (const auto& r : rows) m = std::min(m, r.width);
    return m;
  }
};

/// Samples [g(z - b, z + a), g(z + a, z - b)] on n uniform points of [z_lo, z_hi].
template <typename G>
WidthProfile width_profile(const G& g, double z_lo, double z_hi, double a, double b, std::size_t n) {
  if (!(z_lo < z_hi)) throw std::invalid_argument("width_profile: need z_lo < z_hi");
  if (n < 2) throw std::invalid_argument("width_profile: need at least two grid points");
  if (!(a > -b)) throw std::invalid_argument("width_profile: offsets must satisfy a > -b");
  WidthProfile prof{z_lo, z_hi, a, b, {}};
  prof.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = i + 1 == n ? z_hi : z_lo + (z_hi - z_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    WidthRow row;
    row.z = z;
    row.g_hi = g(z + a, z - b);
    row.g_lo = g(z - b, z + a);
    row.width = row.g_hi - row.g_lo;
    prof.rows.push_back(row);
  }
  return prof;
}

struct DominanceReport {
  std::vector<bool> inside;  // per row: inner interval within outer interval
  double fraction_inside = 0.0;
  double mean_width_ratio = 0.0;  // mean of inner.width / outer.width over rows with outer.width > 1e-12
};

/// Row-wise containment of `inner`'s intervals in `outer`'s (slack 1e-9).
inline DominanceReport compare(const WidthProfile& inner, const WidthProfile& outer) {
  if (inner.size() != outer.size() || inner.a != outer.a || inner.b != outer.b || inner.z_lo != outer.z_lo ||
      inner.z_hi != outer.z_hi)
    throw std::invalid_argument("compare: profiles use different grids or offsets");
  constexpr double kSlack = 1e-9;
  DominanceReport rep;
  rep.inside.resize(inner.size());
  std::size_t hits = 0;
  std::size_t ratio_rows = 0;
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const auto& a = inner.rows[i];
    const auto& b = outer.rows[i];
    rep.inside[i] = a.g_hi <= b.g_hi + kSlack && a.g_lo >= b.g_lo - kSlack;
    if (rep.inside[i]) ++hits;
    if (b.width > 1e-12) {
      ratio_sum += a.width / b.width;
      ++ratio_rows;
    }
  }
  rep.fraction_inside = inner.size() == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(inner.size());
  rep.mean_width_ratio = ratio_rows == 0 ? 1.0 : ratio_sum / static_cast<double>(ratio_rows);
  return rep;
}

/// CSV with header `z,g_hi,g_lo,width` and %.12g values.
inline void write_csv(std::ostream& os, const WidthProfile& prof) {
  os << "z,g_hi,g_lo,width\n";
  char buf[128];
  for (const auto& r : prof.rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", r.z, r.g_hi, r.g_lo, r.width);
    os << buf;
  }
}

}  // namespace polymono
