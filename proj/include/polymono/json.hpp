#pragma once

// JSON encodings for the library types. Requires nlohmann/json.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polymono/decomposition.hpp"
#include "polymono/gram.hpp"
#include "polymono/linalg.hpp"
#include "polymono/polynomial.hpp"
#include "polymono/psd_split.hpp"
#include "polymono/reach.hpp"

namespace polymono {

namespace detail {

inline double finite_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
  return v;
}

inline Interval interval_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument(std::string(what) + ": expected [lo, hi]");
  return Interval(finite_number(j[0], what), finite_number(j[1], what));
}

}  // namespace detail

// {"coeffs": [c0, c1, ...]}
inline void to_json(nlohmann::json& j, const Polynomial& p) {
  j = nlohmann::json{{"coeffs", std::vector<double>(p.coeffs().begin(), p.coeffs().end())}};
}

inline void from_json(const nlohmann::json& j, Polynomial& p) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
    throw std::invalid_argument("polynomial JSON: expected {\"coeffs\": [c0, ...]}");
  std::vector<double> c;
  for (const auto& v : j["coeffs"]) c.push_back(detail::finite_number(v, "polynomial JSON"));
  p = Polynomial(std::move(c));
}

// {"n": k, "rows": [[...], ...]}, full square
inline void to_json(nlohmann::json& j, const SymMatrix& m) { j = nlohmann::json{{"n", m.dim()}, {"rows", m.rows()}}; }

inline void from_json(const nlohmann::json& j, SymMatrix& m) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
    throw std::invalid_argument("matrix JSON: expected {\"n\": k, \"rows\": [...]}");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["rows"]) {
    if (!row.is_array()) throw std::invalid_argument("matrix JSON: rows must be arrays");
    auto& r = rows.emplace_back();
    for (const auto& v : row) r.push_back(detail::finite_number(v, "matrix JSON"));
  }
  if (j.contains("n") && j["n"].get<std::size_t>() != rows.size())
    throw std::invalid_argument("matrix JSON: n does not match the number of rows");
  m = SymMatrix::from_rows(rows, 1e-12);
}

inline void to_json(nlohmann::json& j, const GramParam& gp) {
  j = nlohmann::json{{"sigma", gp.sigma}, {"G", gp.base}, {"basis", gp.basis}, {"source", gp.source}};
}

inline void to_json(nlohmann::json& j, const PsdSplit& s) {
  j = nlohmann::json{{"alpha", s.alpha},
                     {"U", s.U},
                     {"V", s.V},
                     {"method", to_string(s.method)},
                     {"objective", to_string(s.objective)},
                     {"objective_value", s.objective_value},
                     {"feas_residual", s.feas_residual},
                     {"min_eig_U", s.min_eig_U},
                     {"min_eig_V", s.min_eig_V},
                     {"iterations", s.iterations},
                     {"primal_residual", s.primal_residual},
                     {"dual_residual", s.dual_residual},
                     {"cap_reached", s.cap_reached}};
}

inline void to_json(nlohmann::json& j, const MonotonicityCertificate& c) {
  j = nlohmann::json{{"direction", to_string(c.direction)}, {"alpha", c.alpha}, {"gram", c.gram}, {"min_eig", c.min_eig}};
}

inline void to_json(nlohmann::json& j, const ValidationReport& v) {
  j = nlohmann::json{{"ok", v.ok()},
                     {"embedding_ok", v.embedding_ok},
                     {"increasing_ok", v.increasing_ok},
                     {"decreasing_ok", v.decreasing_ok},
                     {"embedding_residual", v.embedding_residual},
                     {"min_dq", v.min_dq},
                     {"min_dr", v.min_dr},
                     {"witness_U_min_eig", v.witness_U_min_eig ? nlohmann::json(*v.witness_U_min_eig) : nlohmann::json()},
                     {"witness_V_min_eig", v.witness_V_min_eig ? nlohmann::json(*v.witness_V_min_eig) : nlohmann::json()}};
}

/// Decomposition plus its validation report. U and V are the PSD witnesses,
/// null when none is known.
inline nlohmann::json decomposition_json(const DecompositionFunction& df, const ValidationReport& rep) {
  nlohmann::json j{{"method", df.method}, {"source", df.source}, {"q", df.q}, {"r", df.r}, {"validation", rep}};
  j["U"] = df.witness_U ? nlohmann::json(*df.witness_U) : nlohmann::json();
  j["V"] = df.witness_V ? nlohmann::json(*df.witness_V) : nlohmann::json();
  if (df.split) {
    j["alpha"] = df.split->alpha;
    j["objective"] = to_string(df.split->objective);
    j["objective_value"] = df.split->objective_value;
    j["residuals"] = {{"feasibility", df.split->feas_residual},
                      {"primal", df.split->primal_residual},
                      {"dual", df.split->dual_residual}};
    j["iterations"] = df.split->iterations;
    j["cap_reached"] = df.split->cap_reached;
  } else {
    j["alpha"] = nlohmann::json::array();
  }
  return j;
}

// {"f": {"coeffs": ...}, "u": [lo, hi], "x0": [lo, hi], "steps": N}
inline void to_json(nlohmann::json& j, const ReachSpec& s) {
  j = nlohmann::json{{"f", s.f},
                     {"u", {s.u_bounds.lo, s.u_bounds.hi}},
                     {"x0", {s.x0_bounds.lo, s.x0_bounds.hi}},
                     {"steps", s.steps}};
}

inline void from_json(const nlohmann::json& j, ReachSpec& s) {
  if (!j.is_object()) throw std::invalid_argument("reach spec JSON: expected an object");
  for (const char* key : {"f", "u", "x0", "steps"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("reach spec JSON: missing \"") + key + "\"");
  s.f = j["f"].get<Polynomial>();
  s.u_bounds = detail::interval_from_json(j["u"], "reach spec JSON u");
  s.x0_bounds = detail::interval_from_json(j["x0"], "reach spec JSON x0");
  if (!j["steps"].is_number_integer()) throw std::invalid_argument("reach spec JSON: steps must be an integer");
  s.steps = j["steps"].get<int>();
  s.check();
}

}  // namespace polymono
