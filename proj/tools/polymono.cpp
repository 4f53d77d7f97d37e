// polymono: command-line front end for the polymono library.
//
// Exit codes: 0 success, 2 usage or parse error, 3 validation failure,
// 4 solver iteration cap reached (output is still written).

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "polymono/json.hpp"
#include "polymono/polymono.hpp"

namespace {

using nlohmann::json;
using namespace polymono;

enum ExitCode : int { kOk = 0, kUsage = 2, kValidation = 3, kSolverCap = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- logging ---------------------------------------------------------------

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("POLYMONO_LOG");
    if (env == nullptr) return LogLevel::error;
    const std::string_view s(env);
    if (s == "debug") return LogLevel::debug;
    if (s == "info") return LogLevel::info;
    return LogLevel::error;
  }();
  return level;
}

void log(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  static constexpr const char* kNames[] = {"error", "info", "debug"};
  std::cerr << "polymono [" << kNames[static_cast<int>(level)] << "] " << msg << '\n';
}

// ---- options ---------------------------------------------------------------

struct Config {
  std::string poly;
  std::string poly_file;
  std::string json_out;
  std::string csv_out;
  std::string objective = "frobenius";
  std::vector<double> range{-1.0, 1.0};
  std::vector<double> offsets{0.25, 0.3};
  std::size_t grid = 201;
  std::vector<std::string> methods{"frobenius", "jacobian", "tight"};
  std::vector<double> jacobian_domain;
  std::string spec_file;
  int steps = 10;
  int samples = 1000;
  std::uint64_t seed = 0;
  std::vector<double> u{0.0, 0.0};
  std::vector<double> x0{0.0, 0.0};
  std::string traj_csv;
};

CLI::Option* add_poly_options(CLI::App& cmd, Config& cfg) {
  auto* poly = cmd.add_option("--poly", cfg.poly, "Polynomial, e.g. \"0.7*x + 0.32*x^2\"");
  auto* file = cmd.add_option("--poly-file", cfg.poly_file, "JSON file {\"coeffs\": [c0, c1, ...]}");
  poly->excludes(file);
  return poly;
}

void add_output_options(CLI::App& cmd, Config& cfg, bool with_csv) {
  cmd.add_option("--json-out", cfg.json_out, "Write JSON here instead of stdout");
  if (with_csv) cmd.add_option("--csv-out", cfg.csv_out, "Write CSV data here");
}

void require_finite(const std::vector<double>& v, const char* flag) {
  for (double x : v)
    if (!std::isfinite(x)) throw UsageError(std::string(flag) + ": values must be finite");
}

Polynomial read_polynomial(const Config& cfg) {
  if (cfg.poly.empty() == cfg.poly_file.empty()) throw UsageError("exactly one of --poly or --poly-file is required");
  if (!cfg.poly.empty()) {
    try {
      return parse_polynomial(cfg.poly);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--poly: ") + e.what());
    }
  }
  std::ifstream in(cfg.poly_file);
  if (!in) throw UsageError("--poly-file: cannot open " + cfg.poly_file);
  try {
    return json::parse(in).get<Polynomial>();
  } catch (const std::exception& e) {
    throw UsageError(std::string("--poly-file: ") + e.what());
  }
}

void emit_json(const Config& cfg, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.json_out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.json_out);
  if (!out) throw std::runtime_error("cannot write " + cfg.json_out);
  out << text;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// data.csv + "jacobian" -> data_jacobian.csv
std::string suffixed_path(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + tag + p.extension().string())).string();
}

DecompositionMethod method_or_throw(const std::string& name) {
  auto m = parse_decomposition_method(name);
  if (!m) throw UsageError("unknown objective '" + name + "' (frobenius, one-norm, one-norm-entrywise, eigen)");
  return *m;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---- subcommands -----------------------------------------------------------

int cmd_gram(const Config& cfg) {
  const Polynomial p = read_polynomial(cfg);
  const GramParam gp = make_gram_param(derivative(p));
  log(LogLevel::info, "sigma " + std::to_string(gp.sigma) + ", " + std::to_string(gp.num_params()) + " null-space parameters");
  emit_json(cfg, json{{"sigma", gp.sigma}, {"G", gp.base}, {"basis", gp.basis}, {"m", gp.num_params()}, {"pprime", gp.source}});
  return kOk;
}

int decomposition_status(const DecompositionFunction& df, const ValidationReport& rep) {
  if (!rep.ok()) {
    log(LogLevel::error, df.method + " decomposition failed validation");
    return kValidation;
  }
  if (df.split && df.split->cap_reached) {
    log(LogLevel::error, df.method + " split hit the iteration cap");
    return kSolverCap;
  }
  return kOk;
}

int cmd_decompose(const Config& cfg) {
  const Polynomial p = read_polynomial(cfg);
  const DecompositionMethod method = method_or_throw(cfg.objective);
  const DecompositionFunction df = decompose(p, method);
  const ValidationReport rep = validate(df);
  if (df.split)
    log(LogLevel::info, "objective " + fmt(df.split->objective_value) + " after " +
                            std::to_string(df.split->iterations) + " iterations");
  emit_json(cfg, decomposition_json(df, rep));
  return decomposition_status(df, rep);
}

int cmd_check_monotone(const Config& cfg) {
  const Polynomial p = read_polynomial(cfg);
  const GramParam gp = make_gram_param(derivative(p));
  std::optional<MonotonicityCertificate> cert = certify_monotone(gp, Direction::increasing);
  if (!cert) cert = certify_monotone(gp, Direction::decreasing);
  json j{{"source", p}, {"sigma", gp.sigma}};
  j["monotone"] = cert.has_value();
  j["certificate"] = cert ? json(*cert) : json();
  log(LogLevel::info, cert ? std::string("certified ") + std::string(to_string(cert->direction)) : "no certificate found");
  emit_json(cfg, j);
  return kOk;
}

struct ProfiledMethod {
  std::string name;
  WidthProfile profile;
  json info;
  int status = kOk;
};

int cmd_tightness(const Config& cfg) {
  const Polynomial p = read_polynomial(cfg);
  require_finite(cfg.range, "--range");
  require_finite(cfg.offsets, "--offsets");
  require_finite(cfg.jacobian_domain, "--jacobian-domain");
  const double z_lo = cfg.range[0], z_hi = cfg.range[1];
  const double a = cfg.offsets[0], b = cfg.offsets[1];
  if (!(z_lo < z_hi)) throw UsageError("--range: need lo < hi");
  if (!(a > -b)) throw UsageError("--offsets: need a > -b");
  if (cfg.grid < 2) throw UsageError("--grid: need at least 2 points");
  if (cfg.methods.empty()) throw UsageError("--methods: list at least one method");

  std::vector<ProfiledMethod> runs;
  for (const std::string& name : cfg.methods) {
    ProfiledMethod run;
    run.name = name;
    if (name == "tight") {
      run.profile = width_profile(TightEnvelope{p}, z_lo, z_hi, a, b, cfg.grid);
    } else if (name == "jacobian") {
      Interval dom(z_lo - b, z_hi + a);
      if (!cfg.jacobian_domain.empty()) dom = Interval(cfg.jacobian_domain[0], cfg.jacobian_domain[1]);
      const JacobianDecomposition jd = jacobian_decomposition(p, dom);
      run.profile = width_profile(jd, z_lo, z_hi, a, b, cfg.grid);
      run.info = {{"L", jd.L}, {"domain", {dom.lo, dom.hi}}};
    } else {
      const DecompositionFunction df = decompose(p, method_or_throw(name));
      const ValidationReport rep = validate(df);
      run.profile = width_profile(df, z_lo, z_hi, a, b, cfg.grid);
      run.info = {{"q", df.q}, {"r", df.r}, {"validation", rep}};
      if (df.split) run.info["alpha"] = df.split->alpha;
      run.status = decomposition_status(df, rep);
    }
    log(LogLevel::info, name + ": min width " + fmt(run.profile.min_width()));
    runs.push_back(std::move(run));
  }

  if (!cfg.csv_out.empty()) {
    for (const auto& run : runs) {
      const std::string path = runs.size() == 1 ? cfg.csv_out : suffixed_path(cfg.csv_out, run.name);
      auto out = open_out(path);
      write_csv(out, run.profile);
      log(LogLevel::debug, "wrote " + path);
    }
  }

  json methods = json::array();
  int status = kOk;
  for (const auto& run : runs) {
    double max_w = run.profile.rows.front().width, sum_w = 0.0;
    for (const auto& r : run.profile.rows) {
      max_w = std::max(max_w, r.width);
      sum_w += r.width;
    }
    json m{{"name", run.name},
           {"min_width", run.profile.min_width()},
           {"max_width", max_w},
           {"mean_width", sum_w / static_cast<double>(run.profile.size())}};
    if (!run.info.is_null()) m.update(run.info);
    methods.push_back(std::move(m));
    if (run.status != kOk && status == kOk) status = run.status;
  }
  json dominance = json::array();
  for (const auto& inner : runs)
    for (const auto& outer : runs) {
      if (&inner == &outer) continue;
      const DominanceReport rep = compare(inner.profile, outer.profile);
      dominance.push_back({{"inner", inner.name},
                           {"outer", outer.name},
                           {"fraction_inside", rep.fraction_inside},
                           {"mean_width_ratio", rep.mean_width_ratio}});
    }
  emit_json(cfg, json{{"source", p},
                      {"range", {z_lo, z_hi}},
                      {"offsets", {a, b}},
                      {"grid", cfg.grid},
                      {"methods", methods},
                      {"dominance", dominance}});
  return status;
}

ReachSpec read_reach_spec(const Config& cfg) {
  if (!cfg.spec_file.empty()) {
    if (!cfg.poly.empty() || !cfg.poly_file.empty()) throw UsageError("--spec-file excludes --poly and --poly-file");
    std::ifstream in(cfg.spec_file);
    if (!in) throw UsageError("--spec-file: cannot open " + cfg.spec_file);
    try {
      return json::parse(in).get<ReachSpec>();
    } catch (const std::exception& e) {
      throw UsageError(std::string("--spec-file: ") + e.what());
    }
  }
  require_finite(cfg.u, "--u");
  require_finite(cfg.x0, "--x0");
  if (cfg.u[0] > cfg.u[1]) throw UsageError("--u: need lo <= hi");
  if (cfg.x0[0] > cfg.x0[1]) throw UsageError("--x0: need lo <= hi");
  if (cfg.steps < 1) throw UsageError("--steps: need N >= 1");
  return ReachSpec{read_polynomial(cfg), Interval(cfg.u[0], cfg.u[1]), Interval(cfg.x0[0], cfg.x0[1]), cfg.steps};
}

int cmd_reach(const Config& cfg) {
  const ReachSpec spec = read_reach_spec(cfg);
  if (cfg.samples < 1) throw UsageError("--samples: need at least 1");
  const DecompositionFunction df = decompose(spec.f, method_or_throw(cfg.objective));
  const ValidationReport rep = validate(df);
  int status = decomposition_status(df, rep);

  const ReachTube tube = propagate_embedding(df, spec);
  if (tube.truncated) log(LogLevel::info, "tube overflowed after step " + std::to_string(tube.bounds.size() - 1));
  const auto trajectories = sample_trajectories(spec, cfg.samples, cfg.seed);
  const ContainmentReport cont = containment_report(tube, trajectories);
  if (cont.total_violations > 0) {
    log(LogLevel::error, std::to_string(cont.total_violations) + " sampled states fall outside the tube");
    if (status == kOk) status = kValidation;
  }

  if (!cfg.csv_out.empty()) {
    auto out = open_out(cfg.csv_out);
    out << "k,x_lo,x_hi\n";
    for (std::size_t k = 0; k < tube.bounds.size(); ++k)
      out << k << ',' << fmt(tube.bounds[k].lo) << ',' << fmt(tube.bounds[k].hi) << '\n';
  }
  if (!cfg.traj_csv.empty()) {
    auto out = open_out(cfg.traj_csv);
    out << "sample,k,x\n";
    for (std::size_t i = 0; i < trajectories.size(); ++i)
      for (std::size_t k = 0; k < trajectories[i].size(); ++k) out << i << ',' << k << ',' << fmt(trajectories[i][k]) << '\n';
  }

  json steps = json::array();
  for (std::size_t k = 0; k < tube.bounds.size(); ++k) {
    const double ratio = cont.tightness_ratio[k];
    steps.push_back({{"k", k},
                     {"x_lo", tube.bounds[k].lo},
                     {"x_hi", tube.bounds[k].hi},
                     {"violations", cont.violations[k]},
                     {"tightness_ratio", std::isnan(ratio) ? json() : json(ratio)}});
  }
  emit_json(cfg, json{{"spec", spec},
                      {"decomposition", decomposition_json(df, rep)},
                      {"samples", cfg.samples},
                      {"seed", cfg.seed},
                      {"truncated", tube.truncated},
                      {"total_violations", cont.total_violations},
                      {"tube", steps}});
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global mixed-monotone decompositions of univariate polynomials"};
  app.require_subcommand(1);
  Config cfg;

  auto* gram = app.add_subcommand("gram", "Gram matrix parameterization of p'");
  add_poly_options(*gram, cfg);
  add_output_options(*gram, cfg, false);

  auto* dec = app.add_subcommand("decompose", "Decomposition g(x, y) = q(x) - r(y) with validation");
  add_poly_options(*dec, cfg);
  add_output_options(*dec, cfg, false);
  dec->add_option("--objective", cfg.objective, "frobenius | one-norm | one-norm-entrywise | eigen")->capture_default_str();

  auto* mono = app.add_subcommand("check-monotone", "Search for a PSD certificate that p is monotone");
  add_poly_options(*mono, cfg);
  add_output_options(*mono, cfg, false);

  auto* tight = app.add_subcommand("tightness", "Width profiles and dominance between decompositions");
  add_poly_options(*tight, cfg);
  add_output_options(*tight, cfg, true);
  tight->add_option("--range", cfg.range, "z-grid range: lo hi")->expected(2)->capture_default_str();
  tight->add_option("--offsets", cfg.offsets, "offsets a b: intervals [z - b, z + a]")->expected(2)->capture_default_str();
  tight->add_option("--grid", cfg.grid, "number of grid points")->capture_default_str();
  tight->add_option("--methods", cfg.methods, "frobenius, one-norm, one-norm-entrywise, eigen, jacobian, tight")
      ->delimiter(',')
      ->capture_default_str();
  tight->add_option("--jacobian-domain", cfg.jacobian_domain, "domain for the jacobian bound (default: [lo - b, hi + a])")
      ->expected(2);

  auto* reach = app.add_subcommand("reach", "Interval tube for x+ = f(x) + u and sampled trajectories");
  add_poly_options(*reach, cfg);
  add_output_options(*reach, cfg, true);
  reach->add_option("--spec-file", cfg.spec_file, "JSON {\"f\": {...}, \"u\": [lo, hi], \"x0\": [lo, hi], \"steps\": N}");
  reach->add_option("--objective", cfg.objective, "decomposition objective")->capture_default_str();
  reach->add_option("--steps", cfg.steps, "horizon N")->capture_default_str();
  reach->add_option("--u", cfg.u, "input bounds: lo hi")->expected(2)->capture_default_str();
  reach->add_option("--x0", cfg.x0, "initial-state bounds: lo hi")->expected(2)->capture_default_str();
  reach->add_option("--samples", cfg.samples, "number of sampled trajectories")->capture_default_str();
  reach->add_option("--seed", cfg.seed, "trajectory sampler seed")->capture_default_str();
  reach->add_option("--traj-csv", cfg.traj_csv, "write sampled trajectories (sample,k,x) here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gram->parsed()) return cmd_gram(cfg);
    if (dec->parsed()) return cmd_decompose(cfg);
    if (mono->parsed()) return cmd_check_monotone(cfg);
    if (tight->parsed()) return cmd_tightness(cfg);
    if (reach->parsed()) return cmd_reach(cfg);
  } catch (const UsageError& e) {
    log(LogLevel::error, e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    log(LogLevel::error, e.what());
    return kUsage;
  } catch (const std::exception& e) {
    log(LogLevel::error, e.what());
    return 1;
  }
  return kUsage;
}
