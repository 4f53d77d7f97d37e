#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cli_runner.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("polymono_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json run_json(const std::string& args, int expected_code = 0) {
  const auto r = cli::run(args);
  EXPECT_EQ(r.code, expected_code) << args;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, GramExamples) {
  const json a = run_json("gram --poly 'x^2+1'");
  EXPECT_EQ(a["sigma"], 1);
  EXPECT_EQ(a["G"]["rows"], json::parse("[[0.0,1.0],[1.0,0.0]]"));
  EXPECT_TRUE(a["basis"].empty());

  const json b = run_json("gram --poly 5");
  EXPECT_EQ(b["sigma"], 0);
  EXPECT_EQ(b["G"]["rows"], json::parse("[[0.0]]"));

  const json c = run_json("gram --poly '35/8*x^4-15/4*x^2+3/8'");
  EXPECT_EQ(c["sigma"], 2);
  EXPECT_EQ(c["basis"].size(), 1u);
}

TEST(Cli, DecomposeObjectives) {
  for (const char* obj : {"frobenius", "one-norm", "one-norm-entrywise", "eigen"}) {
    const json j = run_json(std::string("decompose --poly '35/8*x^4-15/4*x^2+3/8' --objective ") + obj);
    EXPECT_EQ(j["method"], obj);
    EXPECT_TRUE(j["validation"]["ok"].get<bool>());
    EXPECT_EQ(j["alpha"].size(), 1u);
    EXPECT_LE(std::abs(j["alpha"][0].get<double>()), 1e-3);
  }
}

TEST(Cli, DecomposeConstant) {
  const json j = run_json("decompose --poly 5");
  EXPECT_EQ(j["q"]["coeffs"], json::parse("[5.0]"));
  EXPECT_EQ(j["r"]["coeffs"], json::parse("[0.0]"));
}

TEST(Cli, CheckMonotone) {
  const json p3 = run_json("check-monotone --poly '1/5*x^5-2*x^2+3*x'");
  EXPECT_TRUE(p3["monotone"].get<bool>());
  EXPECT_EQ(p3["certificate"]["direction"], "increasing");
  EXPECT_EQ(run_json("check-monotone --poly 'x^3'")["certificate"]["direction"], "increasing");
  const json sq = run_json("check-monotone --poly 'x^2'");
  EXPECT_FALSE(sq["monotone"].get<bool>());
  EXPECT_TRUE(sq["certificate"].is_null());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli::run("gram --poly 'x^-1'").code, 2);
  EXPECT_EQ(cli::run("gram").code, 2);
  EXPECT_EQ(cli::run("frobnicate").code, 2);
  EXPECT_EQ(cli::run("").code, 2);
  EXPECT_EQ(cli::run("gram --poly x --poly-file nowhere.json").code, 2);
  EXPECT_EQ(cli::run("decompose --poly x --objective l2").code, 2);
  EXPECT_EQ(cli::run("tightness --poly x --range 1 0").code, 2);
  EXPECT_EQ(cli::run("tightness --poly x --range 0 inf").code, 2);
  EXPECT_EQ(cli::run("reach --poly x --steps 0").code, 2);
  EXPECT_EQ(cli::run("reach --poly x --u 1 0").code, 2);
  EXPECT_EQ(cli::run("gram --poly-file /nonexistent/p.json").code, 2);
  EXPECT_EQ(cli::run("--help").code, 0);
}

TEST(Cli, PolyFileAndJsonOut) {
  const fs::path dir = scratch_dir();
  {
    std::ofstream(dir / "p.json") << R"({"coeffs": [1, 0, 1]})";
  }
  const auto r = cli::run("decompose --poly-file '" + (dir / "p.json").string() + "' --json-out '" +
                          (dir / "out.json").string() + "'");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const json j = json::parse(slurp(dir / "out.json"));
  EXPECT_NEAR(j["q"]["coeffs"][3].get<double>(), 1.0 / 6.0, 1e-9);
  fs::remove_all(dir);
}

TEST(Cli, TightnessWritesCsvPerMethod) {
  const fs::path dir = scratch_dir();
  const auto r = cli::run("tightness --poly 'x^2+1' --range -1 1 --offsets 1 0.5 --grid 201 --methods frobenius,jacobian "
                          "--csv-out '" + (dir / "fig2.csv").string() + "'");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j["dominance"].size(), 2u);
  EXPECT_EQ(j["dominance"][0]["inner"], "frobenius");
  EXPECT_EQ(j["dominance"][0]["fraction_inside"], 1.0);
  EXPECT_EQ(j["methods"][1]["L"], 4.0);
  const std::string csv = slurp(dir / "fig2_frobenius.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "z,g_hi,g_lo,width");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 202);
  EXPECT_TRUE(fs::exists(dir / "fig2_jacobian.csv"));
  fs::remove_all(dir);
}

TEST(Cli, ReachCsvAndDeterminism) {
  const fs::path dir = scratch_dir();
  const std::string base = "reach --poly '0.7*x+0.32*x^2' --u -0.1 0.1 --x0 0 0 --steps 2 --samples 20 --seed 5 ";
  const auto a = cli::run(base + "--csv-out '" + (dir / "tube.csv").string() + "' --traj-csv '" +
                          (dir / "traj.csv").string() + "'");
  ASSERT_EQ(a.code, 0);
  const std::string tube = slurp(dir / "tube.csv");
  EXPECT_EQ(tube.substr(0, tube.find('\n')), "k,x_lo,x_hi");
  EXPECT_NE(tube.find("1,-0.1,0.1\n"), std::string::npos);
  const std::string traj = slurp(dir / "traj.csv");
  EXPECT_EQ(traj.substr(0, traj.find('\n')), "sample,k,x");
  EXPECT_EQ(std::count(traj.begin(), traj.end(), '\n'), 1 + 20 * 3);

  const auto b = cli::run(base);
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(b.out);
  EXPECT_EQ(j["total_violations"], 0);
  EXPECT_NEAR(j["tube"][2]["x_hi"].get<double>(), 0.17653, 1e-4);
  fs::remove_all(dir);
}

TEST(Cli, ReachSpecFile) {
  const fs::path dir = scratch_dir();
  {
    std::ofstream(dir / "spec.json") << R"({"f":{"coeffs":[0,0.7,0.32]},"u":[0,0],"x0":[0.2,0.2],"steps":4})";
  }
  const json j = run_json("reach --spec-file '" + (dir / "spec.json").string() + "' --samples 5");
  double x = 0.2;
  for (int k = 0; k <= 4; ++k) {
    EXPECT_NEAR(j["tube"][k]["x_lo"].get<double>(), x, 1e-12);
    EXPECT_NEAR(j["tube"][k]["x_hi"].get<double>(), x, 1e-12);
    x = 0.7 * x + 0.32 * x * x;
  }
  EXPECT_EQ(cli::run("reach --spec-file '" + (dir / "spec.json").string() + "' --poly x").code, 2);
  fs::remove_all(dir);
}
