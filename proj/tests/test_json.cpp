#include <gtest/gtest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "polymono/json.hpp"
#include "polymono/reference.hpp"

using nlohmann::json;
using polymono::Polynomial;
using polymono::SymMatrix;

TEST(Json, PolynomialRoundTrip) {
  const Polynomial p{0.0, 0.7, 0.32};
  const json j = p;
  EXPECT_EQ(j.dump(), R"({"coeffs":[0.0,0.7,0.32]})");
  EXPECT_EQ(j.get<Polynomial>(), p);

  std::mt19937_64 rng(81);
  for (int t = 0; t < 200; ++t) {
    const Polynomial q = oracle::random_polynomial(rng, 9, 1e3);
    EXPECT_EQ(json::parse(json(q).dump()).get<Polynomial>(), q);
  }
}

TEST(Json, PolynomialRejectsMalformed) {
  EXPECT_THROW(json::parse(R"({"coeffs":[]})").get<Polynomial>(), std::invalid_argument);
  EXPECT_THROW(json::parse(R"({"coeffs":["1"]})").get<Polynomial>(), std::invalid_argument);
  EXPECT_THROW(json::parse(R"([1, 2])").get<Polynomial>(), std::invalid_argument);
}

TEST(Json, SymMatrixRoundTripAndValidation) {
  const SymMatrix m = SymMatrix::from_rows({{1.0, -2.0}, {-2.0, 0.5}});
  const json j = m;
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j.get<SymMatrix>(), m);
  EXPECT_THROW(json::parse(R"({"n":2,"rows":[[1,2],[3,1]]})").get<SymMatrix>(), std::invalid_argument);
  EXPECT_THROW(json::parse(R"({"n":3,"rows":[[1,2],[2,1]]})").get<SymMatrix>(), std::invalid_argument);
  const auto near = json::parse(R"({"n":2,"rows":[[1,2],[2.0000000000001,1]]})").get<SymMatrix>();
  EXPECT_EQ(near(0, 1), near(1, 0));
}

TEST(Json, DecompositionDocument) {
  const auto df = polymono::decompose(polymono::reference::square_plus_one());
  const json j = polymono::decomposition_json(df, polymono::validate(df));
  for (const char* key : {"method", "q", "r", "alpha", "U", "V", "validation", "objective_value", "residuals"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["method"], "frobenius");
  EXPECT_TRUE(j["validation"]["ok"].get<bool>());
  EXPECT_EQ(j["U"]["n"], 2);
  EXPECT_TRUE(j["alpha"].is_array());

  const auto printed = polymono::reference::quadratic_map_frobenius();
  const json k = polymono::decomposition_json(printed, polymono::validate(printed));
  EXPECT_TRUE(k["U"].is_null());
  EXPECT_FALSE(k["validation"]["ok"].get<bool>());
}

TEST(Json, ReachSpecRoundTrip) {
  const polymono::ReachSpec spec{Polynomial{0.0, 0.7, 0.32}, polymono::Interval(-0.1, 0.1),
                                 polymono::Interval(0.0, 0.0), 10};
  const json j = spec;
  EXPECT_EQ(j.dump(), R"({"f":{"coeffs":[0.0,0.7,0.32]},"steps":10,"u":[-0.1,0.1],"x0":[0.0,0.0]})");
  const auto back = j.get<polymono::ReachSpec>();
  EXPECT_EQ(back.f, spec.f);
  EXPECT_EQ(back.steps, 10);
  EXPECT_EQ(back.u_bounds.lo, -0.1);

  EXPECT_THROW(json::parse(R"({"f":{"coeffs":[1]},"u":[1,0],"x0":[0,0],"steps":3})").get<polymono::ReachSpec>(),
               std::invalid_argument);
  EXPECT_THROW(json::parse(R"({"f":{"coeffs":[1]},"u":[0,0],"x0":[0,0],"steps":0})").get<polymono::ReachSpec>(),
               std::invalid_argument);
  EXPECT_THROW(json::parse(R"({"f":{"coeffs":[1]},"u":[0,0],"steps":2})").get<polymono::ReachSpec>(),
               std::invalid_argument);
}

TEST(Json, CertificateAndGram) {
  const auto gp = polymono::make_gram_param(Polynomial{3.0, -4.0, 0.0, 0.0, 1.0});
  const json g = gp;
  EXPECT_EQ(g["sigma"], 2);
  EXPECT_EQ(g["basis"].size(), 1u);
  const auto cert = polymono::certify_monotone(gp, polymono::Direction::increasing);
  ASSERT_TRUE(cert);
  const json c = *cert;
  EXPECT_EQ(c["direction"], "increasing");
  EXPECT_EQ(c["gram"]["n"], 3);
}
