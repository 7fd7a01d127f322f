// tests/posterior-test.cc

// Copyright 2026  uncse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "statmodel/mmse-oracle.h"
#include "statmodel/posterior.h"

namespace uncse {
namespace {

TEST(PosteriorTest, WienerGainAndVariance) {
  EXPECT_EQ(WienerGain({1.0, 1.0}), 0.5);
  EXPECT_EQ(PosteriorVariance({1.0, 1.0}), 0.5);
  EXPECT_DOUBLE_EQ(WienerGain({3.0, 1.0}), 0.75);
  EXPECT_DOUBLE_EQ(PosteriorVariance({3.0, 1.0}), 0.75);
  EXPECT_EQ(WienerGain({0.0, 2.0}), 0.0);
  EXPECT_EQ(PosteriorVariance({0.0, 2.0}), 0.0);
  EXPECT_THROW(WienerGain({-1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(WienerGain({0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(PosteriorVariance({1.0, -1.0}), std::invalid_argument);
}

TEST(PosteriorTest, AmapEqualsWienerWithoutUncertainty) {
  for (double wf = 0.0; wf <= 1.0; wf += 0.05)
    for (double x : {1e-6, 0.01, 0.3, 1.0, 17.0, 1e4})
      EXPECT_EQ(AmapGain(wf, 0.0, x), wf) << wf << " " << x;
}

TEST(PosteriorTest, AmapMonotonicity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double wf = u(rng), lam = 2.0 * u(rng) + 1e-3, x = 5.0 * u(rng) + 1e-3;
    const double g = AmapGain(wf, lam, x);
    EXPECT_GE(AmapGain(wf, lam * (1.0 + u(rng)), x), g);
    EXPECT_LE(AmapGain(wf, lam, x * (1.0 + u(rng))), g);
    EXPECT_GE(g, wf);
  }
}

TEST(PosteriorTest, AmapConvergesToWienerForLargeInputs) {
  for (double wf : {0.1, 0.5, 0.9})
    for (double lam : {0.01, 0.1, 1.0, 10.0})
      EXPECT_LT(AmapGain(wf, lam, 1e3 * std::sqrt(lam)) - wf, 1e-3);
}

// Unit speech and noise variances: AMAP exceeds WF for small inputs and
// approaches it for large ones.
TEST(PosteriorTest, InputOutputCharacteristicShape) {
  const double wf = WienerGain({1.0, 1.0});
  const double lam = PosteriorVariance({1.0, 1.0});
  EXPECT_GT(AmapGain(wf, lam, 0.1), 2.0 * wf);
  double prev = AmapGain(wf, lam, 0.1);
  for (double x = 0.2; x <= 100.0; x *= 1.5) {
    const double g = AmapGain(wf, lam, x);
    EXPECT_LT(g, prev);
    prev = g;
  }
  EXPECT_LT(prev - wf, 1e-2);
}

TEST(PosteriorTest, MagnitudeFloorKeepsGainFinite) {
  const double g = AmapGain(0.5, 0.1, 0.0);
  EXPECT_TRUE(std::isfinite(g));
  EXPECT_EQ(g, AmapGain(0.5, 0.1, kMagnitudeFloor));
}

TEST(PosteriorTest, AmapGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double wf = 0.05 + 0.9 * u(rng), lam = 0.01 + u(rng), x = 0.05 + 3 * u(rng);
    const AmapGainGrad g = AmapGainWithGrad(wf, lam, x);
    EXPECT_DOUBLE_EQ(g.gain, AmapGain(wf, lam, x));
    const double dw = (AmapGain(wf + h, lam, x) - AmapGain(wf - h, lam, x)) / (2 * h);
    const double dl = (AmapGain(wf, lam + h, x) - AmapGain(wf, lam - h, x)) / (2 * h);
    EXPECT_NEAR(g.d_wiener, dw, 1e-7 * std::max(1.0, std::fabs(dw)));
    EXPECT_NEAR(g.d_variance, dl, 1e-6 * std::max(1.0, std::fabs(dl)));
  }
}

TEST(PosteriorTest, FieldCheck) {
  PosteriorField f;
  f.wiener = RealGrid::Constant(2, 3, 0.5);
  f.variance = RealGrid::Constant(2, 3, 0.1);
  EXPECT_NO_THROW(f.Check());
  f.wiener(1, 1) = 1.5;
  EXPECT_THROW(f.Check(), std::invalid_argument);
  f.wiener(1, 1) = 0.5;
  f.variance(0, 2) = -1.0;
  EXPECT_THROW(f.Check(), std::invalid_argument);
}

TEST(PosteriorTest, ApplyMaskScalesCoefficients) {
  ComplexSpectrogram x;
  x.config = StftConfig{4, 2};
  x.coeffs.resize(1, 3);
  x.coeffs << Complex(1, 2), Complex(-3, 0.5), Complex(0, 0);
  RealGrid g(1, 3);
  g << 0.5, 0.0, 1.0;
  const ComplexSpectrogram y = ApplyMask(x, g);
  EXPECT_EQ(y.coeffs(0, 0), Complex(0.5, 1.0));
  EXPECT_EQ(y.coeffs(0, 1), Complex(0.0, 0.0));
  EXPECT_EQ(y.coeffs(0, 2), Complex(0.0, 0.0));
}

// Analytic risk of a gain g under the complex Gaussian model:
// E|S - g X|^2 = s - 2 g s + g^2 (s + n).
TEST(MmseOracleTest, RiskMatchesClosedForm) {
  const GaussianPrior prior{3.0, 1.0};
  std::vector<double> gains;
  for (int i = 0; i <= 20; ++i) gains.push_back(0.05 * i);
  const RiskTable table = MmseRiskOracle(prior, 200000, gains, 7);
  for (size_t i = 0; i < gains.size(); ++i) {
    const double g = gains[i];
    const double exact = 3.0 - 6.0 * g + 4.0 * g * g;
    EXPECT_NEAR(table.mse[i], exact, 5.0 * table.mse_stderr[i] + 1e-12);
  }
  EXPECT_DOUBLE_EQ(table.gains[table.ArgMin()], 0.75);
  EXPECT_NEAR(table.residual_variance, 0.75, 0.02);
}

TEST(MmseOracleTest, UnitPriorMinimisedAtHalf) {
  std::vector<double> gains;
  for (int i = 0; i <= 10; ++i) gains.push_back(0.1 * i);
  const RiskTable table = MmseRiskOracle({1.0, 1.0}, 1000000, gains, 3);
  EXPECT_DOUBLE_EQ(table.gains[table.ArgMin()], 0.5);
  EXPECT_NEAR(table.residual_variance, 0.5, 0.005);
}

TEST(MmseOracleTest, RejectsSmallSampleCounts) {
  EXPECT_THROW(MmseRiskOracle({1.0, 1.0}, 1000, {0.5}, 1), std::invalid_argument);
}

TEST(MmseOracleTest, SeedReproducible) {
  const RiskTable a = MmseRiskOracle({1.0, 2.0}, 100000, {0.2, 0.4}, 9);
  const RiskTable b = MmseRiskOracle({1.0, 2.0}, 100000, {0.2, 0.4}, 9);
  EXPECT_EQ(a.mse, b.mse);
  EXPECT_EQ(a.residual_variance, b.residual_variance);
}

}  // namespace
}  // namespace uncse
