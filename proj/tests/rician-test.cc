// tests/rician-test.cc

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

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/minima.hpp>
#include <gtest/gtest.h>

#include "statmodel/posterior.h"
#include "statmodel/rician.h"

namespace uncse {
namespace {

TEST(RicianTest, LogBesselMatchesBoost) {
  for (double z = 0.0; z < 700.0; z = z * 1.07 + 0.01) {
    const double expected = std::log(boost::math::cyl_bessel_i(0, z));
    EXPECT_NEAR(LogBesselI0(z), expected, 1e-13 * std::max(1.0, expected)) << z;
    EXPECT_NEAR(LogBesselI0Scaled(z), expected - z,
                1e-13 * std::max(1.0, expected)) << z;
  }
}

TEST(RicianTest, LogBesselLargeArgumentsStayFinite) {
  const double z = 1e6;
  EXPECT_TRUE(std::isfinite(LogBesselI0(z)));
  EXPECT_NEAR(LogBesselI0Scaled(z), -0.5 * std::log(2.0 * M_PI * z), 1e-6);
}

TEST(RicianTest, BranchesAgreeAtSeam) {
  const double z = kBesselSeriesLimit;
  EXPECT_NEAR(LogBesselI0ScaledSeries(z), LogBesselI0ScaledAsymptotic(z), 1e-10);
  EXPECT_NEAR(LogBesselI0Scaled(std::nextafter(z, 0.0)), LogBesselI0Scaled(z),
              1e-10);
}

// Trapezoidal quadrature of the density over a range covering its mass.
TEST(RicianTest, DensityNormalises) {
  for (double wf : {0.1, 0.5, 0.9})
    for (double lam : {0.01, 0.1, 0.5, 1.0})
      for (double x : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double hi = wf * x + 12.0 * std::sqrt(lam);
        const int n = 200000;
        const double h = hi / n;
        double sum = 0.0;
        for (int i = 1; i <= n; ++i) {
          const double p = std::exp(RicianLogPdf(i * h, wf, lam, x));
          sum += (i == n ? 0.5 : 1.0) * p;
        }
        EXPECT_NEAR(sum * h, 1.0, 1e-4) << wf << " " << lam << " " << x;
      }
}

TEST(RicianTest, LogPdfEdgeCases) {
  EXPECT_EQ(RicianLogPdf(0.0, 0.5, 0.1, 1.0), -INFINITY);
  EXPECT_THROW(RicianLogPdf(1.0, 0.5, 0.0, 1.0), std::invalid_argument);
}

TEST(RicianTest, BruteForceModeMatchesBrent) {
  for (double wf : {0.2, 0.6})
    for (double lam : {0.05, 0.5})
      for (double x : {0.5, 2.0}) {
        auto neg = [&](double m) { return -RicianLogPdf(m, wf, lam, x); };
        const auto best = boost::math::tools::brent_find_minima(
            neg, 1e-9, x + 6.0 * std::sqrt(lam), 40);
        EXPECT_NEAR(RicianMapBruteForce(wf, lam, x, 1e-5), best.first, 2e-5);
      }
}

TEST(RicianTest, BruteForceRejectsDegenerateGrid) {
  EXPECT_THROW(RicianMapBruteForce(0.5, 0.1, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(RicianMapBruteForce(0.5, 0.1, 1.0, 100.0), std::invalid_argument);
}

// The closed form approximates the Rician mode with relative error below the
// Rayleigh-limit bound 1 - 1/sqrt(2), and the error vanishes as the location
// term W |X| dominates sqrt(lambda).
TEST(RicianTest, AmapApproximatesMode) {
  const double rayleigh_bound = 1.0 - 1.0 / std::sqrt(2.0);
  for (double wf = 0.1; wf < 0.95; wf += 0.1)
    for (double lam : {0.01, 0.1, 0.5, 1.0})
      for (double x : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double mode = RicianMapBruteForce(wf, lam, x, 1e-4 * std::sqrt(lam));
        const double amap = AmapGain(wf, lam, x) * x;
        const double rel = std::fabs(amap - mode) / mode;
        EXPECT_LT(rel, rayleigh_bound) << wf << " " << lam << " " << x;
        if (wf * x > 10.0 * std::sqrt(lam)) {
          EXPECT_LT(rel, 0.01);
        }
      }
  const double mode = RicianMapBruteForce(0.5, 0.5, 1.0, 1e-5);
  EXPECT_LT(std::fabs(AmapGain(0.5, 0.5, 1.0) - mode) / mode, 0.1);
}

}  // namespace
}  // namespace uncse
