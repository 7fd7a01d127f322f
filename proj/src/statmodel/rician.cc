// src/statmodel/rician.cc

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

#include "statmodel/rician.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "base/common.h"

namespace uncse {

double LogBesselI0ScaledSeries(double z) {
  // I0(z) = sum_k (z^2/4)^k / (k!)^2; all terms positive.
  const double q = 0.25 * z * z;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::log(sum) - z;
}

double LogBesselI0ScaledAsymptotic(double z) {
  // I0(z) ~ e^z / sqrt(2 pi z) * sum_k ((2k-1)!!)^2 / (k! (8z)^k).
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (k * 8.0 * z);
    if (next >= term) break;  // series starts to diverge
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return -0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(sum);
}

double LogBesselI0Scaled(double z) {
  if (!(z >= 0.0)) UNCSE_ERR << "LogBesselI0: argument must be >= 0, got " << z;
  return z < kBesselSeriesLimit ? LogBesselI0ScaledSeries(z)
                                : LogBesselI0ScaledAsymptotic(z);
}

double LogBesselI0(double z) { return LogBesselI0Scaled(z) + z; }

double RicianLogPdf(double mag, double wiener, double variance,
                    double noisy_mag) {
  if (!(variance > 0.0))
    UNCSE_ERR << "RicianLogPdf: variance must be > 0, got " << variance;
  if (mag < 0.0 || noisy_mag < 0.0)
    UNCSE_ERR << "RicianLogPdf: magnitudes must be >= 0";
  if (mag == 0.0) return -std::numeric_limits<double>::infinity();
  const double loc = wiener * noisy_mag;
  const double z = 2.0 * loc * mag / variance;
  // -(m^2 + loc^2)/lambda + z == -(m - loc)^2 / lambda
  const double diff = mag - loc;
  return std::log(2.0 * mag / variance) - diff * diff / variance +
         LogBesselI0Scaled(z);
}

double RicianMapBruteForce(double wiener, double variance, double noisy_mag,
                           double step) {
  if (!(variance > 0.0))
    UNCSE_ERR << "RicianMapBruteForce: variance must be > 0";
  const double upper = noisy_mag + 6.0 * std::sqrt(variance);
  if (!(step > 0.0) || !std::isfinite(upper) || upper / step < 2.0 ||
      upper / step > 1e9)
    UNCSE_ERR << "RicianMapBruteForce: degenerate grid (step " << step
              << ", upper " << upper << ")";
  const long count = static_cast<long>(std::floor(upper / step));
  double best = -std::numeric_limits<double>::infinity();
  double best_mag = step;
  for (long j = 1; j <= count; ++j) {
    const double m = j * step;
    const double lp = RicianLogPdf(m, wiener, variance, noisy_mag);
    if (lp > best) {
      best = lp;
      best_mag = m;
    }
  }
  return best_mag;
}

}  // namespace uncse
