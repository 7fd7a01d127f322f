// src/statmodel/rician.h

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

#ifndef UNCSE_STATMODEL_RICIAN_H_
#define UNCSE_STATMODEL_RICIAN_H_

namespace uncse {

/// Switch point between the power series and the large-argument expansion of
/// log I0. Both branches agree to ~1e-15 here.
inline constexpr double kBesselSeriesLimit = 25.0;

/// log I0(z) - z for z >= 0, without overflow for large z.
double LogBesselI0Scaled(double z);
/// log I0(z), the modified Bessel function of the first kind, order zero.
double LogBesselI0(double z);
/// The two branches of LogBesselI0Scaled, exposed for seam checks.
double LogBesselI0ScaledSeries(double z);
double LogBesselI0ScaledAsymptotic(double z);

/// Log-density of the clean magnitude |S| = mag given the noisy magnitude:
/// a Rician law with location W |X| and scale lambda. Returns -inf at mag = 0.
double RicianLogPdf(double mag, double wiener, double variance,
                    double noisy_mag);

/// Mode of RicianLogPdf found by exhaustive search over the grid
/// {step, 2 step, ...} up to noisy_mag + 6 sqrt(variance).
double RicianMapBruteForce(double wiener, double variance, double noisy_mag,
                           double step);

}  // namespace uncse

#endif  // UNCSE_STATMODEL_RICIAN_H_
