// src/statmodel/posterior.h

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

#ifndef UNCSE_STATMODEL_POSTERIOR_H_
#define UNCSE_STATMODEL_POSTERIOR_H_

#include "base/common.h"
#include "spectral/stft.h"

namespace uncse {

// Below these values magnitudes and variances are clamped in divisions.
inline constexpr double kMagnitudeFloor = 1e-8;
inline constexpr double kVarianceFloor = 1e-10;

/// Zero-mean complex Gaussian speech and noise variances of one bin.
struct GaussianPrior {
  double speech_var = 0.0;
  double noise_var = 1.0;
};

/// Per-bin Wiener gain and posterior variance (lambda), both T x F.
struct PosteriorField {
  RealGrid wiener;
  RealGrid variance;

  /// Shapes equal, 0 <= wiener <= 1, variance >= 0, all finite.
  void Check() const;
};

/// sigma_s^2 / (sigma_s^2 + sigma_n^2).
double WienerGain(const GaussianPrior &prior);
/// sigma_s^2 sigma_n^2 / (sigma_s^2 + sigma_n^2).
double PosteriorVariance(const GaussianPrior &prior);

ComplexSpectrogram ApplyMask(const ComplexSpectrogram &noisy,
                             const RealGrid &gain);

/// Approximate MAP magnitude gain
///   W/2 + sqrt((W/2)^2 + lambda / (4 |X|^2)),
/// with |X| clamped to kMagnitudeFloor.
double AmapGain(double wiener, double variance, double noisy_mag);

struct AmapGainGrad {
  double gain;
  double d_wiener;
  double d_variance;
};
AmapGainGrad AmapGainWithGrad(double wiener, double variance,
                              double noisy_mag);

RealGrid AmapGainGrid(const PosteriorField &field, const RealGrid &noisy_mag);

}  // namespace uncse

#endif  // UNCSE_STATMODEL_POSTERIOR_H_
