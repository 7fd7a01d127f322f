// src/statmodel/posterior.cc

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

#include "statmodel/posterior.h"

#include <algorithm>
#include <cmath>

namespace uncse {

namespace {
void CheckPrior(const GaussianPrior &prior) {
  if (!std::isfinite(prior.speech_var) || !std::isfinite(prior.noise_var) ||
      prior.speech_var < 0.0 || prior.noise_var < 0.0)
    UNCSE_ERR << "GaussianPrior: variances must be finite and >= 0";
  if (prior.speech_var + prior.noise_var <= 0.0)
    UNCSE_ERR << "GaussianPrior: speech and noise variance are both zero";
}
}  // namespace

void PosteriorField::Check() const {
  if (wiener.rows() != variance.rows() || wiener.cols() != variance.cols())
    UNCSE_ERR << "PosteriorField: gain and variance shapes differ";
  for (Eigen::Index i = 0; i < wiener.size(); ++i) {
    const double w = wiener.data()[i], v = variance.data()[i];
    if (!(w >= 0.0 && w <= 1.0))
      UNCSE_ERR << "PosteriorField: Wiener gain outside [0, 1]: " << w;
    if (!(v >= 0.0) || !std::isfinite(v))
      UNCSE_ERR << "PosteriorField: invalid variance " << v;
  }
}

double WienerGain(const GaussianPrior &prior) {
  CheckPrior(prior);
  return prior.speech_var / (prior.speech_var + prior.noise_var);
}

double PosteriorVariance(const GaussianPrior &prior) {
  CheckPrior(prior);
  return prior.speech_var * prior.noise_var /
         (prior.speech_var + prior.noise_var);
}

ComplexSpectrogram ApplyMask(const ComplexSpectrogram &noisy,
                             const RealGrid &gain) {
  if (gain.rows() != noisy.coeffs.rows() || gain.cols() != noisy.coeffs.cols())
    UNCSE_ERR << "ApplyMask: gain is " << gain.rows() << "x" << gain.cols()
              << ", spectrogram is " << noisy.coeffs.rows() << "x"
              << noisy.coeffs.cols();
  ComplexSpectrogram out = noisy;
  out.coeffs = noisy.coeffs.cwiseProduct(gain.cast<Complex>());
  return out;
}

double AmapGain(double wiener, double variance, double noisy_mag) {
  return AmapGainWithGrad(wiener, variance, noisy_mag).gain;
}

AmapGainGrad AmapGainWithGrad(double wiener, double variance,
                              double noisy_mag) {
  if (variance < 0.0 || !std::isfinite(variance))
    UNCSE_ERR << "AmapGain: variance must be finite and >= 0, got "
              << variance;
  const double x = std::max(noisy_mag, kMagnitudeFloor);
  const double half = 0.5 * wiener;
  const double inv_4x2 = 1.0 / (4.0 * x * x);
  const double root = std::sqrt(half * half + variance * inv_4x2);
  AmapGainGrad out;
  out.gain = half + root;
  if (root > 0.0) {
    out.d_wiener = 0.5 + 0.5 * half / root;
    out.d_variance = 0.5 * inv_4x2 / root;
  } else {
    // wiener = variance = 0: one-sided limits.
    out.d_wiener = 1.0;
    out.d_variance =
        0.5 * inv_4x2 / std::sqrt(kVarianceFloor * inv_4x2);
  }
  return out;
}

RealGrid AmapGainGrid(const PosteriorField &field, const RealGrid &noisy_mag) {
  if (field.wiener.rows() != noisy_mag.rows() ||
      field.wiener.cols() != noisy_mag.cols())
    UNCSE_ERR << "AmapGainGrid: shape mismatch";
  RealGrid gain(noisy_mag.rows(), noisy_mag.cols());
  for (Eigen::Index i = 0; i < gain.size(); ++i)
    gain.data()[i] = AmapGain(field.wiener.data()[i], field.variance.data()[i],
                              noisy_mag.data()[i]);
  return gain;
}

}  // namespace uncse
