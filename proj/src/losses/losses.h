// src/losses/losses.h

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

#ifndef UNCSE_LOSSES_LOSSES_H_
#define UNCSE_LOSSES_LOSSES_H_

#include <span>
#include <vector>

#include "spectral/stft.h"
#include "statmodel/posterior.h"

namespace uncse {

/// SI-SDR values are clamped to +-kSiSdrCapDb; gradients vanish at the clamp.
inline constexpr double kSiSdrCapDb = 60.0;

/// A loss over one utterance with gradients w.r.t. the network outputs:
/// the Wiener gain and the log posterior variance, both T x F.
struct LossReport {
  double value = 0.0;
  RealGrid grad_wiener;
  RealGrid grad_log_variance;
};

struct SignalLossReport {
  double value = 0.0;
  std::vector<double> grad;  // d value / d estimate
};

struct HybridReport : LossReport {
  double nll = 0.0;
  double si_sdr = 0.0;  // the loss term, i.e. negative SI-SDR in dB
};

/// mean over bins of log(lambda) + |S - W X|^2 / lambda.
LossReport NllPosterior(const ComplexSpectrogram &clean,
                        const ComplexSpectrogram &noisy,
                        const PosteriorField &field);

/// mean over bins of |S - W X|^2. grad_log_variance is zero.
LossReport Mse(const ComplexSpectrogram &clean, const ComplexSpectrogram &noisy,
               const RealGrid &wiener);

/// Negative SI-SDR in dB, clamped to [-60, 60].
/// Throws if the lengths differ or the reference is silent.
SignalLossReport SiSdrLoss(std::span<const double> reference,
                           std::span<const double> estimate);

/// istft(W_amap |X| e^{i angle X}).
Waveform AmapEnhance(const ComplexSpectrogram &noisy,
                     const PosteriorField &field, const StftConfig &cfg);
/// istft(W X).
Waveform WienerEnhance(const ComplexSpectrogram &noisy, const RealGrid &wiener,
                       const StftConfig &cfg);

/// Negative SI-SDR of the AMAP estimate, differentiated back to (W, log lambda)
/// through the inverse STFT.
LossReport SiSdrAmapPath(const Waveform &clean, const ComplexSpectrogram &noisy,
                         const PosteriorField &field, const StftConfig &cfg);

/// Negative SI-SDR of the Wiener-masked estimate; grad_log_variance is zero.
LossReport SiSdrWienerPath(const Waveform &clean,
                           const ComplexSpectrogram &noisy,
                           const RealGrid &wiener, const StftConfig &cfg);

/// beta * NllPosterior + (1 - beta) * SiSdrAmapPath.
HybridReport Hybrid(const ComplexSpectrogram &clean,
                    const ComplexSpectrogram &noisy,
                    const PosteriorField &field, const Waveform &clean_wave,
                    double beta, const StftConfig &cfg);

}  // namespace uncse

#endif  // UNCSE_LOSSES_LOSSES_H_
