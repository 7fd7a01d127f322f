// src/ensemble/ensemble.h

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

#ifndef UNCSE_ENSEMBLE_ENSEMBLE_H_
#define UNCSE_ENSEMBLE_ENSEMBLE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "net/mask-net.h"
#include "net/trainer.h"

namespace uncse {

enum class PredictionSource { kMcDropout, kDeepEnsemble };

struct MemberPrediction {
  ComplexGrid wiener_estimate;     // W_m X
  RealGrid gain;                   // W_m
  std::optional<RealGrid> variance;  // lambda_m, aleatoric models only
};

struct PredictionSet {
  PredictionSource source = PredictionSource::kDeepEnsemble;
  std::vector<MemberPrediction> members;

  /// M >= 1, identical shapes, non-negative variances.
  void Check() const;
  bool HasVariance() const;
};

struct CombinedPrediction {
  ComplexGrid mean;                   // average Wiener estimate
  RealGrid epistemic;                 // population variance over members
  std::optional<RealGrid> aleatoric;  // mean member lambda
  std::optional<RealGrid> total;      // epistemic + aleatoric
};

/// Trains one member per seed; member m uses seeds[m] for initialisation,
/// data order and dropout. Seeds must be distinct.
std::vector<TrainResult> DeepEnsembleTrain(
    const std::vector<int> &layer_dims, const DropoutSpec &dropout,
    const TrainConfig &base, const std::vector<uint64_t> &seeds,
    std::span<const Utterance> train, std::span<const Utterance> val,
    const StftConfig &stft, const FeatureSpec &features);

/// M stochastic forward passes with independent dropout masks.
PredictionSet McDropoutPredict(const MaskNet &net,
                               const Eigen::MatrixXd &features,
                               const ComplexSpectrogram &noisy, int num_samples,
                               uint64_t seed, bool with_variance);

/// One deterministic forward pass per member.
PredictionSet EnsemblePredict(std::span<const MaskNet> nets,
                              const Eigen::MatrixXd &features,
                              const ComplexSpectrogram &noisy,
                              bool with_variance);

/// Mean and population variance (divisor M) of the member Wiener estimates.
CombinedPrediction CombineEpistemic(const PredictionSet &preds);

/// CombineEpistemic plus the mean aleatoric variance and their sum.
CombinedPrediction CombineTotal(const PredictionSet &preds);

/// Average of the member AMAP magnitudes, (1/M) sum_m W_amap,m |X|.
RealGrid AverageAmap(const PredictionSet &preds,
                     const ComplexSpectrogram &noisy);

struct EnsembleMember {
  uint64_t seed = 0;
  std::string checkpoint;  // relative to the manifest directory
};

struct EnsembleManifest {
  std::string method;
  std::vector<EnsembleMember> members;
};

void WriteEnsembleManifest(const std::string &path,
                           const EnsembleManifest &manifest);
EnsembleManifest ReadEnsembleManifest(const std::string &path);

}  // namespace uncse

#endif  // UNCSE_ENSEMBLE_ENSEMBLE_H_
