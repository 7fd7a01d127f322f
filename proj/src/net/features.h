// src/net/features.h

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

#ifndef UNCSE_NET_FEATURES_H_
#define UNCSE_NET_FEATURES_H_

#include "base/common.h"
#include "spectral/stft.h"

namespace uncse {

/// Context-stacked, per-utterance normalised log power spectra.
struct FeatureSpec {
  int context = 3;     // frames on each side
  int num_bins = 257;  // F

  int Dim() const { return (2 * context + 1) * num_bins; }
  void Check() const;
};

/// F x T matrix of log(|X|^2 + 1e-10), shifted and scaled by the utterance's
/// scalar mean and standard deviation.
Eigen::MatrixXd NormalizedLogPower(const ComplexSpectrogram &spec);

/// Dim() x T features; column t stacks frames t-context..t+context, with the
/// first/last frame repeated past the edges.
Eigen::MatrixXd StackContext(const Eigen::MatrixXd &log_power,
                             const FeatureSpec &spec);

Eigen::MatrixXd ComputeFeatures(const ComplexSpectrogram &spec,
                                const FeatureSpec &feature_spec);

}  // namespace uncse

#endif  // UNCSE_NET_FEATURES_H_
