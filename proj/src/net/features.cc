// src/net/features.cc

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

#include "net/features.h"

#include <algorithm>
#include <cmath>

namespace uncse {

void FeatureSpec::Check() const {
  if (context < 0) UNCSE_ERR << "FeatureSpec: context must be >= 0";
  if (num_bins < 1) UNCSE_ERR << "FeatureSpec: num_bins must be >= 1";
}

Eigen::MatrixXd NormalizedLogPower(const ComplexSpectrogram &spec) {
  const Eigen::Index frames = spec.coeffs.rows(), bins = spec.coeffs.cols();
  Eigen::MatrixXd out(bins, frames);
  for (Eigen::Index t = 0; t < frames; ++t)
    for (Eigen::Index f = 0; f < bins; ++f)
      out(f, t) = std::log(std::norm(spec.coeffs(t, f)) + 1e-10);
  const double mean = out.mean();
  const double var = (out.array() - mean).square().mean();
  out = (out.array() - mean) / (std::sqrt(var) + 1e-8);
  return out;
}

Eigen::MatrixXd StackContext(const Eigen::MatrixXd &log_power,
                             const FeatureSpec &spec) {
  spec.Check();
  if (log_power.rows() != spec.num_bins)
    UNCSE_ERR << "StackContext: expected " << spec.num_bins << " bins, got "
              << log_power.rows();
  const Eigen::Index frames = log_power.cols();
  const Eigen::Index bins = spec.num_bins;
  Eigen::MatrixXd out(spec.Dim(), frames);
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (int c = -spec.context; c <= spec.context; ++c) {
      const Eigen::Index src =
          std::clamp<Eigen::Index>(t + c, 0, frames - 1);
      out.block(static_cast<Eigen::Index>(c + spec.context) * bins, t, bins,
                1) = log_power.col(src);
    }
  }
  return out;
}

Eigen::MatrixXd ComputeFeatures(const ComplexSpectrogram &spec,
                                const FeatureSpec &feature_spec) {
  return StackContext(NormalizedLogPower(spec), feature_spec);
}

}  // namespace uncse
