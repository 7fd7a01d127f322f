// src/statmodel/mmse-oracle.h

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

#ifndef UNCSE_STATMODEL_MMSE_ORACLE_H_
#define UNCSE_STATMODEL_MMSE_ORACLE_H_

#include <cstdint>
#include <vector>

#include "statmodel/posterior.h"

namespace uncse {

struct RiskTable {
  std::vector<double> gains;
  std::vector<double> mse;         // empirical E|S - g X|^2 per gain
  std::vector<double> mse_stderr;  // standard error of each mse entry
  double wiener_gain = 0.0;
  double residual_variance = 0.0;  // empirical variance of S - W X
  long num_samples = 0;

  /// Index of the smallest empirical risk.
  size_t ArgMin() const;
};

/// Monte-Carlo risk of fixed gains when S ~ N_C(0, sigma_s^2) and
/// N ~ N_C(0, sigma_n^2), X = S + N. Requires num_samples >= 1e5.
RiskTable MmseRiskOracle(const GaussianPrior &prior, long num_samples,
                         const std::vector<double> &candidate_gains,
                         uint64_t seed);

}  // namespace uncse

#endif  // UNCSE_STATMODEL_MMSE_ORACLE_H_
