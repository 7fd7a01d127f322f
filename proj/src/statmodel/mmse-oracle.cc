// src/statmodel/mmse-oracle.cc

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

#include "statmodel/mmse-oracle.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace uncse {

size_t RiskTable::ArgMin() const {
  return static_cast<size_t>(std::min_element(mse.begin(), mse.end()) -
                             mse.begin());
}

RiskTable MmseRiskOracle(const GaussianPrior &prior, long num_samples,
                         const std::vector<double> &candidate_gains,
                         uint64_t seed) {
  if (num_samples < 100000)
    UNCSE_ERR << "MmseRiskOracle: need at least 1e5 samples, got "
              << num_samples;
  RiskTable table;
  table.gains = candidate_gains;
  table.wiener_gain = WienerGain(prior);
  table.num_samples = num_samples;

  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double s_scale = std::sqrt(0.5 * prior.speech_var);
  const double n_scale = std::sqrt(0.5 * prior.noise_var);
  const size_t num_gains = candidate_gains.size();
  std::vector<double> sum(num_gains, 0.0), sum_sq(num_gains, 0.0);
  double resid_sum_re = 0.0, resid_sum_im = 0.0, resid_sq = 0.0;
  for (long i = 0; i < num_samples; ++i) {
    const Complex s(s_scale * gauss(engine), s_scale * gauss(engine));
    const Complex n(n_scale * gauss(engine), n_scale * gauss(engine));
    const Complex x = s + n;
    for (size_t g = 0; g < num_gains; ++g) {
      const double err = std::norm(s - candidate_gains[g] * x);
      sum[g] += err;
      sum_sq[g] += err * err;
    }
    const Complex r = s - table.wiener_gain * x;
    resid_sum_re += r.real();
    resid_sum_im += r.imag();
    resid_sq += std::norm(r);
  }
  const double count = static_cast<double>(num_samples);
  for (size_t g = 0; g < num_gains; ++g) {
    const double mean = sum[g] / count;
    const double var = std::max(0.0, sum_sq[g] / count - mean * mean);
    table.mse.push_back(mean);
    table.mse_stderr.push_back(std::sqrt(var / count));
  }
  const Complex resid_mean(resid_sum_re / count, resid_sum_im / count);
  table.residual_variance = resid_sq / count - std::norm(resid_mean);
  return table;
}

}  // namespace uncse
