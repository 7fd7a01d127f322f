// src/app/gradcheck.h

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

#ifndef UNCSE_APP_GRADCHECK_H_
#define UNCSE_APP_GRADCHECK_H_

#include <cstdint>
#include <string>
#include <vector>

namespace uncse {

struct GradcheckOptions {
  double step = 1e-5;        // central-difference step
  double tolerance = 1e-4;   // maximum relative error per coordinate
  double floor = 1e-6;       // denominator floor for near-zero gradients
  double hybrid_beta = 0.3;  // weights both hybrid terms visibly
  uint64_t seed = 1;
  std::string corrupt;       // suite whose analytic gradient is perturbed
};

struct GradcheckSuite {
  std::string name;
  size_t num_coords = 0;
  double max_rel_error = 0.0;
  bool passed = false;
};

struct GradcheckReport {
  std::vector<GradcheckSuite> suites;
  bool passed = false;
};

/// Suite names, in run order.
const std::vector<std::string> &GradcheckSuiteNames();

/// Compares analytic gradients against central differences for every loss
/// (on 4 x 6 grids), the SI-SDR waveform loss, both istft loss paths and the
/// full network hybrid path (F = 9, T = 8). Relative error per coordinate is
/// |a - n| / max(|a|, |n|, floor).
GradcheckReport RunGradcheck(const GradcheckOptions &opts);

}  // namespace uncse

#endif  // UNCSE_APP_GRADCHECK_H_
