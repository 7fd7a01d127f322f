// src/eval/uncert-eval.h

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

#ifndef UNCSE_EVAL_UNCERT_EVAL_H_
#define UNCSE_EVAL_UNCERT_EVAL_H_

#include <span>
#include <string>
#include <vector>

#include "base/common.h"

namespace uncse {

inline constexpr int kDefaultSparsificationSteps = 100;
inline constexpr double kSiSdrMetricCapDb = 60.0;

/// |estimate - clean|^2 per bin.
RealGrid PerBinError(const ComplexGrid &estimate, const ComplexGrid &clean);
/// (|estimate| - |clean|)^2 per bin, for magnitude-only estimates.
RealGrid PerBinMagnitudeError(const RealGrid &estimate_mag,
                              const ComplexGrid &clean);

/// Concatenates grids in the given order into one flat vector.
std::vector<double> PoolGrids(std::span<const RealGrid> grids);

struct SparsificationCurve {
  std::vector<double> fractions;  // k / K, k = 0..K-1
  std::vector<double> rmse;       // normalised, rmse[0] == 1
};

/// Removes the floor(k N / K) most uncertain bins (ties: lower index removed
/// first) and reports the RMSE of the survivors, sqrt(mean squared error),
/// relative to the full-set RMSE. `errors` are per-bin squared errors.
/// An all-zero error set gives a flat curve of ones.
SparsificationCurve Sparsify(std::span<const double> errors,
                             std::span<const double> uncertainty,
                             int steps = kDefaultSparsificationSteps);

/// Sparsify with the errors themselves as uncertainty.
SparsificationCurve OracleCurve(std::span<const double> errors,
                                int steps = kDefaultSparsificationSteps);

/// Area between measured and oracle curves over fractions [0, 1]: trapezoids
/// between grid points, the last difference held up to fraction 1.
double Ause(const SparsificationCurve &measured,
            const SparsificationCurve &oracle);

/// Scale-invariant SDR in dB, clamped to [-60, 60] so an exact estimate
/// gives 60. Throws on a silent reference.
double SiSdr(std::span<const double> reference,
             std::span<const double> estimate);

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;  // NaN for fewer than two values
  size_t count = 0;
};

/// Mean with a Student-t confidence interval.
MeanCi MeanWithCi(std::span<const double> values, double level = 0.95);

/// Columns fraction,rmse_measured,rmse_oracle.
void WriteSparsificationCsv(const std::string &path,
                            const SparsificationCurve &measured,
                            const SparsificationCurve &oracle);

/// Self-contained SVG line plot of both curves with axes and a legend.
void WriteSparsificationSvg(const std::string &path,
                            const SparsificationCurve &measured,
                            const SparsificationCurve &oracle,
                            const std::string &title);

}  // namespace uncse

#endif  // UNCSE_EVAL_UNCERT_EVAL_H_
