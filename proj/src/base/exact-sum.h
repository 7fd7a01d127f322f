// src/base/exact-sum.h

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

#ifndef UNCSE_BASE_EXACT_SUM_H_
#define UNCSE_BASE_EXACT_SUM_H_

#include <vector>

namespace uncse {

/// Accumulates doubles without rounding error (Shewchuk's non-overlapping
/// partials) and returns the correctly rounded total. The result does not
/// depend on the order in which values were added.
class ExactSum {
 public:
  void Add(double x);
  double Value() const;
  void Clear() { partials_.clear(); }

 private:
  std::vector<double> partials_;  // increasing magnitude
};

}  // namespace uncse

#endif  // UNCSE_BASE_EXACT_SUM_H_
