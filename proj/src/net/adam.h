// src/net/adam.h

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

#ifndef UNCSE_NET_ADAM_H_
#define UNCSE_NET_ADAM_H_

#include <vector>

#include "net/mask-net.h"

namespace uncse {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 5e-4;  // L2 term added to the gradient
};

class Adam {
 public:
  explicit Adam(const AdamConfig &config) : config_(config) {}

  void Step(MaskNet *net, const std::vector<DenseLayer> &grads, double lr);
  long NumSteps() const { return step_; }

 private:
  AdamConfig config_;
  long step_ = 0;
  std::vector<DenseLayer> first_moment_;
  std::vector<DenseLayer> second_moment_;
};

}  // namespace uncse

#endif  // UNCSE_NET_ADAM_H_
