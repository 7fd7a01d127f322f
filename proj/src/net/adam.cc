// src/net/adam.cc

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

#include "net/adam.h"

#include <cmath>

namespace uncse {

namespace {

template <class Param, class Grad, class Moment>
void Update(Param &param, const Grad &grad, Moment &m, Moment &v,
            const AdamConfig &c, double step_size, double bias2) {
  const auto g = (grad.array() + c.weight_decay * param.array()).eval();
  m.array() = c.beta1 * m.array() + (1.0 - c.beta1) * g;
  v.array() = c.beta2 * v.array() + (1.0 - c.beta2) * g.square();
  param.array() -=
      step_size * m.array() / ((v.array() / bias2).sqrt() + c.eps);
}

}  // namespace

void Adam::Step(MaskNet *net, const std::vector<DenseLayer> &grads, double lr) {
  std::vector<DenseLayer> &layers = net->MutableLayers();
  if (grads.size() != layers.size())
    UNCSE_ERR << "Adam::Step: gradient has " << grads.size()
              << " layers, network has " << layers.size();
  if (first_moment_.empty()) {
    for (const DenseLayer &layer : layers) {
      DenseLayer zero{Eigen::MatrixXd::Zero(layer.weight.rows(),
                                            layer.weight.cols()),
                      Eigen::VectorXd::Zero(layer.bias.size())};
      first_moment_.push_back(zero);
      second_moment_.push_back(zero);
    }
  }
  ++step_;
  const double bias1 = 1.0 - std::pow(config_.beta1, step_);
  const double bias2 = 1.0 - std::pow(config_.beta2, step_);
  const double step_size = lr / bias1;
  for (size_t l = 0; l < layers.size(); ++l) {
    Update(layers[l].weight, grads[l].weight, first_moment_[l].weight,
           second_moment_[l].weight, config_, step_size, bias2);
    Update(layers[l].bias, grads[l].bias, first_moment_[l].bias,
           second_moment_[l].bias, config_, step_size, bias2);
  }
}

}  // namespace uncse
