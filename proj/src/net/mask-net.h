// src/net/mask-net.h

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

#ifndef UNCSE_NET_MASK_NET_H_
#define UNCSE_NET_MASK_NET_H_

#include <cstdint>
#include <random>
#include <vector>

#include "base/common.h"
#include "statmodel/posterior.h"

namespace uncse {

/// kTrain and kEvalMc sample dropout masks; kEval is deterministic.
enum class ForwardMode { kTrain, kEval, kEvalMc };

struct DropoutSpec {
  std::vector<int> layers;  // hidden-layer indices, 0 = first hidden layer
  double p = 0.0;
  bool active_at_inference = false;

  void Check(int num_hidden) const;
};

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

/// Activations kept by a forward pass for Backward. `version` ties the cache
/// to the parameter state it was computed with.
struct ForwardCache {
  uint64_t version = 0;
  std::vector<Eigen::MatrixXd> inputs;           // input of each layer
  std::vector<Eigen::MatrixXd> pre_activations;  // hidden layers only
  std::vector<Eigen::MatrixXd> masks;            // scaled keep-masks or empty
  Eigen::MatrixXd head;                          // 2F x T raw output
};

struct NetOutput {
  PosteriorField field;  // T x F
  ForwardCache cache;
};

/// Dense two-head masking network: leaky-ReLU hidden layers, a sigmoid gain
/// head and a clamped log-variance head. Inputs are Dim() x T feature matrices
/// (one column per frame).
class MaskNet {
 public:
  static constexpr double kLeakySlope = 0.2;
  static constexpr double kMinLogVariance = -12.0;
  static constexpr double kMaxLogVariance = 6.0;
  // Gain logits are clamped so the gain stays strictly inside (0, 1).
  static constexpr double kMaxLogit = 30.0;

  MaskNet() = default;
  /// layer_dims = {input, hidden..., 2F}. Weights are drawn uniformly with
  /// fan-in scaling from `seed`; biases start at zero.
  MaskNet(std::vector<int> layer_dims, DropoutSpec dropout, uint64_t seed);
  /// Wraps existing parameters (checkpoint loading).
  MaskNet(std::vector<DenseLayer> layers, DropoutSpec dropout);

  NetOutput Forward(const Eigen::MatrixXd &features, ForwardMode mode,
                    std::mt19937_64 *rng) const;
  /// Forward pass with externally fixed dropout masks (one per hidden layer,
  /// empty where no dropout is applied).
  NetOutput ForwardWithMasks(const Eigen::MatrixXd &features,
                             const std::vector<Eigen::MatrixXd> &masks) const;

  /// Gradients of a loss w.r.t. every weight and bias, given the loss
  /// gradients w.r.t. the Wiener gain and log variance (T x F).
  std::vector<DenseLayer> Backward(const ForwardCache &cache,
                                   const RealGrid &grad_wiener,
                                   const RealGrid &grad_log_variance) const;

  int InputDim() const { return dims_.front(); }
  int NumBins() const { return dims_.back() / 2; }
  int NumHidden() const { return static_cast<int>(layers_.size()) - 1; }
  const std::vector<int> &LayerDims() const { return dims_; }
  const std::vector<DenseLayer> &Layers() const { return layers_; }
  const DropoutSpec &Dropout() const { return dropout_; }
  uint64_t Version() const { return version_; }
  size_t NumParameters() const;

  /// Mutable access invalidates every outstanding ForwardCache.
  std::vector<DenseLayer> &MutableLayers();

 private:
  NetOutput Run(const Eigen::MatrixXd &features,
                const std::vector<Eigen::MatrixXd> *fixed_masks,
                std::mt19937_64 *rng) const;
  void CheckStructure() const;

  std::vector<int> dims_;
  std::vector<DenseLayer> layers_;
  DropoutSpec dropout_;
  uint64_t version_ = 0;
};

/// Keep-mask of the given shape with entries 0 or 1/(1-p).
Eigen::MatrixXd SampleDropoutMask(Eigen::Index rows, Eigen::Index cols,
                                  double p, std::mt19937_64 *rng);

}  // namespace uncse

#endif  // UNCSE_NET_MASK_NET_H_
