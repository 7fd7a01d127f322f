// src/net/mask-net.cc

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

#include "net/mask-net.h"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace uncse {

namespace {

uint64_t NextVersion() {
  static std::atomic<uint64_t> counter{1};
  return counter.fetch_add(1);
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

void DropoutSpec::Check(int num_hidden) const {
  if (!(p >= 0.0 && p < 1.0))
    UNCSE_ERR << "DropoutSpec: p must lie in [0, 1), got " << p;
  for (int l : layers)
    if (l < 0 || l >= num_hidden)
      UNCSE_ERR << "DropoutSpec: hidden layer " << l << " out of range [0, "
                << num_hidden << ")";
}

Eigen::MatrixXd SampleDropoutMask(Eigen::Index rows, Eigen::Index cols,
                                  double p, std::mt19937_64 *rng) {
  const double keep_scale = 1.0 / (1.0 - p);
  Eigen::MatrixXd mask(rows, cols);
  for (Eigen::Index i = 0; i < mask.size(); ++i)
    mask.data()[i] = UniformUnit(*rng) >= p ? keep_scale : 0.0;
  return mask;
}

MaskNet::MaskNet(std::vector<int> layer_dims, DropoutSpec dropout,
                 uint64_t seed)
    : dims_(std::move(layer_dims)),
      dropout_(std::move(dropout)),
      version_(NextVersion()) {
  if (dims_.size() < 2) UNCSE_ERR << "MaskNet: need at least two layer dims";
  std::mt19937_64 engine(seed);
  for (size_t l = 0; l + 1 < dims_.size(); ++l) {
    const int fan_in = dims_[l], fan_out = dims_[l + 1];
    if (fan_in < 1 || fan_out < 1) UNCSE_ERR << "MaskNet: empty layer";
    const bool hidden = l + 2 < dims_.size();
    const double gain_sq =
        hidden ? 2.0 / (1.0 + kLeakySlope * kLeakySlope) : 1.0;
    const double limit = std::sqrt(3.0 * gain_sq / fan_in);
    DenseLayer layer;
    layer.weight.resize(fan_out, fan_in);
    // Row-major fill order keeps the draw sequence independent of storage.
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c)
        layer.weight(r, c) = limit * (2.0 * UniformUnit(engine) - 1.0);
    layer.bias = Eigen::VectorXd::Zero(fan_out);
    layers_.push_back(std::move(layer));
  }
  CheckStructure();
}

MaskNet::MaskNet(std::vector<DenseLayer> layers, DropoutSpec dropout)
    : layers_(std::move(layers)),
      dropout_(std::move(dropout)),
      version_(NextVersion()) {
  if (layers_.empty()) UNCSE_ERR << "MaskNet: no layers";
  dims_.push_back(static_cast<int>(layers_.front().weight.cols()));
  for (const DenseLayer &layer : layers_)
    dims_.push_back(static_cast<int>(layer.weight.rows()));
  CheckStructure();
}

void MaskNet::CheckStructure() const {
  if (dims_.back() % 2 != 0)
    UNCSE_ERR << "MaskNet: output dimension must be 2F, got " << dims_.back();
  for (size_t l = 0; l < layers_.size(); ++l) {
    if (layers_[l].weight.cols() != dims_[l] ||
        layers_[l].weight.rows() != dims_[l + 1] ||
        layers_[l].bias.size() != dims_[l + 1])
      UNCSE_ERR << "MaskNet: layer " << l << " has inconsistent shape";
    if (!layers_[l].weight.allFinite() || !layers_[l].bias.allFinite())
      UNCSE_ERR << "MaskNet: layer " << l << " has non-finite parameters";
  }
  dropout_.Check(NumHidden());
}

size_t MaskNet::NumParameters() const {
  size_t n = 0;
  for (const DenseLayer &layer : layers_)
    n += layer.weight.size() + layer.bias.size();
  return n;
}

std::vector<DenseLayer> &MaskNet::MutableLayers() {
  version_ = NextVersion();
  return layers_;
}

NetOutput MaskNet::Forward(const Eigen::MatrixXd &features, ForwardMode mode,
                           std::mt19937_64 *rng) const {
  const bool sample = mode != ForwardMode::kEval && dropout_.p > 0.0 &&
                      !dropout_.layers.empty();
  if (sample && rng == nullptr)
    UNCSE_ERR << "MaskNet::Forward: dropout sampling needs an rng";
  return Run(features, nullptr, sample ? rng : nullptr);
}

NetOutput MaskNet::ForwardWithMasks(
    const Eigen::MatrixXd &features,
    const std::vector<Eigen::MatrixXd> &masks) const {
  if (static_cast<int>(masks.size()) != NumHidden())
    UNCSE_ERR << "ForwardWithMasks: need one mask slot per hidden layer";
  return Run(features, &masks, nullptr);
}

NetOutput MaskNet::Run(const Eigen::MatrixXd &features,
                       const std::vector<Eigen::MatrixXd> *fixed_masks,
                       std::mt19937_64 *rng) const {
  if (features.rows() != InputDim())
    UNCSE_ERR << "MaskNet::Forward: feature dimension " << features.rows()
              << " does not match input dimension " << InputDim();
  const Eigen::Index frames = features.cols();
  NetOutput out;
  ForwardCache &cache = out.cache;
  cache.version = version_;
  cache.masks.resize(NumHidden());

  Eigen::MatrixXd act = features;
  for (int l = 0; l < NumHidden(); ++l) {
    Eigen::MatrixXd z = layers_[l].weight * act;
    z.colwise() += layers_[l].bias;
    cache.inputs.push_back(std::move(act));
    act = z.unaryExpr([](double v) { return v > 0.0 ? v : kLeakySlope * v; });
    cache.pre_activations.push_back(std::move(z));
    if (fixed_masks != nullptr) {
      const Eigen::MatrixXd &mask = (*fixed_masks)[l];
      if (mask.size() != 0) {
        if (mask.rows() != act.rows() || mask.cols() != act.cols())
          UNCSE_ERR << "ForwardWithMasks: mask " << l << " has wrong shape";
        cache.masks[l] = mask;
      }
    } else if (rng != nullptr &&
               std::find(dropout_.layers.begin(), dropout_.layers.end(), l) !=
                   dropout_.layers.end()) {
      cache.masks[l] = SampleDropoutMask(act.rows(), act.cols(), dropout_.p, rng);
    }
    if (cache.masks[l].size() != 0) act = act.cwiseProduct(cache.masks[l]);
  }
  cache.head = layers_.back().weight * act;
  cache.head.colwise() += layers_.back().bias;
  cache.inputs.push_back(std::move(act));

  const int bins = NumBins();
  out.field.wiener.resize(frames, bins);
  out.field.variance.resize(frames, bins);
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (int f = 0; f < bins; ++f) {
      const double logit = std::clamp(cache.head(f, t), -kMaxLogit, kMaxLogit);
      out.field.wiener(t, f) = Sigmoid(logit);
      out.field.variance(t, f) = std::exp(std::clamp(
          cache.head(bins + f, t), kMinLogVariance, kMaxLogVariance));
    }
  }
  return out;
}

std::vector<DenseLayer> MaskNet::Backward(
    const ForwardCache &cache, const RealGrid &grad_wiener,
    const RealGrid &grad_log_variance) const {
  if (cache.version != version_ || cache.inputs.size() != layers_.size())
    UNCSE_ERR << "MaskNet::Backward: stale or empty forward cache";
  const int bins = NumBins();
  const Eigen::Index frames = cache.head.cols();
  if (grad_wiener.rows() != frames || grad_wiener.cols() != bins ||
      grad_log_variance.rows() != frames || grad_log_variance.cols() != bins)
    UNCSE_ERR << "MaskNet::Backward: loss gradient has wrong shape";

  Eigen::MatrixXd delta(2 * bins, frames);
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (int f = 0; f < bins; ++f) {
      const double logit = cache.head(f, t);
      if (logit > -kMaxLogit && logit < kMaxLogit) {
        const double w = Sigmoid(logit);
        delta(f, t) = grad_wiener(t, f) * w * (1.0 - w);
      } else {
        delta(f, t) = 0.0;
      }
      const double h = cache.head(bins + f, t);
      delta(bins + f, t) = (h > kMinLogVariance && h < kMaxLogVariance)
                               ? grad_log_variance(t, f)
                               : 0.0;
    }
  }

  std::vector<DenseLayer> grads(layers_.size());
  for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
    grads[l].weight = delta * cache.inputs[l].transpose();
    grads[l].bias = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd upstream = layers_[l].weight.transpose() * delta;
    const int hidden = l - 1;
    if (cache.masks[hidden].size() != 0)
      upstream = upstream.cwiseProduct(cache.masks[hidden]);
    const Eigen::MatrixXd &z = cache.pre_activations[hidden];
    delta = upstream.cwiseProduct(
        z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : kLeakySlope; }));
  }
  return grads;
}

}  // namespace uncse
