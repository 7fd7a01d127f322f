// src/net/trainer.cc

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

#include "net/trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "base/text.h"
#include "net/adam.h"

namespace uncse {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool AllFinite(const std::vector<DenseLayer> &grads) {
  for (const DenseLayer &g : grads)
    if (!g.weight.allFinite() || !g.bias.allFinite()) return false;
  return true;
}

void Accumulate(std::vector<DenseLayer> *sum,
                const std::vector<DenseLayer> &grads, double scale) {
  if (sum->empty()) {
    for (const DenseLayer &g : grads)
      sum->push_back(DenseLayer{scale * g.weight, scale * g.bias});
    return;
  }
  for (size_t l = 0; l < grads.size(); ++l) {
    (*sum)[l].weight += scale * grads[l].weight;
    (*sum)[l].bias += scale * grads[l].bias;
  }
}
}  // namespace

std::string LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kMse: return "mse";
    case LossKind::kSiSdr: return "sisdr";
    case LossKind::kHybrid: return "hybrid";
  }
  return "unknown";
}

LossKind ParseLossKind(const std::string &name) {
  if (name == "mse") return LossKind::kMse;
  if (name == "sisdr") return LossKind::kSiSdr;
  if (name == "hybrid") return LossKind::kHybrid;
  throw ConfigError("unknown loss kind '" + name + "'");
}

void TrainConfig::Check() const {
  if (!(lr > 0.0) || !(adam_eps > 0.0) || weight_decay < 0.0)
    throw ConfigError("TrainConfig: lr and adam_eps must be > 0");
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0 && adam_beta2 > 0.0 &&
        adam_beta2 < 1.0))
    throw ConfigError("TrainConfig: Adam betas must lie in (0, 1)");
  if (batch_size < 1 || patience < 1 || lr_patience < 1 || max_epochs < 1)
    throw ConfigError(
        "TrainConfig: batch_size, patience, lr_patience, max_epochs must be "
        ">= 1");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw ConfigError("TrainConfig: beta must lie in [0, 1]");
}

PreparedUtterance Prepare(const Utterance &utt, const StftConfig &stft,
                          const FeatureSpec &features) {
  if (utt.clean.Size() != utt.noisy.Size())
    UNCSE_ERR << "utterance " << utt.id << ": clean and noisy lengths differ";
  PreparedUtterance out;
  out.clean = Stft(utt.clean, stft);
  out.noisy = Stft(utt.noisy, stft);
  out.features = ComputeFeatures(out.noisy, features);
  return out;
}

UtteranceLoss ComputeLoss(const PosteriorField &field,
                          const PreparedUtterance &prepared,
                          const Waveform &clean, LossKind kind, double beta,
                          const StftConfig &stft) {
  if (!field.wiener.allFinite() || !field.variance.allFinite())
    throw NumericError("network produced a non-finite posterior field");
  UtteranceLoss out;
  out.nll = kNaN;
  out.si_sdr = kNaN;
  switch (kind) {
    case LossKind::kMse:
      out.report = Mse(prepared.clean, prepared.noisy, field.wiener);
      break;
    case LossKind::kSiSdr:
      out.report = SiSdrWienerPath(clean, prepared.noisy, field.wiener, stft);
      out.si_sdr = out.report.value;
      break;
    case LossKind::kHybrid: {
      HybridReport h =
          Hybrid(prepared.clean, prepared.noisy, field, clean, beta, stft);
      out.nll = h.nll;
      out.si_sdr = h.si_sdr;
      out.report = std::move(h);
      break;
    }
  }
  out.value = out.report.value;
  return out;
}

double EvaluateLoss(const MaskNet &net, std::span<const Utterance> utts,
                    const TrainConfig &cfg, const StftConfig &stft,
                    const FeatureSpec &features) {
  if (utts.empty()) UNCSE_ERR << "EvaluateLoss: no utterances";
  double sum = 0.0;
  for (const Utterance &utt : utts) {
    const PreparedUtterance prepared = Prepare(utt, stft, features);
    const NetOutput out =
        net.Forward(prepared.features, ForwardMode::kEval, nullptr);
    sum += ComputeLoss(out.field, prepared, utt.clean, cfg.loss, cfg.beta, stft)
               .value;
  }
  return sum / static_cast<double>(utts.size());
}

TrainResult Train(MaskNet net, std::span<const Utterance> train,
                  std::span<const Utterance> val, const TrainConfig &cfg,
                  const StftConfig &stft, const FeatureSpec &features) {
  cfg.Check();
  if (train.empty() || val.empty())
    throw ConfigError("Train: training and validation sets must be non-empty");
  if (net.InputDim() != features.Dim() || net.NumBins() != stft.NumBins())
    throw ConfigError("Train: network shape does not match features/STFT");

  std::mt19937_64 order_rng(MixSeed(cfg.seed ^ 0x6f72646572ULL));
  std::mt19937_64 dropout_rng(MixSeed(cfg.seed ^ 0x64726f70ULL));
  Adam adam(AdamConfig{cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps,
                       cfg.weight_decay});

  TrainResult result;
  double lr = cfg.lr;
  EpochRecord initial;
  initial.train_loss = EvaluateLoss(net, train, cfg, stft, features);
  initial.val_loss = EvaluateLoss(net, val, cfg, stft, features);
  initial.train_nll = kNaN;
  initial.train_si_sdr = kNaN;
  initial.lr = lr;
  result.history.push_back(initial);
  double best_val = initial.val_loss;
  result.net = net;
  int since_best = 0, since_lr_change = 0;

  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), order_rng);
    double loss_sum = 0.0, nll_sum = 0.0, sisdr_sum = 0.0;
    size_t pos = 0;
    int step = 0;
    while (pos < order.size()) {
      std::vector<DenseLayer> grad_sum;
      std::vector<std::vector<DenseLayer>> per_utt;
      int frames = 0;
      while (pos < order.size() && frames < cfg.batch_size) {
        const Utterance &utt = train[order[pos++]];
        const PreparedUtterance prepared = Prepare(utt, stft, features);
        const NetOutput out =
            net.Forward(prepared.features, ForwardMode::kTrain, &dropout_rng);
        const UtteranceLoss loss = ComputeLoss(out.field, prepared, utt.clean,
                                               cfg.loss, cfg.beta, stft);
        if (!std::isfinite(loss.value))
          throw NumericError("training diverged: non-finite loss on " +
                             utt.id + " at epoch " + std::to_string(epoch) +
                             " (seed " + std::to_string(cfg.seed) + ")");
        per_utt.push_back(net.Backward(out.cache, loss.report.grad_wiener,
                                       loss.report.grad_log_variance));
        loss_sum += loss.value;
        nll_sum += loss.nll;
        sisdr_sum += loss.si_sdr;
        frames += prepared.noisy.NumFrames();
      }
      const double scale = 1.0 / static_cast<double>(per_utt.size());
      for (const auto &g : per_utt) Accumulate(&grad_sum, g, scale);
      if (!AllFinite(grad_sum))
        throw NumericError("training diverged: non-finite gradient at epoch " +
                           std::to_string(epoch) + ", step " +
                           std::to_string(step) + " (seed " +
                           std::to_string(cfg.seed) + ")");
      adam.Step(&net, grad_sum, lr);
      ++step;
    }
    EpochRecord record;
    record.epoch = epoch;
    const double n = static_cast<double>(train.size());
    record.train_loss = loss_sum / n;
    record.train_nll = nll_sum / n;
    record.train_si_sdr = sisdr_sum / n;
    record.val_loss = EvaluateLoss(net, val, cfg, stft, features);
    record.lr = lr;
    if (!std::isfinite(record.val_loss))
      throw NumericError("training diverged: non-finite validation loss at "
                         "epoch " + std::to_string(epoch));
    result.history.push_back(record);
    UNCSE_LOG << "epoch " << epoch << " train " << record.train_loss
              << " val " << record.val_loss << " lr " << lr;

    if (record.val_loss < best_val) {
      best_val = record.val_loss;
      result.net = net;
      result.best_epoch = epoch;
      since_best = 0;
      since_lr_change = 0;
    } else {
      ++since_best;
      if (++since_lr_change >= cfg.lr_patience) {
        lr *= 0.5;
        since_lr_change = 0;
      }
      if (since_best >= cfg.patience) {
        result.early_stopped = true;
        break;
      }
    }
  }
  return result;
}

void WriteHistoryCsv(const std::string &path,
                     const std::vector<EpochRecord> &history) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << "epoch,train_loss,val_loss,train_nll,train_si_sdr,lr\n";
  for (const EpochRecord &r : history)
    os << r.epoch << ',' << FormatDouble(r.train_loss) << ','
       << FormatDouble(r.val_loss) << ',' << FormatDouble(r.train_nll) << ','
       << FormatDouble(r.train_si_sdr) << ',' << FormatDouble(r.lr) << '\n';
}

}  // namespace uncse
