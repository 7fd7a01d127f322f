// src/net/trainer.h

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

#ifndef UNCSE_NET_TRAINER_H_
#define UNCSE_NET_TRAINER_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "losses/losses.h"
#include "net/features.h"
#include "net/mask-net.h"

namespace uncse {

enum class LossKind { kMse, kSiSdr, kHybrid };

std::string LossKindName(LossKind kind);
LossKind ParseLossKind(const std::string &name);

struct TrainConfig {
  double lr = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double weight_decay = 5e-4;
  int batch_size = 64;   // minimum frames per optimiser step
  int patience = 10;     // early stop after this many epochs without progress
  int lr_patience = 3;   // halve the learning rate after this many
  int max_epochs = 15;
  uint64_t seed = 1;
  LossKind loss = LossKind::kMse;
  double beta = 0.001;   // hybrid weight of the NLL term

  void Check() const;
};

/// A clean/noisy waveform pair of equal length.
struct Utterance {
  std::string id;
  double snr_db = 0.0;
  Waveform clean;
  Waveform noisy;
};

struct PreparedUtterance {
  ComplexSpectrogram clean;
  ComplexSpectrogram noisy;
  Eigen::MatrixXd features;  // feature dim x T
};

PreparedUtterance Prepare(const Utterance &utt, const StftConfig &stft,
                          const FeatureSpec &features);

/// Loss of one utterance; nll / si_sdr are NaN unless the loss uses them.
struct UtteranceLoss {
  double value = 0.0;
  double nll = 0.0;
  double si_sdr = 0.0;
  LossReport report;
};

UtteranceLoss ComputeLoss(const PosteriorField &field,
                          const PreparedUtterance &prepared,
                          const Waveform &clean, LossKind kind, double beta,
                          const StftConfig &stft);

struct EpochRecord {
  int epoch = 0;  // 0 = evaluation before the first update
  double train_loss = 0.0;
  double val_loss = 0.0;
  double train_nll = 0.0;
  double train_si_sdr = 0.0;
  double lr = 0.0;
};

struct TrainResult {
  MaskNet net;  // parameters of the best validation epoch
  std::vector<EpochRecord> history;
  int best_epoch = 0;
  bool early_stopped = false;
};

/// Adam with L2 weight decay. Each step consumes consecutive utterances of
/// the shuffled training order until at least batch_size frames are
/// collected; utterance losses are averaged with equal weight. Throws
/// NumericError on a non-finite loss or gradient.
TrainResult Train(MaskNet net, std::span<const Utterance> train,
                  std::span<const Utterance> val, const TrainConfig &cfg,
                  const StftConfig &stft, const FeatureSpec &features);

/// Mean eval-mode loss over a set of utterances.
double EvaluateLoss(const MaskNet &net, std::span<const Utterance> utts,
                    const TrainConfig &cfg, const StftConfig &stft,
                    const FeatureSpec &features);

void WriteHistoryCsv(const std::string &path,
                     const std::vector<EpochRecord> &history);

}  // namespace uncse

#endif  // UNCSE_NET_TRAINER_H_
