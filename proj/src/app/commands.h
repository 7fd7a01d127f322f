// src/app/commands.h

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

#ifndef UNCSE_APP_COMMANDS_H_
#define UNCSE_APP_COMMANDS_H_

#include <string>
#include <vector>

#include "app/run-config.h"
#include "eval/uncert-eval.h"

namespace uncse {

// Output layout, relative to work_dir:
//   <method>/member_<m>.ckpt, history_<m>.csv, ensemble.txt
//   <method>/enhanced/<split>/<id>_{wf,amap}.wav and
//       <id>_{aleatoric,epistemic,total,error}.csv
//   <method>/eval_<split>.csv
//   <method>/sparsify_<split>_<source>.{csv,svg,txt}
// Each command also writes resolved-<command>.cfg into its output directory.

std::string MethodDir(const RunConfig &cfg);
std::string EnhanceDir(const RunConfig &cfg);

/// Loads clean/noisy pairs of one split from the corpus directory.
std::vector<Utterance> LoadSplit(const std::string &corpus_dir,
                                 const std::string &split);

struct GenDataResult {
  size_t num_utterances = 0;
  size_t clipped_samples = 0;
};
GenDataResult CmdGenData(const RunConfig &cfg);

struct TrainSummary {
  std::vector<std::string> checkpoints;
  std::vector<TrainResult> members;
};
TrainSummary CmdTrain(const RunConfig &cfg);

size_t CmdEnhance(const RunConfig &cfg);

struct EvalRow {
  std::string snr;       // SNR value or "all"
  std::string estimate;  // noisy, wf or amap
  size_t count = 0;
  MeanCi si_sdr;
  MeanCi improvement;    // estimate minus noisy, per utterance
};
std::vector<EvalRow> CmdEvaluate(const RunConfig &cfg);
/// Pooled row for one estimate, or nullptr.
const EvalRow *FindPooledRow(const std::vector<EvalRow> &rows,
                             const std::string &estimate);

struct SparsifyResult {
  SparsificationCurve measured;
  SparsificationCurve oracle;
  double ause = 0.0;
  double ause_shuffled = 0.0;  // same errors, randomly permuted uncertainty
  size_t num_bins = 0;
};
SparsifyResult CmdSparsify(const RunConfig &cfg);

}  // namespace uncse

#endif  // UNCSE_APP_COMMANDS_H_
