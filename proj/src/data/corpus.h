// src/data/corpus.h

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

#ifndef UNCSE_DATA_CORPUS_H_
#define UNCSE_DATA_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "data/synth.h"

namespace uncse {

struct MixtureSpec {
  std::string id;
  std::string split;  // train, val or test
  uint64_t speech_seed = 0;
  uint64_t noise_seed = 0;
  NoiseKind noise_kind = NoiseKind::kWhite;
  double snr_db = 0.0;
  double duration_s = 3.0;
  void Check() const;
};

/// Line format after the header "# uncse-corpus v1 seed=<seed>":
///   id split speech_seed noise_seed noise_kind snr_db duration_s
struct CorpusManifest {
  uint64_t seed = 0;
  std::vector<MixtureSpec> specs;
  /// Unique ids, valid splits, no (speech_seed, noise_seed) pair shared
  /// between splits.
  void Check() const;
  std::vector<MixtureSpec> Split(const std::string &split) const;
};

struct CorpusConfig {
  uint64_t seed = 1;
  int num_train = 200;
  int num_val = 40;
  int num_test = 40;
  double duration_s = 3.0;
  double train_snr_min_db = -5.0;
  double train_snr_max_db = 20.0;
  std::vector<double> test_snrs_db = {-10.0, -5.0, 0.0, 5.0, 10.0};
  void Check() const;
};

/// Train/val SNRs are uniform in [min, max]; test SNRs cycle through the grid
/// so each grid value gets an equal share. Noise kinds are drawn uniformly.
CorpusManifest MakeManifest(const CorpusConfig &cfg);

void WriteManifest(const std::string &path, const CorpusManifest &manifest);
CorpusManifest ReadManifest(const std::string &path);

struct GeneratedMixture {
  Waveform clean;
  Waveform noise;  // scaled to the requested SNR
  Waveform mix;
};

/// Synthesises one mixture. If any of clean, noise or mix peaks above 0.99,
/// all three are scaled by the same factor, which keeps the SNR.
GeneratedMixture GenerateMixture(const MixtureSpec &spec, int sample_rate = 16000);

/// Writes <dir>/manifest.txt and <dir>/<split>/<id>_{clean,noise,mix}.wav.
/// Returns the number of clipped samples.
size_t WriteCorpus(const std::string &dir, const CorpusManifest &manifest);

std::string CorpusWavPath(const std::string &dir, const MixtureSpec &spec,
                          const std::string &part);

}  // namespace uncse

#endif  // UNCSE_DATA_CORPUS_H_
