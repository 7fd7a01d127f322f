// src/net/checkpoint.h

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

#ifndef UNCSE_NET_CHECKPOINT_H_
#define UNCSE_NET_CHECKPOINT_H_

#include <cstdint>
#include <string>

#include "net/features.h"
#include "net/mask-net.h"
#include "spectral/stft.h"

namespace uncse {

inline constexpr int kCheckpointVersion = 1;

/// Everything needed to run a trained member on new audio.
struct Checkpoint {
  MaskNet net;
  FeatureSpec features;
  StftConfig stft;
  uint64_t seed = 0;
  std::string loss;  // training loss kind, informational
};

/// Plain-text layout (see README): a version line, header fields, then each
/// layer's weight rows and bias in row-major order with exact decimal values.
void SaveCheckpoint(const std::string &path, const Checkpoint &ckpt);
Checkpoint LoadCheckpoint(const std::string &path);

}  // namespace uncse

#endif  // UNCSE_NET_CHECKPOINT_H_
