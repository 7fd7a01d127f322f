// src/data/wav-io.h

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

#ifndef UNCSE_DATA_WAV_IO_H_
#define UNCSE_DATA_WAV_IO_H_

#include <string>

#include "spectral/stft.h"

namespace uncse {

/// Writes 16-bit PCM mono RIFF. Samples are scaled by 32768 and rounded;
/// values outside the representable range are clamped. Returns the number of
/// clamped samples.
size_t WriteWav(const std::string &path, const Waveform &wave);

/// Reads 16-bit PCM mono RIFF (other chunks are skipped). Samples are q/32768.
Waveform ReadWav(const std::string &path);

}  // namespace uncse

#endif  // UNCSE_DATA_WAV_IO_H_
