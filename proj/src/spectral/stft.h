// src/spectral/stft.h

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

#ifndef UNCSE_SPECTRAL_STFT_H_
#define UNCSE_SPECTRAL_STFT_H_

#include <span>
#include <vector>

#include "base/common.h"

namespace uncse {

struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  size_t Size() const { return samples.size(); }
  /// Throws std::invalid_argument if empty, non-finite or sample_rate <= 0.
  void Check() const;
};

/// Periodic Hann analysis/synthesis. fft_size always equals frame_len.
struct StftConfig {
  int frame_len = 512;
  int hop = 256;

  int FftSize() const { return frame_len; }
  int NumBins() const { return frame_len / 2 + 1; }
  /// Zeros added in front of the signal (and at least this many at the end).
  int Padding() const { return frame_len - hop; }
  /// Rejects odd frame lengths and hops that do not split the frame into >= 2
  /// equal parts (the periodic Hann window is COLA only for hop = N/k, k >= 2).
  void Check() const;

  bool operator==(const StftConfig &other) const = default;
};

struct ComplexSpectrogram {
  ComplexGrid coeffs;  // T x F
  StftConfig config;
  size_t original_len = 0;

  int NumFrames() const { return static_cast<int>(coeffs.rows()); }
  int NumBins() const { return static_cast<int>(coeffs.cols()); }
};

/// Frames needed for a signal of the given length: ceil((len + pad) / hop).
int NumFrames(size_t signal_len, const StftConfig &cfg);

std::vector<double> HannWindow(int frame_len);

ComplexSpectrogram Stft(const Waveform &wave, const StftConfig &cfg);
ComplexSpectrogram Stft(std::span<const double> samples, const StftConfig &cfg);

/// Weighted overlap-add synthesis, normalised by the window-square overlap sum
/// and trimmed back to original_len samples.
Waveform Istft(const ComplexSpectrogram &spec, const StftConfig &cfg,
               int sample_rate = 16000);

/// Transpose of Stft under <U, V> = sum Re(conj(U) V) over the stored bins.
std::vector<double> StftAdjoint(const ComplexSpectrogram &spec,
                                const StftConfig &cfg);

/// Transpose of Istft: maps dL/d(samples) to dL/dRe + i dL/dIm of the
/// onesided coefficients. `num_frames` and the gradient length fix the
/// geometry.
ComplexSpectrogram IstftAdjoint(std::span<const double> grad, int num_frames,
                                const StftConfig &cfg);

RealGrid Magnitude(const ComplexSpectrogram &spec);
/// atan2 convention; a zero coefficient has phase 0.
RealGrid Phase(const ComplexSpectrogram &spec);
ComplexSpectrogram FromPolar(const RealGrid &magnitude, const RealGrid &phase,
                             const StftConfig &cfg, size_t original_len);

}  // namespace uncse

#endif  // UNCSE_SPECTRAL_STFT_H_
