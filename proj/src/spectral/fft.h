// src/spectral/fft.h

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

#ifndef UNCSE_SPECTRAL_FFT_H_
#define UNCSE_SPECTRAL_FFT_H_

#include <span>

#include "base/common.h"

namespace uncse {

/// Real-input DFT of a fixed even length backed by FFTW.
/// Plans are created under a global lock; each instance owns its buffers, so
/// an instance must not be shared between threads, but distinct instances can
/// run concurrently.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  int Size() const { return size_; }
  int NumBins() const { return size_ / 2 + 1; }

  /// out[k] = sum_n in[n] exp(-2 pi i k n / N), k = 0..N/2.
  void Forward(std::span<const double> in, std::span<Complex> out);

  /// Inverse of Forward including the 1/N factor. Imaginary parts of the DC
  /// and Nyquist bins are ignored (Hermitian reconstruction).
  void Inverse(std::span<const Complex> in, std::span<double> out);

 private:
  int size_;
  double *real_buf_;
  void *complex_buf_;
  void *forward_plan_;
  void *inverse_plan_;
};

}  // namespace uncse

#endif  // UNCSE_SPECTRAL_FFT_H_
