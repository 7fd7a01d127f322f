// src/spectral/fft.cc

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

#include "spectral/fft.h"

#include <fftw3.h>

#include <mutex>

namespace uncse {

namespace {
std::mutex &PlannerMutex() {
  static std::mutex mutex;
  return mutex;
}
}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size < 2 || size % 2 != 0)
    UNCSE_ERR << "RealFft: size must be even and >= 2, got " << size;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  real_buf_ = fftw_alloc_real(size);
  auto *cbuf = fftw_alloc_complex(size / 2 + 1);
  complex_buf_ = cbuf;
  forward_plan_ = fftw_plan_dft_r2c_1d(size, real_buf_, cbuf, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(size, cbuf, real_buf_,
                                       FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_buf_);
  fftw_free(complex_buf_);
}

void RealFft::Forward(std::span<const double> in, std::span<Complex> out) {
  if (static_cast<int>(in.size()) != size_ ||
      static_cast<int>(out.size()) != NumBins())
    UNCSE_ERR << "RealFft::Forward: size mismatch";
  std::copy(in.begin(), in.end(), real_buf_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  auto *cbuf = static_cast<fftw_complex *>(complex_buf_);
  for (int k = 0; k < NumBins(); ++k) out[k] = Complex(cbuf[k][0], cbuf[k][1]);
}

void RealFft::Inverse(std::span<const Complex> in, std::span<double> out) {
  if (static_cast<int>(in.size()) != NumBins() ||
      static_cast<int>(out.size()) != size_)
    UNCSE_ERR << "RealFft::Inverse: size mismatch";
  auto *cbuf = static_cast<fftw_complex *>(complex_buf_);
  for (int k = 0; k < NumBins(); ++k) {
    cbuf[k][0] = in[k].real();
    cbuf[k][1] = in[k].imag();
  }
  cbuf[0][1] = 0.0;
  cbuf[NumBins() - 1][1] = 0.0;
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / size_;
  for (int n = 0; n < size_; ++n) out[n] = real_buf_[n] * scale;
}

}  // namespace uncse
