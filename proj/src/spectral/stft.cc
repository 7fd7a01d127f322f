// src/spectral/stft.cc

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

#include "spectral/stft.h"

#include <cmath>
#include <numbers>

#include "spectral/fft.h"

namespace uncse {

void Waveform::Check() const {
  if (samples.empty()) UNCSE_ERR << "Waveform: empty signal";
  if (sample_rate <= 0) UNCSE_ERR << "Waveform: sample_rate must be positive";
  for (double x : samples)
    if (!std::isfinite(x)) UNCSE_ERR << "Waveform: non-finite sample";
}

void StftConfig::Check() const {
  if (frame_len < 2 || frame_len % 2 != 0)
    UNCSE_ERR << "StftConfig: frame_len must be even and >= 2, got "
              << frame_len;
  if (hop <= 0 || hop >= frame_len || frame_len % hop != 0)
    UNCSE_ERR << "StftConfig: hop " << hop << " is not COLA for a Hann window"
              << " of length " << frame_len
              << " (need hop = frame_len / k, k >= 2)";
}

int NumFrames(size_t signal_len, const StftConfig &cfg) {
  const size_t covered = signal_len + cfg.Padding();
  return static_cast<int>((covered + cfg.hop - 1) / cfg.hop);
}

std::vector<double> HannWindow(int frame_len) {
  std::vector<double> w(frame_len);
  for (int n = 0; n < frame_len; ++n)
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / frame_len);
  return w;
}

namespace {

size_t PaddedLength(int num_frames, const StftConfig &cfg) {
  return static_cast<size_t>(num_frames - 1) * cfg.hop + cfg.frame_len;
}

// Sum over frames of window^2, on the padded time axis.
std::vector<double> WindowSquareSum(int num_frames, const StftConfig &cfg,
                                    const std::vector<double> &window) {
  std::vector<double> sum(PaddedLength(num_frames, cfg), 0.0);
  for (int t = 0; t < num_frames; ++t) {
    const size_t start = static_cast<size_t>(t) * cfg.hop;
    for (int n = 0; n < cfg.frame_len; ++n)
      sum[start + n] += window[n] * window[n];
  }
  return sum;
}

void CheckGeometry(const ComplexSpectrogram &spec, const StftConfig &cfg) {
  cfg.Check();
  if (!(spec.config == cfg))
    UNCSE_ERR << "spectrogram was computed with a different StftConfig";
  if (spec.NumBins() != cfg.NumBins())
    UNCSE_ERR << "spectrogram has " << spec.NumBins() << " bins, expected "
              << cfg.NumBins();
  if (spec.original_len == 0 ||
      spec.NumFrames() != NumFrames(spec.original_len, cfg))
    UNCSE_ERR << "spectrogram has " << spec.NumFrames()
              << " frames, inconsistent with original length "
              << spec.original_len;
}

}  // namespace

ComplexSpectrogram Stft(std::span<const double> samples,
                        const StftConfig &cfg) {
  cfg.Check();
  if (samples.empty()) UNCSE_ERR << "Stft: empty signal";
  const int num_frames = NumFrames(samples.size(), cfg);
  const int pad = cfg.Padding();
  std::vector<double> padded(PaddedLength(num_frames, cfg), 0.0);
  std::copy(samples.begin(), samples.end(), padded.begin() + pad);

  const std::vector<double> window = HannWindow(cfg.frame_len);
  RealFft fft(cfg.FftSize());
  ComplexSpectrogram spec;
  spec.config = cfg;
  spec.original_len = samples.size();
  spec.coeffs.resize(num_frames, cfg.NumBins());
  std::vector<double> frame(cfg.frame_len);
  for (int t = 0; t < num_frames; ++t) {
    const double *src = padded.data() + static_cast<size_t>(t) * cfg.hop;
    for (int n = 0; n < cfg.frame_len; ++n) frame[n] = src[n] * window[n];
    fft.Forward(frame, std::span<Complex>(spec.coeffs.row(t).data(),
                                          cfg.NumBins()));
  }
  return spec;
}

ComplexSpectrogram Stft(const Waveform &wave, const StftConfig &cfg) {
  wave.Check();
  return Stft(std::span<const double>(wave.samples), cfg);
}

Waveform Istft(const ComplexSpectrogram &spec, const StftConfig &cfg,
               int sample_rate) {
  CheckGeometry(spec, cfg);
  const int num_frames = spec.NumFrames();
  const std::vector<double> window = HannWindow(cfg.frame_len);
  std::vector<double> padded(PaddedLength(num_frames, cfg), 0.0);
  RealFft fft(cfg.FftSize());
  std::vector<double> frame(cfg.frame_len);
  for (int t = 0; t < num_frames; ++t) {
    fft.Inverse(std::span<const Complex>(spec.coeffs.row(t).data(),
                                         cfg.NumBins()),
                frame);
    double *dst = padded.data() + static_cast<size_t>(t) * cfg.hop;
    for (int n = 0; n < cfg.frame_len; ++n) dst[n] += frame[n] * window[n];
  }
  const std::vector<double> wsum = WindowSquareSum(num_frames, cfg, window);
  Waveform out;
  out.sample_rate = sample_rate;
  out.samples.resize(spec.original_len);
  const size_t pad = cfg.Padding();
  for (size_t i = 0; i < spec.original_len; ++i)
    out.samples[i] = padded[i + pad] / wsum[i + pad];
  return out;
}

std::vector<double> StftAdjoint(const ComplexSpectrogram &spec,
                                const StftConfig &cfg) {
  CheckGeometry(spec, cfg);
  const int num_frames = spec.NumFrames();
  const int bins = cfg.NumBins();
  const std::vector<double> window = HannWindow(cfg.frame_len);
  std::vector<double> padded(PaddedLength(num_frames, cfg), 0.0);
  RealFft fft(cfg.FftSize());
  std::vector<Complex> halved(bins);
  std::vector<double> frame(cfg.frame_len);
  // sum_k Re(Z_k e^{i 2 pi k n / N}) over stored bins equals N * irfft(Z')
  // with interior bins halved; DC and Nyquist contribute their real parts.
  for (int t = 0; t < num_frames; ++t) {
    for (int k = 0; k < bins; ++k) {
      const bool edge = (k == 0 || k == bins - 1);
      halved[k] = edge ? Complex(spec.coeffs(t, k).real(), 0.0)
                       : 0.5 * spec.coeffs(t, k);
    }
    fft.Inverse(halved, frame);
    double *dst = padded.data() + static_cast<size_t>(t) * cfg.hop;
    for (int n = 0; n < cfg.frame_len; ++n)
      dst[n] += frame[n] * cfg.frame_len * window[n];
  }
  const size_t pad = cfg.Padding();
  return std::vector<double>(padded.begin() + pad,
                             padded.begin() + pad + spec.original_len);
}

ComplexSpectrogram IstftAdjoint(std::span<const double> grad, int num_frames,
                                const StftConfig &cfg) {
  cfg.Check();
  if (grad.empty() || num_frames != NumFrames(grad.size(), cfg))
    UNCSE_ERR << "IstftAdjoint: " << num_frames
              << " frames inconsistent with gradient length " << grad.size();
  const std::vector<double> window = HannWindow(cfg.frame_len);
  const std::vector<double> wsum = WindowSquareSum(num_frames, cfg, window);
  const size_t pad = cfg.Padding();
  std::vector<double> padded(PaddedLength(num_frames, cfg), 0.0);
  for (size_t i = 0; i < grad.size(); ++i)
    padded[i + pad] = grad[i] / wsum[i + pad];

  const int bins = cfg.NumBins();
  const double inv_n = 1.0 / cfg.frame_len;
  RealFft fft(cfg.FftSize());
  ComplexSpectrogram out;
  out.config = cfg;
  out.original_len = grad.size();
  out.coeffs.resize(num_frames, bins);
  std::vector<double> frame(cfg.frame_len);
  std::vector<Complex> spectrum(bins);
  for (int t = 0; t < num_frames; ++t) {
    const double *src = padded.data() + static_cast<size_t>(t) * cfg.hop;
    for (int n = 0; n < cfg.frame_len; ++n) frame[n] = src[n] * window[n];
    fft.Forward(frame, spectrum);
    for (int k = 0; k < bins; ++k) {
      const bool edge = (k == 0 || k == bins - 1);
      // Imaginary parts of DC/Nyquist do not reach the output.
      out.coeffs(t, k) = edge ? Complex(spectrum[k].real() * inv_n, 0.0)
                              : 2.0 * inv_n * spectrum[k];
    }
  }
  return out;
}

RealGrid Magnitude(const ComplexSpectrogram &spec) {
  return spec.coeffs.cwiseAbs();
}

RealGrid Phase(const ComplexSpectrogram &spec) {
  return spec.coeffs.unaryExpr([](const Complex &z) {
    return z == Complex(0.0, 0.0) ? 0.0 : std::arg(z);
  });
}

ComplexSpectrogram FromPolar(const RealGrid &magnitude, const RealGrid &phase,
                             const StftConfig &cfg, size_t original_len) {
  if (magnitude.rows() != phase.rows() || magnitude.cols() != phase.cols())
    UNCSE_ERR << "FromPolar: shape mismatch";
  ComplexSpectrogram spec;
  spec.config = cfg;
  spec.original_len = original_len;
  spec.coeffs.resize(magnitude.rows(), magnitude.cols());
  for (Eigen::Index t = 0; t < magnitude.rows(); ++t)
    for (Eigen::Index f = 0; f < magnitude.cols(); ++f)
      spec.coeffs(t, f) = std::polar(magnitude(t, f), phase(t, f));
  return spec;
}

}  // namespace uncse
