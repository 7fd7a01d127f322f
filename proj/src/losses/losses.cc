// src/losses/losses.cc

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

#include "losses/losses.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uncse {

namespace {

void CheckShapes(const ComplexSpectrogram &clean,
                 const ComplexSpectrogram &noisy, const RealGrid &grid) {
  if (clean.coeffs.rows() != noisy.coeffs.rows() ||
      clean.coeffs.cols() != noisy.coeffs.cols() ||
      grid.rows() != noisy.coeffs.rows() || grid.cols() != noisy.coeffs.cols())
    UNCSE_ERR << "loss: shape mismatch (clean " << clean.coeffs.rows() << "x"
              << clean.coeffs.cols() << ", noisy " << noisy.coeffs.rows()
              << "x" << noisy.coeffs.cols() << ", output " << grid.rows()
              << "x" << grid.cols() << ")";
}

// dL/dG for Y = G X, given dL/dRe(Y) + i dL/dIm(Y).
double GainGradient(const Complex &grad_y, const Complex &x) {
  return grad_y.real() * x.real() + grad_y.imag() * x.imag();
}

}  // namespace

LossReport NllPosterior(const ComplexSpectrogram &clean,
                        const ComplexSpectrogram &noisy,
                        const PosteriorField &field) {
  CheckShapes(clean, noisy, field.wiener);
  CheckShapes(clean, noisy, field.variance);
  const Eigen::Index rows = noisy.coeffs.rows(), cols = noisy.coeffs.cols();
  const double inv_count = 1.0 / static_cast<double>(rows * cols);
  LossReport out;
  out.grad_wiener.resize(rows, cols);
  out.grad_log_variance.resize(rows, cols);
  double sum = 0.0;
  for (Eigen::Index t = 0; t < rows; ++t) {
    for (Eigen::Index f = 0; f < cols; ++f) {
      const Complex x = noisy.coeffs(t, f);
      const Complex r = clean.coeffs(t, f) - field.wiener(t, f) * x;
      const double lam = std::max(field.variance(t, f), kVarianceFloor);
      const double r2 = std::norm(r);
      sum += std::log(lam) + r2 / lam;
      out.grad_wiener(t, f) = -2.0 * GainGradient(r, x) / lam * inv_count;
      out.grad_log_variance(t, f) = (1.0 - r2 / lam) * inv_count;
    }
  }
  out.value = sum * inv_count;
  return out;
}

LossReport Mse(const ComplexSpectrogram &clean, const ComplexSpectrogram &noisy,
               const RealGrid &wiener) {
  CheckShapes(clean, noisy, wiener);
  const Eigen::Index rows = noisy.coeffs.rows(), cols = noisy.coeffs.cols();
  const double inv_count = 1.0 / static_cast<double>(rows * cols);
  LossReport out;
  out.grad_wiener.resize(rows, cols);
  out.grad_log_variance = RealGrid::Zero(rows, cols);
  double sum = 0.0;
  for (Eigen::Index t = 0; t < rows; ++t) {
    for (Eigen::Index f = 0; f < cols; ++f) {
      const Complex x = noisy.coeffs(t, f);
      const Complex r = clean.coeffs(t, f) - wiener(t, f) * x;
      sum += std::norm(r);
      out.grad_wiener(t, f) = -2.0 * GainGradient(r, x) * inv_count;
    }
  }
  out.value = sum * inv_count;
  return out;
}

SignalLossReport SiSdrLoss(std::span<const double> reference,
                           std::span<const double> estimate) {
  if (reference.size() != estimate.size() || reference.empty())
    UNCSE_ERR << "SiSdrLoss: length mismatch (" << reference.size() << " vs "
              << estimate.size() << ")";
  double ref_energy = 0.0, dot = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    ref_energy += reference[i] * reference[i];
    dot += estimate[i] * reference[i];
  }
  if (!(ref_energy > 0.0)) UNCSE_ERR << "SiSdrLoss: silent reference";

  SignalLossReport out;
  out.grad.assign(estimate.size(), 0.0);
  const double alpha = dot / ref_energy;
  const double target = alpha * alpha * ref_energy;
  std::vector<double> err(estimate.size());
  double err_energy = 0.0;
  for (size_t i = 0; i < estimate.size(); ++i) {
    err[i] = alpha * reference[i] - estimate[i];
    err_energy += err[i] * err[i];
  }
  if (!(target > 0.0)) {
    out.value = kSiSdrCapDb;
    return out;
  }
  if (!(err_energy > 0.0)) {
    out.value = -kSiSdrCapDb;
    return out;
  }
  const double sdr = 10.0 * std::log10(target / err_energy);
  if (sdr >= kSiSdrCapDb || sdr <= -kSiSdrCapDb) {
    out.value = -std::clamp(sdr, -kSiSdrCapDb, kSiSdrCapDb);
    return out;
  }
  out.value = -sdr;
  // d sdr / d est = 10/ln10 * (2 alpha s / target + 2 e / err_energy)
  const double c = -10.0 / std::numbers::ln10;
  const double a_coef = 2.0 * alpha / target;
  const double e_coef = 2.0 / err_energy;
  for (size_t i = 0; i < estimate.size(); ++i)
    out.grad[i] = c * (a_coef * reference[i] + e_coef * err[i]);
  return out;
}

Waveform AmapEnhance(const ComplexSpectrogram &noisy,
                     const PosteriorField &field, const StftConfig &cfg) {
  const RealGrid gain = AmapGainGrid(field, Magnitude(noisy));
  return Istft(ApplyMask(noisy, gain), cfg);
}

Waveform WienerEnhance(const ComplexSpectrogram &noisy, const RealGrid &wiener,
                       const StftConfig &cfg) {
  return Istft(ApplyMask(noisy, wiener), cfg);
}

LossReport SiSdrAmapPath(const Waveform &clean, const ComplexSpectrogram &noisy,
                         const PosteriorField &field, const StftConfig &cfg) {
  CheckShapes(noisy, noisy, field.wiener);
  CheckShapes(noisy, noisy, field.variance);
  if (clean.Size() != noisy.original_len)
    UNCSE_ERR << "SiSdrAmapPath: clean waveform has " << clean.Size()
              << " samples, spectrogram covers " << noisy.original_len;
  const Eigen::Index rows = noisy.coeffs.rows(), cols = noisy.coeffs.cols();
  RealGrid gain(rows, cols), d_wiener(rows, cols), d_variance(rows, cols);
  for (Eigen::Index t = 0; t < rows; ++t) {
    for (Eigen::Index f = 0; f < cols; ++f) {
      const AmapGainGrad g = AmapGainWithGrad(
          field.wiener(t, f), field.variance(t, f), std::abs(noisy.coeffs(t, f)));
      gain(t, f) = g.gain;
      d_wiener(t, f) = g.d_wiener;
      d_variance(t, f) = g.d_variance;
    }
  }
  const Waveform estimate = Istft(ApplyMask(noisy, gain), cfg);
  const SignalLossReport sisdr = SiSdrLoss(clean.samples, estimate.samples);
  const ComplexSpectrogram grad_y =
      IstftAdjoint(sisdr.grad, noisy.NumFrames(), cfg);

  LossReport out;
  out.value = sisdr.value;
  out.grad_wiener.resize(rows, cols);
  out.grad_log_variance.resize(rows, cols);
  for (Eigen::Index t = 0; t < rows; ++t) {
    for (Eigen::Index f = 0; f < cols; ++f) {
      const double d_gain = GainGradient(grad_y.coeffs(t, f), noisy.coeffs(t, f));
      out.grad_wiener(t, f) = d_gain * d_wiener(t, f);
      out.grad_log_variance(t, f) =
          d_gain * d_variance(t, f) * field.variance(t, f);
    }
  }
  return out;
}

LossReport SiSdrWienerPath(const Waveform &clean,
                           const ComplexSpectrogram &noisy,
                           const RealGrid &wiener, const StftConfig &cfg) {
  CheckShapes(noisy, noisy, wiener);
  if (clean.Size() != noisy.original_len)
    UNCSE_ERR << "SiSdrWienerPath: clean waveform has " << clean.Size()
              << " samples, spectrogram covers " << noisy.original_len;
  const Waveform estimate = WienerEnhance(noisy, wiener, cfg);
  const SignalLossReport sisdr = SiSdrLoss(clean.samples, estimate.samples);
  const ComplexSpectrogram grad_y =
      IstftAdjoint(sisdr.grad, noisy.NumFrames(), cfg);
  const Eigen::Index rows = noisy.coeffs.rows(), cols = noisy.coeffs.cols();
  LossReport out;
  out.value = sisdr.value;
  out.grad_wiener.resize(rows, cols);
  out.grad_log_variance = RealGrid::Zero(rows, cols);
  for (Eigen::Index t = 0; t < rows; ++t)
    for (Eigen::Index f = 0; f < cols; ++f)
      out.grad_wiener(t, f) =
          GainGradient(grad_y.coeffs(t, f), noisy.coeffs(t, f));
  return out;
}

HybridReport Hybrid(const ComplexSpectrogram &clean,
                    const ComplexSpectrogram &noisy,
                    const PosteriorField &field, const Waveform &clean_wave,
                    double beta, const StftConfig &cfg) {
  if (!(beta >= 0.0 && beta <= 1.0))
    UNCSE_ERR << "Hybrid: beta must lie in [0, 1], got " << beta;
  const LossReport nll = NllPosterior(clean, noisy, field);
  const LossReport sisdr = SiSdrAmapPath(clean_wave, noisy, field, cfg);
  HybridReport out;
  out.nll = nll.value;
  out.si_sdr = sisdr.value;
  out.value = beta * nll.value + (1.0 - beta) * sisdr.value;
  out.grad_wiener = beta * nll.grad_wiener + (1.0 - beta) * sisdr.grad_wiener;
  out.grad_log_variance =
      beta * nll.grad_log_variance + (1.0 - beta) * sisdr.grad_log_variance;
  return out;
}

}  // namespace uncse
