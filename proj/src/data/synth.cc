// src/data/synth.cc

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

#include "data/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "spectral/fft.h"

namespace uncse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxPlanAttempts = 1000;

size_t NumSamples(double duration_s, int sample_rate) {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s))
    UNCSE_ERR << "duration must be positive, got " << duration_s;
  if (sample_rate <= 0) UNCSE_ERR << "sample rate must be positive";
  return std::max<size_t>(1, std::lround(duration_s * sample_rate));
}

double Uniform(std::mt19937_64 &rng, double lo, double hi) {
  return lo + (hi - lo) * UniformUnit(rng);
}

// Bandpass biquad with 0 dB peak gain (direct form I).
class Resonator {
 public:
  Resonator(double center_hz, double bandwidth_hz, int sample_rate) {
    const double w = kTwoPi * center_hz / sample_rate;
    const double alpha = std::sin(w) * bandwidth_hz / (2.0 * center_hz);
    const double a0 = 1.0 + alpha;
    b0_ = alpha / a0;
    a1_ = -2.0 * std::cos(w) / a0;
    a2_ = (1.0 - alpha) / a0;
  }
  double Process(double x) {
    const double y = b0_ * (x - x2_) - a1_ * y1_ - a2_ * y2_;
    x2_ = x1_;
    x1_ = x;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double b0_, a1_, a2_;
  double x1_ = 0, x2_ = 0, y1_ = 0, y2_ = 0;
};

std::vector<SpeechSegment> PlanSegments(size_t n, int sample_rate,
                                        const SpeechSynthConfig &cfg,
                                        std::mt19937_64 &rng) {
  std::vector<SpeechSegment> plan;
  for (int attempt = 0; attempt < kMaxPlanAttempts; ++attempt) {
    plan.clear();
    size_t pos = 0, paused = 0;
    SegmentKind prev = SegmentKind::kPause;
    while (pos < n) {
      SegmentKind kind;
      const double u = UniformUnit(rng);
      if (plan.empty()) {
        kind = SegmentKind::kVoiced;
      } else if (prev == SegmentKind::kPause) {
        kind = u < 0.75 ? SegmentKind::kVoiced : SegmentKind::kUnvoiced;
      } else {
        kind = u < 0.55   ? SegmentKind::kVoiced
               : u < 0.75 ? SegmentKind::kUnvoiced
                          : SegmentKind::kPause;
      }
      double len_s;
      switch (kind) {
        case SegmentKind::kVoiced: len_s = Uniform(rng, 0.08, 0.30); break;
        case SegmentKind::kUnvoiced: len_s = Uniform(rng, 0.04, 0.12); break;
        default: len_s = Uniform(rng, 0.05, 0.25); break;
      }
      const size_t end =
          std::min(n, pos + std::max<size_t>(1, std::lround(len_s * sample_rate)));
      plan.push_back({kind, pos, end});
      if (kind == SegmentKind::kPause) paused += end - pos;
      pos = end;
      prev = kind;
    }
    const double frac = static_cast<double>(paused) / n;
    if (frac >= cfg.pause_fraction_min && frac <= cfg.pause_fraction_max)
      break;
  }
  return plan;
}

// Raised-cosine fade over `ramp` samples at both segment edges.
double Fade(size_t i, size_t len, size_t ramp) {
  const size_t edge = std::min(i, len - 1 - i);
  if (edge >= ramp) return 1.0;
  return 0.5 - 0.5 * std::cos(std::numbers::pi * (edge + 0.5) / ramp);
}

void NormaliseRms(std::vector<double> *x, double target) {
  double energy = 0.0;
  for (double v : *x) energy += v * v;
  if (energy <= 0.0) return;
  const double scale = target / std::sqrt(energy / x->size());
  for (double &v : *x) v *= scale;
}

}  // namespace

void SpeechSynthConfig::Check() const {
  if (sample_rate <= 0) UNCSE_ERR << "SpeechSynthConfig: bad sample rate";
  if (!(pitch_min_hz > 0.0 && pitch_min_hz < pitch_max_hz &&
        pitch_max_hz < 0.25 * sample_rate))
    UNCSE_ERR << "SpeechSynthConfig: bad pitch range";
  if (!(pause_fraction_min >= 0.0 && pause_fraction_min <= pause_fraction_max &&
        pause_fraction_max < 1.0))
    UNCSE_ERR << "SpeechSynthConfig: bad pause fraction range";
  if (!(target_rms > 0.0)) UNCSE_ERR << "SpeechSynthConfig: bad target RMS";
}

SynthSpeechResult SynthSpeechDetailed(uint64_t seed, double duration_s,
                                      const SpeechSynthConfig &cfg) {
  cfg.Check();
  const int sr = cfg.sample_rate;
  const size_t n = NumSamples(duration_s, sr);
  std::mt19937_64 rng(MixSeed(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);

  SynthSpeechResult out;
  out.segments = PlanSegments(n, sr, cfg, rng);
  out.wave.sample_rate = sr;
  out.wave.samples.assign(n, 0.0);
  out.pitch_hz.assign(n, 0.0);
  std::vector<double> &x = out.wave.samples;

  const double log_lo = std::log(cfg.pitch_min_hz);
  const double log_hi = std::log(cfg.pitch_max_hz);
  // Speaker register, then per-segment drift around it.
  const double base = Uniform(rng, log_lo + 0.2 * (log_hi - log_lo),
                              log_hi - 0.3 * (log_hi - log_lo));
  const size_t ramp = static_cast<size_t>(0.01 * sr);
  const double max_harmonic_hz = 0.45 * sr;

  for (const SpeechSegment &seg : out.segments) {
    const size_t len = seg.end - seg.begin;
    if (seg.kind == SegmentKind::kPause) continue;
    if (seg.kind == SegmentKind::kVoiced) {
      const double f_start =
          std::clamp(base + 0.15 * gauss(rng), log_lo, log_hi);
      const double f_end =
          std::clamp(f_start + 0.2 * gauss(rng), log_lo, log_hi);
      Resonator formants[3] = {
          Resonator(Uniform(rng, 300, 800), Uniform(rng, 60, 120), sr),
          Resonator(Uniform(rng, 900, 2200), Uniform(rng, 80, 150), sr),
          Resonator(Uniform(rng, 2200, 3200), Uniform(rng, 100, 200), sr)};
      const double gains[3] = {1.0, 0.7, 0.4};
      const double amp = Uniform(rng, 0.6, 1.0);
      double phase = Uniform(rng, 0.0, kTwoPi);
      for (size_t i = 0; i < len; ++i) {
        const double frac = len > 1 ? static_cast<double>(i) / (len - 1) : 0.0;
        const double f0 = std::exp(f_start + (f_end - f_start) * frac);
        out.pitch_hz[seg.begin + i] = f0;
        phase = std::fmod(phase + kTwoPi * f0 / sr, kTwoPi);
        double src = 0.0;
        for (int k = 1; k * f0 < max_harmonic_hz; ++k)
          src += std::sin(k * phase) / k;
        double y = 0.0;
        for (int j = 0; j < 3; ++j) y += gains[j] * formants[j].Process(src);
        x[seg.begin + i] = amp * Fade(i, len, ramp) * y;
      }
    } else {
      Resonator fricative(Uniform(rng, 2500, 5000), Uniform(rng, 800, 1500), sr);
      const double amp = Uniform(rng, 0.1, 0.3);
      for (size_t i = 0; i < len; ++i)
        x[seg.begin + i] =
            amp * Fade(i, len, ramp) * fricative.Process(gauss(rng));
    }
  }
  NormaliseRms(&x, cfg.target_rms);
  return out;
}

Waveform SynthSpeech(uint64_t seed, double duration_s,
                     const SpeechSynthConfig &cfg) {
  return SynthSpeechDetailed(seed, duration_s, cfg).wave;
}

std::string NoiseKindName(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kWhite: return "white";
    case NoiseKind::kPink: return "pink";
    case NoiseKind::kBabbleProxy: return "babble_proxy";
    case NoiseKind::kAmplitudeModulated: return "amplitude_modulated";
  }
  return "unknown";
}

NoiseKind ParseNoiseKind(const std::string &name) {
  for (NoiseKind k : {NoiseKind::kWhite, NoiseKind::kPink,
                      NoiseKind::kBabbleProxy, NoiseKind::kAmplitudeModulated})
    if (NoiseKindName(k) == name) return k;
  throw ConfigError("unknown noise kind '" + name + "'");
}

Waveform SynthNoise(NoiseKind kind, uint64_t seed, double duration_s,
                    int sample_rate) {
  const size_t n = NumSamples(duration_s, sample_rate);
  std::mt19937_64 rng(MixSeed(seed ^ 0x6e6f697365ULL));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Waveform out;
  out.sample_rate = sample_rate;
  std::vector<double> &x = out.samples;
  switch (kind) {
    case NoiseKind::kWhite:
      x.resize(n);
      for (double &v : x) v = kNoiseRms * gauss(rng);
      break;
    case NoiseKind::kPink: {
      const size_t m = n + (n & 1);
      if (m < 2) {
        x.assign(n, kNoiseRms);
        break;
      }
      std::vector<double> white(m);
      for (double &v : white) v = gauss(rng);
      RealFft fft(static_cast<int>(m));
      std::vector<Complex> spec(fft.NumBins());
      fft.Forward(white, spec);
      spec[0] = 0.0;
      for (size_t k = 1; k < spec.size(); ++k)
        spec[k] /= std::sqrt(static_cast<double>(k));
      fft.Inverse(spec, white);
      x.assign(white.begin(), white.begin() + n);
      NormaliseRms(&x, kNoiseRms);
      break;
    }
    case NoiseKind::kBabbleProxy: {
      x.assign(n, 0.0);
      for (int t = 0; t < kBabbleTalkers; ++t) {
        const Waveform talker =
            SynthSpeech(MixSeed(seed + 1 + t), duration_s);
        const size_t shift = rng() % n;
        for (size_t i = 0; i < n; ++i)
          x[i] += talker.samples[(i + shift) % n];
      }
      NormaliseRms(&x, kNoiseRms);
      break;
    }
    case NoiseKind::kAmplitudeModulated: {
      const double rate = Uniform(rng, 0.5, 4.0);
      const double phase = Uniform(rng, 0.0, kTwoPi);
      const double depth = Uniform(rng, 0.5, 0.9);
      x.resize(n);
      for (size_t i = 0; i < n; ++i)
        x[i] = gauss(rng) *
               (1.0 + depth * std::sin(kTwoPi * rate * i / sample_rate + phase));
      NormaliseRms(&x, kNoiseRms);
      break;
    }
  }
  return out;
}

double SnrDb(const Waveform &speech, const Waveform &noise) {
  double ps = 0.0, pn = 0.0;
  for (double v : speech.samples) ps += v * v;
  for (double v : noise.samples) pn += v * v;
  return 10.0 * std::log10(ps / pn);
}

Mixture MixAtSnr(const Waveform &speech, const Waveform &noise, double snr_db) {
  if (speech.Size() != noise.Size() || speech.Size() == 0)
    UNCSE_ERR << "MixAtSnr: signals must be non-empty and of equal length";
  if (!std::isfinite(snr_db)) UNCSE_ERR << "MixAtSnr: SNR must be finite";
  double ps = 0.0, pn = 0.0, cross = 0.0;
  for (size_t i = 0; i < speech.Size(); ++i) {
    ps += speech.samples[i] * speech.samples[i];
    pn += noise.samples[i] * noise.samples[i];
    cross += speech.samples[i] * noise.samples[i];
  }
  if (ps <= 0.0 || pn <= 0.0) UNCSE_ERR << "MixAtSnr: silent input";
  // Drop the component of the noise along the speech.
  const double proj = cross / ps;
  std::vector<double> residual(noise.Size());
  double pr = 0.0;
  for (size_t i = 0; i < noise.Size(); ++i) {
    residual[i] = noise.samples[i] - proj * speech.samples[i];
    pr += residual[i] * residual[i];
  }
  if (!(pr > 1e-12 * pn)) UNCSE_ERR << "MixAtSnr: noise is proportional to speech";
  const double gain = std::sqrt(ps / (pr * std::pow(10.0, snr_db / 10.0)));
  Mixture out;
  out.scaled_noise.sample_rate = noise.sample_rate;
  out.mixture.sample_rate = speech.sample_rate;
  out.scaled_noise.samples.resize(noise.Size());
  out.mixture.samples.resize(speech.Size());
  for (size_t i = 0; i < speech.Size(); ++i) {
    out.scaled_noise.samples[i] = gain * residual[i];
    out.mixture.samples[i] = speech.samples[i] + out.scaled_noise.samples[i];
  }
  return out;
}

}  // namespace uncse
