// src/data/synth.h

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

#ifndef UNCSE_DATA_SYNTH_H_
#define UNCSE_DATA_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "spectral/stft.h"

namespace uncse {

struct SpeechSynthConfig {
  int sample_rate = 16000;
  double pitch_min_hz = 80.0;
  double pitch_max_hz = 300.0;
  double pause_fraction_min = 0.1;
  double pause_fraction_max = 0.35;
  double target_rms = 0.1;
  void Check() const;
};

enum class SegmentKind { kVoiced, kUnvoiced, kPause };

struct SpeechSegment {
  SegmentKind kind;
  size_t begin = 0;  // samples, half-open
  size_t end = 0;
};

struct SynthSpeechResult {
  Waveform wave;
  std::vector<SpeechSegment> segments;
  std::vector<double> pitch_hz;  // per sample, 0 outside voiced segments
};

/// Speech-like signal: a harmonic source with drifting pitch, three formant
/// resonators, voiced/unvoiced/pause segments (silent pauses), RMS-normalised.
SynthSpeechResult SynthSpeechDetailed(uint64_t seed, double duration_s,
                                      const SpeechSynthConfig &cfg = {});
Waveform SynthSpeech(uint64_t seed, double duration_s,
                     const SpeechSynthConfig &cfg = {});

enum class NoiseKind { kWhite, kPink, kBabbleProxy, kAmplitudeModulated };

std::string NoiseKindName(NoiseKind kind);
NoiseKind ParseNoiseKind(const std::string &name);

inline constexpr double kNoiseRms = 0.1;
inline constexpr int kBabbleTalkers = 6;

/// white: Gaussian; pink: 1/f power via spectral shaping; babble_proxy: sum of
/// six shifted synthetic speech streams; amplitude_modulated: white noise
/// times a slow sinusoidal envelope. Nominal RMS 0.1.
Waveform SynthNoise(NoiseKind kind, uint64_t seed, double duration_s,
                    int sample_rate = 16000);

struct Mixture {
  Waveform mixture;
  Waveform scaled_noise;
};

/// Removes the projection of the noise onto the speech, then scales it so
/// that 10 log10(|s|^2 / |n'|^2) = snr_db over the whole utterance, and
/// returns s + n'. With n' orthogonal to s, SI-SDR(s, s + n') = snr_db.
Mixture MixAtSnr(const Waveform &speech, const Waveform &noise, double snr_db);

/// 10 log10(|s|^2 / |n|^2).
double SnrDb(const Waveform &speech, const Waveform &noise);

}  // namespace uncse

#endif  // UNCSE_DATA_SYNTH_H_
