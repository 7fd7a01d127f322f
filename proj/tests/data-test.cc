// tests/data-test.cc

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

#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>

#include <gtest/gtest.h>

#include "data/corpus.h"
#include "data/synth.h"
#include "data/wav-io.h"
#include "eval/uncert-eval.h"

namespace uncse {
namespace {

double Energy(const Waveform &w) {
  double e = 0.0;
  for (double x : w.samples) e += x * x;
  return e;
}

// Hann-windowed DFT power of x[begin, begin + len) at frequency hz.
double PowerAt(const std::vector<double> &x, size_t begin, size_t len, double hz,
               int sr) {
  std::complex<double> acc = 0.0;
  for (size_t i = 0; i < len; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2 * std::numbers::pi * i / len);
    acc += w * x[begin + i] * std::polar(1.0, -2 * std::numbers::pi * hz * i / sr);
  }
  return std::norm(acc);
}

TEST(SynthSpeechTest, ReproducibleAndNormalised) {
  const Waveform a = SynthSpeech(3, 2.0), b = SynthSpeech(3, 2.0), c = SynthSpeech(4, 2.0);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, c.samples);
  EXPECT_EQ(a.Size(), 32000u);
  EXPECT_NEAR(std::sqrt(Energy(a) / a.Size()), 0.1, 1e-12);
}

TEST(SynthSpeechTest, SegmentsAndPauses) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const SynthSpeechResult r = SynthSpeechDetailed(seed, 3.0);
    ASSERT_FALSE(r.segments.empty());
    EXPECT_EQ(r.segments.front().kind, SegmentKind::kVoiced);
    EXPECT_EQ(r.segments.front().begin, 0u);
    EXPECT_EQ(r.segments.back().end, r.wave.Size());
    size_t paused = 0;
    for (size_t i = 0; i < r.segments.size(); ++i) {
      const SpeechSegment &s = r.segments[i];
      if (i > 0) {
        EXPECT_EQ(s.begin, r.segments[i - 1].end);
      }
      if (s.kind != SegmentKind::kPause) continue;
      paused += s.end - s.begin;
      for (size_t n = s.begin; n < s.end; ++n) ASSERT_EQ(r.wave.samples[n], 0.0);
    }
    const double fraction = static_cast<double>(paused) / r.wave.Size();
    EXPECT_GE(fraction, 0.1);
    EXPECT_LE(fraction, 0.35);
  }
}

TEST(SynthSpeechTest, VoicedFramesAreHarmonic) {
  const int sr = 16000;
  const size_t len = 1024;
  int checked = 0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const SynthSpeechResult r = SynthSpeechDetailed(seed, 3.0);
    for (const SpeechSegment &s : r.segments) {
      if (s.kind != SegmentKind::kVoiced || s.end - s.begin < 3 * len) continue;
      const size_t begin = s.begin + len;
      const double f0 = r.pitch_hz[begin + len / 2];
      ASSERT_GE(f0, 80.0);
      ASSERT_LE(f0, 300.0);
      double on = 0.0, off = 0.0;
      for (int k = 1; k <= 5; ++k) {
        on += PowerAt(r.wave.samples, begin, len, k * f0, sr);
        off += PowerAt(r.wave.samples, begin, len, (k + 0.5) * f0, sr);
      }
      EXPECT_GT(on, 10.0 * off) << "seed " << seed << " f0 " << f0;
      ++checked;
    }
  }
  EXPECT_GT(checked, 3);
}

TEST(SynthSpeechTest, ConfigChecked) {
  SpeechSynthConfig cfg;
  cfg.pitch_min_hz = 400.0;
  EXPECT_THROW(SynthSpeech(1, 1.0, cfg), std::invalid_argument);
  EXPECT_THROW(SynthSpeech(1, 0.0), std::invalid_argument);
}

TEST(SynthNoiseTest, KindsAreReproducibleNearNominalRms) {
  for (const char *name : {"white", "pink", "babble_proxy", "amplitude_modulated"}) {
    const NoiseKind kind = ParseNoiseKind(name);
    EXPECT_EQ(NoiseKindName(kind), name);
    const Waveform a = SynthNoise(kind, 5, 2.0), b = SynthNoise(kind, 5, 2.0);
    EXPECT_EQ(a.samples, b.samples) << name;
    EXPECT_NO_THROW(a.Check());
    const double rms = std::sqrt(Energy(a) / a.Size());
    EXPECT_NEAR(rms, kNoiseRms, 0.3 * kNoiseRms) << name;
  }
  EXPECT_THROW(ParseNoiseKind("brown"), ConfigError);
}

TEST(SynthNoiseTest, WhiteVariance) {
  const Waveform w = SynthNoise(NoiseKind::kWhite, 11, 10.0);
  double mean = 0.0;
  for (double x : w.samples) mean += x;
  mean /= w.Size();
  EXPECT_NEAR(mean, 0.0, 0.003);
  EXPECT_NEAR(Energy(w) / w.Size(), 0.01, 0.0002);
}

// Least-squares slope of band power in dB per octave, 125 Hz to 4 kHz.
TEST(SynthNoiseTest, PinkSlope) {
  const int sr = 16000;
  const Waveform w = SynthNoise(NoiseKind::kPink, 12, 10.0, sr);
  const size_t len = 2048;
  std::vector<double> xs, ys;
  for (double hz = 125.0; hz <= 4000.0; hz *= std::sqrt(2.0)) {
    double p = 0.0;
    int frames = 0;
    for (size_t b = 0; b + len <= w.Size(); b += len / 2, ++frames)
      for (int j = -4; j <= 4; ++j)
        p += PowerAt(w.samples, b, len, hz * (1.0 + 0.02 * j), sr);
    xs.push_back(std::log2(hz));
    ys.push_back(10.0 * std::log10(p / frames));
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -3.0, 0.5);
}

TEST(MixTest, SnrIsExact) {
  const Waveform s = SynthSpeech(1, 1.0);
  const Waveform n = SynthNoise(NoiseKind::kPink, 2, 1.0);
  for (double snr : {-10.0, -5.0, 0.0, 5.0, 10.0, 17.3}) {
    const Mixture m = MixAtSnr(s, n, snr);
    EXPECT_NEAR(SnrDb(s, m.scaled_noise), snr, 1e-9);
    for (size_t i = 0; i < s.Size(); i += 97)
      EXPECT_EQ(m.mixture.samples[i], s.samples[i] + m.scaled_noise.samples[i]);
  }
  for (const char *kind : {"white", "pink", "babble_proxy", "amplitude_modulated"})
    for (double snr : {-10.0, 0.0, 10.0}) {
      const Mixture m = MixAtSnr(s, SynthNoise(ParseNoiseKind(kind), 3, 1.0), snr);
      EXPECT_NEAR(SiSdr(s.samples, m.mixture.samples), snr, 1e-9) << kind;
    }
  Waveform echo = s;
  for (double &x : echo.samples) x *= -0.5;
  EXPECT_THROW(MixAtSnr(s, echo, 0.0), std::invalid_argument);
  const Mixture high = MixAtSnr(s, n, 60.0);
  EXPECT_GE(SiSdr(s.samples, high.mixture.samples), 59.0);
  EXPECT_THROW(MixAtSnr(s, SynthNoise(NoiseKind::kPink, 2, 0.5), 0.0),
               std::invalid_argument);
}

TEST(WavTest, RoundTripAndHeader) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "uncse-wav-test.wav").string();
  Waveform w = SynthSpeech(1, 0.5);
  w.samples[0] = 0.0;
  EXPECT_EQ(WriteWav(path, w), 0u);
  const Waveform back = ReadWav(path);
  ASSERT_EQ(back.Size(), w.Size());
  EXPECT_EQ(back.sample_rate, 16000);
  EXPECT_EQ(back.samples[0], 0.0);
  for (size_t i = 0; i < w.Size(); ++i)
    ASSERT_LE(std::fabs(back.samples[i] - w.samples[i]), std::ldexp(1.0, -15));

  std::ifstream is(path, std::ios::binary);
  char h[44];
  is.read(h, 44);
  ASSERT_TRUE(is);
  auto u16 = [&](int o) {
    return static_cast<unsigned>(static_cast<unsigned char>(h[o])) |
           static_cast<unsigned>(static_cast<unsigned char>(h[o + 1])) << 8;
  };
  auto u32 = [&](int o) { return u16(o) | u16(o + 2) << 16; };
  EXPECT_EQ(std::string(h, 4), "RIFF");
  EXPECT_EQ(std::string(h + 8, 4), "WAVE");
  EXPECT_EQ(std::string(h + 12, 4), "fmt ");
  EXPECT_EQ(u16(20), 1u);   // PCM
  EXPECT_EQ(u16(22), 1u);   // mono
  EXPECT_EQ(u32(24), 16000u);
  EXPECT_EQ(u16(34), 16u);
  EXPECT_EQ(std::string(h + 36, 4), "data");
  EXPECT_EQ(u32(40), 2 * w.Size());
  EXPECT_EQ(u32(4), 36 + 2 * w.Size());
  std::filesystem::remove(path);
}

TEST(WavTest, ClippingReportedAndBadFilesRejected) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "uncse-wav-clip.wav").string();
  Waveform w;
  w.samples = {0.5, 1.5, -2.0, 0.0};
  EXPECT_EQ(WriteWav(path, w), 2u);
  const Waveform back = ReadWav(path);
  EXPECT_NEAR(back.samples[1], 1.0, 1e-4);
  EXPECT_NEAR(back.samples[2], -1.0, 1e-4);
  {
    std::ofstream os(path, std::ios::binary);
    os << "RIFX0000WAVE";
  }
  EXPECT_THROW(ReadWav(path), ConfigError);
  std::filesystem::remove(path);
  EXPECT_THROW(ReadWav(path), ConfigError);
}

TEST(CorpusTest, DefaultManifest) {
  const CorpusManifest m = MakeManifest(CorpusConfig{});
  EXPECT_EQ(m.specs.size(), 280u);
  EXPECT_NO_THROW(m.Check());
  EXPECT_EQ(m.Split("train").size(), 200u);
  EXPECT_EQ(m.Split("val").size(), 40u);
  const std::vector<MixtureSpec> test = m.Split("test");
  ASSERT_EQ(test.size(), 40u);
  std::map<double, int> per_snr;
  for (const MixtureSpec &s : test) ++per_snr[s.snr_db];
  EXPECT_EQ(per_snr.size(), 5u);
  for (const auto &[snr, n] : per_snr) EXPECT_EQ(n, 8) << snr;
  for (const MixtureSpec &s : m.Split("train")) {
    EXPECT_GE(s.snr_db, -5.0);
    EXPECT_LE(s.snr_db, 20.0);
  }
  const CorpusManifest again = MakeManifest(CorpusConfig{});
  EXPECT_EQ(again.specs[17].speech_seed, m.specs[17].speech_seed);
  EXPECT_EQ(again.specs[17].snr_db, m.specs[17].snr_db);
}

TEST(CorpusTest, HygieneViolationsRejected) {
  CorpusManifest m = MakeManifest(CorpusConfig{});
  CorpusManifest dup = m;
  dup.specs[1].id = dup.specs[0].id;
  EXPECT_THROW(dup.Check(), ConfigError);
  CorpusManifest leak = m;
  const MixtureSpec test = m.Split("test")[0];
  for (MixtureSpec &s : leak.specs)
    if (s.split == "train") {
      s.speech_seed = test.speech_seed;
      s.noise_seed = test.noise_seed;
      break;
    }
  EXPECT_THROW(leak.Check(), ConfigError);
  CorpusConfig bad;
  bad.test_snrs_db.clear();
  EXPECT_THROW(MakeManifest(bad), ConfigError);
}

TEST(CorpusTest, ManifestRoundTrip) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "uncse-manifest-test.txt").string();
  CorpusConfig cfg;
  cfg.seed = 9;
  cfg.train_snr_min_db = -4.123456789;
  const CorpusManifest m = MakeManifest(cfg);
  WriteManifest(path, m);
  const CorpusManifest back = ReadManifest(path);
  EXPECT_EQ(back.seed, 9u);
  ASSERT_EQ(back.specs.size(), m.specs.size());
  for (size_t i = 0; i < m.specs.size(); ++i) {
    EXPECT_EQ(back.specs[i].id, m.specs[i].id);
    EXPECT_EQ(back.specs[i].split, m.specs[i].split);
    EXPECT_EQ(back.specs[i].speech_seed, m.specs[i].speech_seed);
    EXPECT_EQ(back.specs[i].noise_seed, m.specs[i].noise_seed);
    EXPECT_EQ(back.specs[i].noise_kind, m.specs[i].noise_kind);
    EXPECT_EQ(back.specs[i].snr_db, m.specs[i].snr_db);
    EXPECT_EQ(back.specs[i].duration_s, m.specs[i].duration_s);
  }
  std::filesystem::remove(path);
}

TEST(CorpusTest, GeneratedMixtures) {
  CorpusConfig cfg;
  cfg.num_train = 8;
  cfg.num_val = 2;
  cfg.num_test = 5;
  cfg.duration_s = 0.5;
  for (const MixtureSpec &spec : MakeManifest(cfg).specs) {
    const GeneratedMixture g = GenerateMixture(spec);
    EXPECT_NEAR(SnrDb(g.clean, g.noise), spec.snr_db, 1e-9);
    double peak = 0.0;
    for (size_t i = 0; i < g.mix.Size(); ++i) {
      // Peak limiting rescales all three, so the sum holds to rounding.
      ASSERT_NEAR(g.mix.samples[i], g.clean.samples[i] + g.noise.samples[i], 1e-15);
      peak = std::max({peak, std::fabs(g.mix.samples[i]), std::fabs(g.clean.samples[i]),
                       std::fabs(g.noise.samples[i])});
    }
    EXPECT_LE(peak, 0.99 + 1e-15);
    EXPECT_EQ(GenerateMixture(spec).mix.samples, g.mix.samples);
  }
}

TEST(CorpusTest, WrittenCorpus) {
  const auto dir = std::filesystem::temp_directory_path() / "uncse-corpus-test";
  std::filesystem::remove_all(dir);
  CorpusConfig cfg;
  cfg.num_train = 2;
  cfg.num_val = 1;
  cfg.num_test = 1;
  cfg.duration_s = 0.25;
  const CorpusManifest m = MakeManifest(cfg);
  EXPECT_EQ(WriteCorpus(dir.string(), m), 0u);
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.txt"));
  for (const MixtureSpec &s : m.specs) {
    const Waveform clean = ReadWav(CorpusWavPath(dir.string(), s, "clean"));
    const Waveform noise = ReadWav(CorpusWavPath(dir.string(), s, "noise"));
    const Waveform mix = ReadWav(CorpusWavPath(dir.string(), s, "mix"));
    ASSERT_EQ(mix.Size(), 4000u);
    for (size_t i = 0; i < mix.Size(); ++i)
      ASSERT_LE(std::fabs(mix.samples[i] - clean.samples[i] - noise.samples[i]),
                3 * std::ldexp(1.0, -15));
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace uncse
