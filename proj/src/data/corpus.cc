// src/data/corpus.cc

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

#include "data/corpus.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "base/text.h"
#include "data/wav-io.h"

namespace uncse {

namespace {

constexpr double kPeakLimit = 0.99;

bool ValidSplit(const std::string &s) {
  return s == "train" || s == "val" || s == "test";
}

}  // namespace

void MixtureSpec::Check() const {
  if (id.empty() || id.find_first_of(" \t/") != std::string::npos)
    throw ConfigError("MixtureSpec: bad id '" + id + "'");
  if (!ValidSplit(split)) throw ConfigError("MixtureSpec: bad split '" + split + "'");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s))
    throw ConfigError("MixtureSpec " + id + ": duration must be positive");
  if (!std::isfinite(snr_db))
    throw ConfigError("MixtureSpec " + id + ": SNR must be finite");
}

void CorpusManifest::Check() const {
  std::set<std::string> ids;
  std::map<std::pair<uint64_t, uint64_t>, std::string> owner;
  for (const MixtureSpec &s : specs) {
    s.Check();
    if (!ids.insert(s.id).second)
      throw ConfigError("manifest: duplicate id " + s.id);
    auto [it, fresh] =
        owner.emplace(std::make_pair(s.speech_seed, s.noise_seed), s.split);
    if (!fresh && it->second != s.split)
      throw ConfigError("manifest: seed pair of " + s.id +
                        " appears in splits " + it->second + " and " + s.split);
  }
}

std::vector<MixtureSpec> CorpusManifest::Split(const std::string &split) const {
  std::vector<MixtureSpec> out;
  for (const MixtureSpec &s : specs)
    if (s.split == split) out.push_back(s);
  return out;
}

void CorpusConfig::Check() const {
  if (num_train < 1 || num_val < 1 || num_test < 1)
    throw ConfigError("corpus: every split needs at least one utterance");
  if (!(duration_s > 0.0)) throw ConfigError("corpus: duration must be positive");
  if (!(train_snr_min_db <= train_snr_max_db) || !std::isfinite(train_snr_min_db) ||
      !std::isfinite(train_snr_max_db))
    throw ConfigError("corpus: bad training SNR range");
  if (test_snrs_db.empty()) throw ConfigError("corpus: empty test SNR grid");
  for (double s : test_snrs_db)
    if (!std::isfinite(s)) throw ConfigError("corpus: non-finite test SNR");
}

CorpusManifest MakeManifest(const CorpusConfig &cfg) {
  cfg.Check();
  CorpusManifest manifest;
  manifest.seed = cfg.seed;
  std::mt19937_64 rng(MixSeed(cfg.seed));
  std::set<uint64_t> used;
  auto fresh_seed = [&]() {
    uint64_t s;
    do s = rng(); while (!used.insert(s).second);
    return s;
  };
  const std::pair<const char *, int> splits[] = {
      {"train", cfg.num_train}, {"val", cfg.num_val}, {"test", cfg.num_test}};
  for (const auto &[split, count] : splits) {
    for (int i = 0; i < count; ++i) {
      MixtureSpec s;
      char id[64];
      std::snprintf(id, sizeof(id), "%s_%04d", split, i);
      s.id = id;
      s.split = split;
      s.speech_seed = fresh_seed();
      s.noise_seed = fresh_seed();
      s.noise_kind = static_cast<NoiseKind>(rng() % 4);
      s.duration_s = cfg.duration_s;
      if (s.split == "test") {
        s.snr_db = cfg.test_snrs_db[i % cfg.test_snrs_db.size()];
      } else {
        s.snr_db = cfg.train_snr_min_db +
                   (cfg.train_snr_max_db - cfg.train_snr_min_db) *
                       UniformUnit(rng);
      }
      manifest.specs.push_back(s);
    }
  }
  manifest.Check();
  return manifest;
}

void WriteManifest(const std::string &path, const CorpusManifest &manifest) {
  manifest.Check();
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << "# uncse-corpus v1 seed=" << manifest.seed << '\n';
  os << "# id split speech_seed noise_seed noise_kind snr_db duration_s\n";
  for (const MixtureSpec &s : manifest.specs)
    os << s.id << ' ' << s.split << ' ' << s.speech_seed << ' ' << s.noise_seed
       << ' ' << NoiseKindName(s.noise_kind) << ' ' << FormatDouble(s.snr_db)
       << ' ' << FormatDouble(s.duration_s) << '\n';
  if (!os) throw ConfigError("write failed: " + path);
}

CorpusManifest ReadManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read corpus manifest " + path);
  CorpusManifest manifest;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    const std::string_view trimmed = Trim(line);
    if (trimmed.empty()) continue;
    if (trimmed[0] == '#') {
      const std::string prefix = "# uncse-corpus v1 seed=";
      if (line.rfind(prefix, 0) == 0) {
        manifest.seed = ParseUint64(line.substr(prefix.size()));
        header = true;
      }
      continue;
    }
    const std::vector<std::string> f = SplitWhitespace(trimmed);
    if (f.size() != 7) throw ConfigError(path + ": malformed line '" + line + "'");
    MixtureSpec s;
    s.id = f[0];
    s.split = f[1];
    s.speech_seed = ParseUint64(f[2]);
    s.noise_seed = ParseUint64(f[3]);
    s.noise_kind = ParseNoiseKind(f[4]);
    s.snr_db = ParseDouble(f[5]);
    s.duration_s = ParseDouble(f[6]);
    manifest.specs.push_back(s);
  }
  if (!header) throw ConfigError(path + ": missing uncse-corpus header");
  manifest.Check();
  return manifest;
}

GeneratedMixture GenerateMixture(const MixtureSpec &spec, int sample_rate) {
  spec.Check();
  SpeechSynthConfig speech_cfg;
  speech_cfg.sample_rate = sample_rate;
  GeneratedMixture out;
  out.clean = SynthSpeech(spec.speech_seed, spec.duration_s, speech_cfg);
  const Waveform noise =
      SynthNoise(spec.noise_kind, spec.noise_seed, spec.duration_s, sample_rate);
  Mixture mixed = MixAtSnr(out.clean, noise, spec.snr_db);
  out.noise = std::move(mixed.scaled_noise);
  out.mix = std::move(mixed.mixture);
  double peak = 0.0;
  for (const Waveform *w : {&out.clean, &out.noise, &out.mix})
    for (double v : w->samples) peak = std::max(peak, std::fabs(v));
  if (peak > kPeakLimit) {
    const double scale = kPeakLimit / peak;
    for (Waveform *w : {&out.clean, &out.noise, &out.mix})
      for (double &v : w->samples) v *= scale;
  }
  return out;
}

std::string CorpusWavPath(const std::string &dir, const MixtureSpec &spec,
                          const std::string &part) {
  return (std::filesystem::path(dir) / spec.split / (spec.id + "_" + part + ".wav"))
      .string();
}

size_t WriteCorpus(const std::string &dir, const CorpusManifest &manifest) {
  manifest.Check();
  namespace fs = std::filesystem;
  for (const char *split : {"train", "val", "test"})
    fs::create_directories(fs::path(dir) / split);
  size_t clipped = 0;
  for (const MixtureSpec &spec : manifest.specs) {
    const GeneratedMixture g = GenerateMixture(spec);
    clipped += WriteWav(CorpusWavPath(dir, spec, "clean"), g.clean);
    clipped += WriteWav(CorpusWavPath(dir, spec, "noise"), g.noise);
    clipped += WriteWav(CorpusWavPath(dir, spec, "mix"), g.mix);
  }
  WriteManifest((fs::path(dir) / "manifest.txt").string(), manifest);
  return clipped;
}

}  // namespace uncse
