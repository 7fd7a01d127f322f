// src/app/commands.cc

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

#include "app/commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "base/text.h"
#include "data/wav-io.h"
#include "ensemble/ensemble.h"
#include "net/checkpoint.h"

namespace uncse {

namespace fs = std::filesystem;

namespace {

std::string Join(const std::string &dir, const std::string &name) {
  return (fs::path(dir) / name).string();
}

void RequireFile(const std::string &path, const std::string &what) {
  if (!fs::exists(path)) throw ConfigError("missing " + what + ": " + path);
}

struct LoadedModel {
  MethodSpec method;
  std::vector<MaskNet> nets;
  std::vector<uint64_t> seeds;
};

LoadedModel LoadModel(const RunConfig &cfg) {
  const std::string dir = MethodDir(cfg);
  const std::string manifest_path = Join(dir, "ensemble.txt");
  RequireFile(manifest_path, "trained model (run train first)");
  const EnsembleManifest manifest = ReadEnsembleManifest(manifest_path);
  LoadedModel model;
  model.method = LookupMethod(manifest.method);
  if (model.method.name != cfg.Get("method"))
    throw ConfigError(manifest_path + " belongs to method " + manifest.method);
  const StftConfig stft = cfg.Stft();
  const FeatureSpec features = cfg.Features();
  for (const EnsembleMember &m : manifest.members) {
    Checkpoint ckpt = LoadCheckpoint(Join(dir, m.checkpoint));
    if (!(ckpt.stft == stft) || ckpt.features.context != features.context ||
        ckpt.features.num_bins != features.num_bins)
      throw ConfigError("checkpoint " + m.checkpoint +
                        " does not match the configured STFT/feature settings");
    model.nets.push_back(std::move(ckpt.net));
    model.seeds.push_back(m.seed);
  }
  return model;
}

struct EnhanceInput {
  std::string id;
  Waveform noisy;
  std::optional<Waveform> clean;
};

}  // namespace

std::string MethodDir(const RunConfig &cfg) {
  return Join(cfg.Get("work_dir"), cfg.Get("method"));
}

std::string EnhanceDir(const RunConfig &cfg) {
  const std::string leaf = cfg.Get("input").empty() ? cfg.Get("split") : "input";
  return (fs::path(MethodDir(cfg)) / "enhanced" / leaf).string();
}

std::vector<Utterance> LoadSplit(const std::string &corpus_dir,
                                 const std::string &split) {
  const std::string manifest_path = Join(corpus_dir, "manifest.txt");
  RequireFile(manifest_path, "corpus manifest (run gen-data first)");
  const CorpusManifest manifest = ReadManifest(manifest_path);
  std::vector<Utterance> utts;
  for (const MixtureSpec &spec : manifest.Split(split)) {
    Utterance u;
    u.id = spec.id;
    u.snr_db = spec.snr_db;
    u.clean = ReadWav(CorpusWavPath(corpus_dir, spec, "clean"));
    u.noisy = ReadWav(CorpusWavPath(corpus_dir, spec, "mix"));
    utts.push_back(std::move(u));
  }
  if (utts.empty()) throw ConfigError("corpus split '" + split + "' is empty");
  return utts;
}

GenDataResult CmdGenData(const RunConfig &cfg) {
  cfg.Validate();
  const std::string dir = cfg.Get("corpus_dir");
  fs::create_directories(dir);
  const CorpusManifest manifest = MakeManifest(cfg.Corpus());
  GenDataResult result;
  result.num_utterances = manifest.specs.size();
  result.clipped_samples = WriteCorpus(dir, manifest);
  cfg.Write(Join(dir, "resolved-gen-data.cfg"));
  UNCSE_LOG << "wrote " << result.num_utterances << " utterances to " << dir;
  return result;
}

TrainSummary CmdTrain(const RunConfig &cfg) {
  cfg.Validate();
  const MethodSpec method = LookupMethod(cfg.Get("method"));
  const StftConfig stft = cfg.Stft();
  const FeatureSpec features = cfg.Features();
  const TrainConfig train_cfg = cfg.Training(method.loss);

  std::vector<int> dims = {features.Dim()};
  for (int h : cfg.HiddenDims()) dims.push_back(h);
  dims.push_back(2 * stft.NumBins());
  const int num_hidden = static_cast<int>(dims.size()) - 2;
  DropoutSpec dropout;
  if (method.mc_dropout) {
    if (num_hidden < 1) throw ConfigError("mc_dropout needs a hidden layer");
    dropout.layers = {num_hidden - 1};
    dropout.p = cfg.GetDouble("dropout_p");
    dropout.active_at_inference = true;
  }

  const std::string corpus = cfg.Get("corpus_dir");
  const std::vector<Utterance> train = LoadSplit(corpus, "train");
  const std::vector<Utterance> val = LoadSplit(corpus, "val");

  const int members = method.ensemble ? static_cast<int>(cfg.GetInt("num_members")) : 1;
  std::vector<uint64_t> seeds;
  for (int m = 0; m < members; ++m) seeds.push_back(train_cfg.seed + m);

  const std::string dir = MethodDir(cfg);
  fs::create_directories(dir);
  cfg.Write(Join(dir, "resolved-train.cfg"));
  TrainSummary summary;
  summary.members =
      DeepEnsembleTrain(dims, dropout, train_cfg, seeds, train, val, stft, features);
  EnsembleManifest manifest;
  manifest.method = method.name;
  for (int m = 0; m < members; ++m) {
    const std::string name = "member_" + std::to_string(m) + ".ckpt";
    Checkpoint ckpt{summary.members[m].net, features, stft, seeds[m],
                    LossKindName(method.loss)};
    SaveCheckpoint(Join(dir, name), ckpt);
    WriteHistoryCsv(Join(dir, "history_" + std::to_string(m) + ".csv"),
                    summary.members[m].history);
    manifest.members.push_back({seeds[m], name});
    summary.checkpoints.push_back(Join(dir, name));
  }
  WriteEnsembleManifest(Join(dir, "ensemble.txt"), manifest);
  return summary;
}

size_t CmdEnhance(const RunConfig &cfg) {
  cfg.Validate();
  const LoadedModel model = LoadModel(cfg);
  const StftConfig stft = cfg.Stft();
  const FeatureSpec features = cfg.Features();
  const uint64_t seed = cfg.GetUint64("seed");
  const int mc_samples = static_cast<int>(cfg.GetInt("num_members"));

  std::vector<EnhanceInput> inputs;
  if (!cfg.Get("input").empty()) {
    const std::string path = cfg.Get("input");
    RequireFile(path, "input wav");
    inputs.push_back({fs::path(path).stem().string(), ReadWav(path), std::nullopt});
  } else {
    for (Utterance &u : LoadSplit(cfg.Get("corpus_dir"), cfg.Get("split")))
      inputs.push_back({u.id, std::move(u.noisy), std::move(u.clean)});
  }

  const std::string dir = EnhanceDir(cfg);
  fs::create_directories(dir);
  cfg.Write(Join(dir, "resolved-enhance.cfg"));
  for (size_t i = 0; i < inputs.size(); ++i) {
    const EnhanceInput &in = inputs[i];
    const ComplexSpectrogram noisy = Stft(in.noisy, stft);
    const Eigen::MatrixXd feats = ComputeFeatures(noisy, features);
    PredictionSet preds =
        model.method.mc_dropout
            ? McDropoutPredict(model.nets[0], feats, noisy, mc_samples,
                               MixSeed(seed + i), false)
            : EnsemblePredict(model.nets, feats, noisy, model.method.aleatoric);
    const bool multi = preds.members.size() > 1;
    const CombinedPrediction combined =
        model.method.aleatoric ? CombineTotal(preds) : CombineEpistemic(preds);
    const ComplexGrid &wf = multi ? combined.mean : preds.members[0].wiener_estimate;

    const std::string base = Join(dir, in.id);
    ComplexSpectrogram wf_spec{wf, stft, in.noisy.Size()};
    WriteWav(base + "_wf.wav", Istft(wf_spec, stft, in.noisy.sample_rate));
    if (model.method.aleatoric) {
      const RealGrid amap = AverageAmap(preds, noisy);
      const ComplexSpectrogram amap_spec =
          FromPolar(amap, Phase(noisy), stft, in.noisy.Size());
      WriteWav(base + "_amap.wav", Istft(amap_spec, stft, in.noisy.sample_rate));
      WriteGridCsv(base + "_aleatoric.csv", *combined.aleatoric);
    }
    if (multi) {
      WriteGridCsv(base + "_epistemic.csv", combined.epistemic);
      if (combined.total) WriteGridCsv(base + "_total.csv", *combined.total);
    }
    if (in.clean) {
      const ComplexSpectrogram clean = Stft(*in.clean, stft);
      WriteGridCsv(base + "_error.csv", PerBinError(wf, clean.coeffs));
    }
  }
  UNCSE_LOG << "enhanced " << inputs.size() << " inputs into " << dir;
  return inputs.size();
}

std::vector<EvalRow> CmdEvaluate(const RunConfig &cfg) {
  cfg.Validate();
  const std::string split = cfg.Get("split");
  const std::string corpus = cfg.Get("corpus_dir");
  const std::string dir = EnhanceDir(cfg);
  const CorpusManifest manifest = ReadManifest(Join(corpus, "manifest.txt"));

  // scores[estimate][snr] -> (si_sdr, improvement) per utterance.
  std::map<std::string, std::map<double, std::vector<std::pair<double, double>>>>
      scores;
  for (const MixtureSpec &spec : manifest.Split(split)) {
    const Waveform clean = ReadWav(CorpusWavPath(corpus, spec, "clean"));
    const Waveform mix = ReadWav(CorpusWavPath(corpus, spec, "mix"));
    const double noisy_score = SiSdr(clean.samples, mix.samples);
    scores["noisy"][spec.snr_db].push_back({noisy_score, 0.0});
    const std::string wf_path = Join(dir, spec.id + "_wf.wav");
    RequireFile(wf_path, "enhanced output (run enhance first)");
    for (const char *est : {"wf", "amap"}) {
      const std::string path = Join(dir, spec.id + "_" + est + ".wav");
      if (!fs::exists(path)) continue;
      const Waveform enhanced = ReadWav(path);
      if (enhanced.Size() != clean.Size())
        throw ConfigError(path + ": length differs from the clean reference");
      const double s = SiSdr(clean.samples, enhanced.samples);
      scores[est][spec.snr_db].push_back({s, s - noisy_score});
    }
  }
  if (scores.empty()) throw ConfigError("no utterances in split " + split);

  std::vector<EvalRow> rows;
  auto add_row = [&](const std::string &snr, const std::string &est,
                     const std::vector<std::pair<double, double>> &vals) {
    std::vector<double> s, imp;
    for (const auto &[a, b] : vals) {
      s.push_back(a);
      imp.push_back(b);
    }
    rows.push_back({snr, est, vals.size(), MeanWithCi(s), MeanWithCi(imp)});
  };
  for (const char *est : {"noisy", "wf", "amap"}) {
    auto it = scores.find(est);
    if (it == scores.end()) continue;
    std::vector<std::pair<double, double>> pooled;
    for (const auto &[snr, vals] : it->second) {
      add_row(FormatDouble(snr), est, vals);
      pooled.insert(pooled.end(), vals.begin(), vals.end());
    }
    add_row("all", est, pooled);
  }

  const std::string out_path = Join(MethodDir(cfg), "eval_" + split + ".csv");
  std::ofstream os(out_path);
  if (!os) throw ConfigError("cannot write " + out_path);
  os << "snr_db,estimate,count,si_sdr_mean,si_sdr_ci95,improvement_mean,"
        "improvement_ci95\n";
  for (const EvalRow &r : rows)
    os << r.snr << ',' << r.estimate << ',' << r.count << ','
       << FormatDouble(r.si_sdr.mean) << ',' << FormatDouble(r.si_sdr.half_width)
       << ',' << FormatDouble(r.improvement.mean) << ','
       << FormatDouble(r.improvement.half_width) << '\n';
  cfg.Write(Join(MethodDir(cfg), "resolved-evaluate.cfg"));
  return rows;
}

const EvalRow *FindPooledRow(const std::vector<EvalRow> &rows,
                             const std::string &estimate) {
  for (const EvalRow &r : rows)
    if (r.snr == "all" && r.estimate == estimate) return &r;
  return nullptr;
}

SparsifyResult CmdSparsify(const RunConfig &cfg) {
  cfg.Validate();
  const std::string split = cfg.Get("split");
  const std::string source = cfg.Get("source");
  const std::string corpus = cfg.Get("corpus_dir");
  const std::string dir = EnhanceDir(cfg);
  const CorpusManifest manifest = ReadManifest(Join(corpus, "manifest.txt"));

  std::vector<RealGrid> errors, uncertainty;
  for (const MixtureSpec &spec : manifest.Split(split)) {
    const std::string unc_path = Join(dir, spec.id + "_" + source + ".csv");
    if (!fs::exists(unc_path))
      throw ConfigError("no " + source + " uncertainty for method " +
                        cfg.Get("method") + " (missing " + unc_path + ")");
    const std::string err_path = Join(dir, spec.id + "_error.csv");
    RequireFile(err_path, "error grid (run enhance on a corpus split)");
    errors.push_back(ReadGridCsv(err_path));
    uncertainty.push_back(ReadGridCsv(unc_path));
    if (errors.back().rows() != uncertainty.back().rows() ||
        errors.back().cols() != uncertainty.back().cols())
      throw ConfigError(unc_path + ": shape differs from the error grid");
  }
  const std::vector<double> err = PoolGrids(errors);
  std::vector<double> unc = PoolGrids(uncertainty);
  const int steps = static_cast<int>(cfg.GetInt("sparsify_steps"));

  SparsifyResult result;
  result.num_bins = err.size();
  result.measured = Sparsify(err, unc, steps);
  result.oracle = OracleCurve(err, steps);
  result.ause = Ause(result.measured, result.oracle);
  std::mt19937_64 rng(MixSeed(cfg.GetUint64("seed") ^ 0x73687566ULL));
  std::shuffle(unc.begin(), unc.end(), rng);
  result.ause_shuffled = Ause(Sparsify(err, unc, steps), result.oracle);

  const std::string stem =
      Join(MethodDir(cfg), "sparsify_" + split + "_" + source);
  WriteSparsificationCsv(stem + ".csv", result.measured, result.oracle);
  WriteSparsificationSvg(stem + ".svg", result.measured, result.oracle,
                         cfg.Get("method") + " (" + source + ")");
  std::ofstream os(stem + ".txt");
  if (!os) throw ConfigError("cannot write " + stem + ".txt");
  os << "ause " << FormatDouble(result.ause) << '\n'
     << "ause_shuffled " << FormatDouble(result.ause_shuffled) << '\n'
     << "bins " << result.num_bins << '\n';
  cfg.Write(Join(MethodDir(cfg), "resolved-sparsify.cfg"));
  return result;
}

}  // namespace uncse
