// src/app/run-config.cc

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

#include "app/run-config.h"

#include <fstream>

#include "base/text.h"

namespace uncse {

namespace {

const std::map<std::string, std::string> &Defaults() {
  static const std::map<std::string, std::string> defaults = {
      // Paths and selection.
      {"corpus_dir", "corpus"},
      {"work_dir", "runs"},
      {"method", "baseline_wf"},
      {"split", "test"},
      {"source", "total"},
      {"input", ""},
      {"seed", "1"},
      // Corpus.
      {"num_train", "200"},
      {"num_val", "40"},
      {"num_test", "40"},
      {"duration_s", "3"},
      {"train_snr_min_db", "-5"},
      {"train_snr_max_db", "20"},
      {"test_snrs_db", "-10,-5,0,5,10"},
      // Front end and network.
      {"stft_frame_len", "512"},
      {"stft_hop", "256"},
      {"feature_context", "3"},
      {"hidden_dims", "256,256"},
      {"dropout_p", "0.5"},
      {"num_members", "4"},
      // Optimisation.
      {"lr", "0.001"},
      {"adam_beta1", "0.9"},
      {"adam_beta2", "0.999"},
      {"adam_eps", "1e-8"},
      {"weight_decay", "0.0005"},
      {"batch_frames", "64"},
      {"patience", "10"},
      {"lr_patience", "3"},
      {"max_epochs", "15"},
      {"beta", "0.001"},
      // Evaluation.
      {"sparsify_steps", "100"},
      {"gradcheck_tolerance", "1e-4"},
      {"gradcheck_corrupt", ""},
  };
  return defaults;
}

}  // namespace

RunConfig::RunConfig() : values_(Defaults()) {}

void RunConfig::LoadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string_view t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value, got '" + std::string(t) + "'");
    Set(std::string(Trim(t.substr(0, eq))), std::string(Trim(t.substr(eq + 1))));
  }
}

void RunConfig::Set(const std::string &key, const std::string &value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second = value;
}

const std::string &RunConfig::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

double RunConfig::GetDouble(const std::string &key) const {
  try {
    return ParseDouble(Get(key));
  } catch (const ConfigError &e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

long RunConfig::GetInt(const std::string &key) const {
  try {
    return ParseLong(Get(key));
  } catch (const ConfigError &e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

uint64_t RunConfig::GetUint64(const std::string &key) const {
  try {
    return ParseUint64(Get(key));
  } catch (const ConfigError &e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

std::vector<double> RunConfig::GetDoubleList(const std::string &key) const {
  std::vector<double> out;
  try {
    for (const std::string &item : SplitString(Get(key), ','))
      out.push_back(ParseDouble(Trim(item)));
  } catch (const ConfigError &e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
  return out;
}

void RunConfig::Validate() const {
  Stft().Check();
  Features().Check();
  HiddenDims();
  Training(LossKind::kMse).Check();
  Corpus().Check();
  GetUint64("seed");
  LookupMethod(Get("method"));
  const std::string &split = Get("split");
  if (split != "train" && split != "val" && split != "test")
    throw ConfigError("config key 'split': expected train, val or test");
  const std::string &source = Get("source");
  if (source != "aleatoric" && source != "epistemic" && source != "total")
    throw ConfigError(
        "config key 'source': expected aleatoric, epistemic or total");
  const double p = GetDouble("dropout_p");
  if (!(p >= 0.0 && p < 1.0))
    throw ConfigError("config key 'dropout_p': must lie in [0, 1)");
  if (GetInt("num_members") < 1)
    throw ConfigError("config key 'num_members': must be >= 1");
  if (GetInt("sparsify_steps") < 1)
    throw ConfigError("config key 'sparsify_steps': must be >= 1");
  if (!(GetDouble("gradcheck_tolerance") > 0.0))
    throw ConfigError("config key 'gradcheck_tolerance': must be > 0");
}

void RunConfig::Write(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  for (const auto &[key, value] : values_) os << key << '=' << value << '\n';
}

StftConfig RunConfig::Stft() const {
  StftConfig cfg;
  cfg.frame_len = static_cast<int>(GetInt("stft_frame_len"));
  cfg.hop = static_cast<int>(GetInt("stft_hop"));
  try {
    cfg.Check();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("STFT settings: ") + e.what());
  }
  return cfg;
}

FeatureSpec RunConfig::Features() const {
  FeatureSpec spec;
  spec.context = static_cast<int>(GetInt("feature_context"));
  spec.num_bins = Stft().NumBins();
  try {
    spec.Check();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("feature settings: ") + e.what());
  }
  return spec;
}

std::vector<int> RunConfig::HiddenDims() const {
  std::vector<int> dims;
  for (double d : GetDoubleList("hidden_dims")) {
    if (d < 1.0 || d != static_cast<int>(d))
      throw ConfigError("config key 'hidden_dims': positive integers expected");
    dims.push_back(static_cast<int>(d));
  }
  return dims;
}

TrainConfig RunConfig::Training(LossKind loss) const {
  TrainConfig cfg;
  cfg.lr = GetDouble("lr");
  cfg.adam_beta1 = GetDouble("adam_beta1");
  cfg.adam_beta2 = GetDouble("adam_beta2");
  cfg.adam_eps = GetDouble("adam_eps");
  cfg.weight_decay = GetDouble("weight_decay");
  cfg.batch_size = static_cast<int>(GetInt("batch_frames"));
  cfg.patience = static_cast<int>(GetInt("patience"));
  cfg.lr_patience = static_cast<int>(GetInt("lr_patience"));
  cfg.max_epochs = static_cast<int>(GetInt("max_epochs"));
  cfg.seed = GetUint64("seed");
  cfg.loss = loss;
  cfg.beta = GetDouble("beta");
  cfg.Check();
  return cfg;
}

CorpusConfig RunConfig::Corpus() const {
  CorpusConfig cfg;
  cfg.seed = GetUint64("seed");
  cfg.num_train = static_cast<int>(GetInt("num_train"));
  cfg.num_val = static_cast<int>(GetInt("num_val"));
  cfg.num_test = static_cast<int>(GetInt("num_test"));
  cfg.duration_s = GetDouble("duration_s");
  cfg.train_snr_min_db = GetDouble("train_snr_min_db");
  cfg.train_snr_max_db = GetDouble("train_snr_max_db");
  cfg.test_snrs_db = GetDoubleList("test_snrs_db");
  cfg.Check();
  return cfg;
}

const std::vector<std::string> &MethodNames() {
  static const std::vector<std::string> names = {
      "baseline_wf", "baseline_sisdr", "aleatoric",
      "mc_dropout",  "deep_ensembles", "de_aleatoric"};
  return names;
}

MethodSpec LookupMethod(const std::string &name) {
  MethodSpec m;
  m.name = name;
  if (name == "baseline_wf") {
    m.loss = LossKind::kMse;
  } else if (name == "baseline_sisdr") {
    m.loss = LossKind::kSiSdr;
  } else if (name == "aleatoric") {
    m.loss = LossKind::kHybrid;
    m.aleatoric = true;
  } else if (name == "mc_dropout") {
    m.loss = LossKind::kMse;
    m.mc_dropout = true;
  } else if (name == "deep_ensembles") {
    m.loss = LossKind::kMse;
    m.ensemble = true;
  } else if (name == "de_aleatoric") {
    m.loss = LossKind::kHybrid;
    m.aleatoric = true;
    m.ensemble = true;
  } else {
    throw ConfigError("unknown method '" + name + "'");
  }
  return m;
}

}  // namespace uncse
