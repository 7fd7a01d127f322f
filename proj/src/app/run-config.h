// src/app/run-config.h

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

#ifndef UNCSE_APP_RUN_CONFIG_H_
#define UNCSE_APP_RUN_CONFIG_H_

#include <map>
#include <string>
#include <vector>

#include "data/corpus.h"
#include "net/features.h"
#include "net/trainer.h"

namespace uncse {

/// Flat key=value configuration. Every key has a default; files and flags may
/// only override known keys. Lines starting with '#' are comments.
class RunConfig {
 public:
  RunConfig();

  /// Overrides defaults from a file. Unknown keys and malformed lines throw
  /// ConfigError naming the offending key or line.
  void LoadFile(const std::string &path);
  void Set(const std::string &key, const std::string &value);
  const std::string &Get(const std::string &key) const;
  bool Has(const std::string &key) const { return values_.count(key) != 0; }

  double GetDouble(const std::string &key) const;
  long GetInt(const std::string &key) const;
  uint64_t GetUint64(const std::string &key) const;
  std::vector<double> GetDoubleList(const std::string &key) const;

  /// Parses every typed key; throws ConfigError on the first bad value.
  void Validate() const;
  /// All keys in sorted order, one key=value per line.
  void Write(const std::string &path) const;

  StftConfig Stft() const;
  FeatureSpec Features() const;
  std::vector<int> HiddenDims() const;
  TrainConfig Training(LossKind loss) const;
  CorpusConfig Corpus() const;

 private:
  std::map<std::string, std::string> values_;
};

/// The six method variants.
struct MethodSpec {
  std::string name;
  LossKind loss = LossKind::kMse;
  bool aleatoric = false;   // uses the variance head at inference
  bool mc_dropout = false;  // one member, M stochastic passes
  bool ensemble = false;    // M independently trained members
};

MethodSpec LookupMethod(const std::string &name);
const std::vector<std::string> &MethodNames();

}  // namespace uncse

#endif  // UNCSE_APP_RUN_CONFIG_H_
