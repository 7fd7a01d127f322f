// tools/uncse.cc

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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "app/commands.h"
#include "app/gradcheck.h"
#include "base/text.h"

namespace {

struct Flags {
  std::string config, split, method, out, seed, input, source;
  std::vector<std::string> overrides;
};

void AddCommonFlags(CLI::App *cmd, Flags *f) {
  cmd->add_option("--config", f->config, "key=value config file");
  cmd->add_option("--split", f->split, "corpus split: train, val or test");
  cmd->add_option("--method", f->method,
                  "baseline_wf, baseline_sisdr, aleatoric, mc_dropout, "
                  "deep_ensembles or de_aleatoric");
  cmd->add_option("--out", f->out,
                  "output directory (corpus_dir for gen-data, else work_dir)");
  cmd->add_option("--seed", f->seed, "global seed (u64)");
  cmd->add_option("--set", f->overrides, "extra key=value override")
      ->type_name("KEY=VALUE");
}

uncse::RunConfig Resolve(const Flags &f, const std::string &command) {
  uncse::RunConfig cfg;
  if (!f.config.empty()) cfg.LoadFile(f.config);
  for (const std::string &kv : f.overrides) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw uncse::ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.Set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!f.split.empty()) cfg.Set("split", f.split);
  if (!f.method.empty()) cfg.Set("method", f.method);
  if (!f.seed.empty()) cfg.Set("seed", f.seed);
  if (!f.input.empty()) cfg.Set("input", f.input);
  if (!f.source.empty()) cfg.Set("source", f.source);
  if (!f.out.empty()) cfg.Set(command == "gen-data" ? "corpus_dir" : "work_dir", f.out);
  cfg.Validate();
  return cfg;
}

int RunGradcheckCommand(const uncse::RunConfig &cfg) {
  uncse::GradcheckOptions opts;
  opts.tolerance = cfg.GetDouble("gradcheck_tolerance");
  opts.seed = cfg.GetUint64("seed");
  opts.corrupt = cfg.Get("gradcheck_corrupt");
  const uncse::GradcheckReport report = uncse::RunGradcheck(opts);
  std::printf("%-18s %8s %14s  %s\n", "suite", "coords", "max_rel_error",
              "result");
  for (const auto &s : report.suites)
    std::printf("%-18s %8zu %14.3e  %s\n", s.name.c_str(), s.num_coords,
                s.max_rel_error, s.passed ? "PASS" : "FAIL");
  std::printf("tolerance %.1e: %s\n", opts.tolerance,
              report.passed ? "all suites pass" : "FAILED");
  if (!cfg.Get("work_dir").empty()) {
    std::filesystem::create_directories(cfg.Get("work_dir"));
    cfg.Write((std::filesystem::path(cfg.Get("work_dir")) /
               "resolved-gradcheck.cfg").string());
  }
  return report.passed ? 0 : 2;
}

int Dispatch(const std::string &command, const uncse::RunConfig &cfg) {
  if (command == "gen-data") {
    const auto r = uncse::CmdGenData(cfg);
    std::printf("generated %zu utterances in %s (%zu clipped samples)\n",
                r.num_utterances, cfg.Get("corpus_dir").c_str(),
                r.clipped_samples);
  } else if (command == "train") {
    const auto r = uncse::CmdTrain(cfg);
    for (size_t m = 0; m < r.members.size(); ++m)
      std::printf("member %zu: best epoch %d, %zu epochs run -> %s\n", m,
                  r.members[m].best_epoch, r.members[m].history.size() - 1,
                  r.checkpoints[m].c_str());
  } else if (command == "enhance") {
    const size_t n = uncse::CmdEnhance(cfg);
    std::printf("enhanced %zu inputs into %s\n", n, uncse::EnhanceDir(cfg).c_str());
  } else if (command == "evaluate") {
    const auto rows = uncse::CmdEvaluate(cfg);
    std::printf("%-6s %-6s %5s %22s %22s\n", "snr", "est", "n", "si_sdr [dB]",
                "improvement [dB]");
    for (const auto &r : rows)
      std::printf("%-6s %-6s %5zu %12.3f +- %6.3f %12.3f +- %6.3f\n",
                  r.snr.c_str(), r.estimate.c_str(), r.count, r.si_sdr.mean,
                  r.si_sdr.half_width, r.improvement.mean,
                  r.improvement.half_width);
  } else if (command == "sparsify") {
    const auto r = uncse::CmdSparsify(cfg);
    std::printf("AUSE %s (shuffled control %s) over %zu bins\n",
                uncse::FormatDouble(r.ause).c_str(),
                uncse::FormatDouble(r.ause_shuffled).c_str(), r.num_bins);
  } else if (command == "gradcheck") {
    return RunGradcheckCommand(cfg);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"uncse: uncertainty-aware speech enhancement toolkit"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen-data", "generate the synthetic corpus"},
      {"train", "train the selected method"},
      {"enhance", "enhance a split or a single --input wav"},
      {"evaluate", "SI-SDR mean and 95% CI per SNR"},
      {"sparsify", "sparsification curve and AUSE"},
      {"gradcheck", "finite-difference gradient checks"}};
  for (const auto &[name, help] : commands) {
    CLI::App *cmd = app.add_subcommand(name, help);
    AddCommonFlags(cmd, &flags);
    if (name == "enhance") cmd->add_option("--input", flags.input, "single input wav");
    if (name == "sparsify")
      cmd->add_option("--source", flags.source, "aleatoric, epistemic or total");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const uncse::RunConfig cfg = Resolve(flags, command);
    return Dispatch(command, cfg);
  } catch (const uncse::NumericError &e) {
    std::cerr << "uncse " << command << ": numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "uncse " << command << ": " << e.what() << '\n';
    return 1;
  }
}
