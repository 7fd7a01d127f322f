// tests/acceptance-test.cc

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

// Acceptance driver. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   acceptance-test [--only 1,2,...] [--work-dir DIR] [--keep]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "CLI11.hpp"

#include "app/commands.h"
#include "app/gradcheck.h"
#include "base/text.h"
#include "data/synth.h"
#include "ensemble/ensemble.h"
#include "eval/uncert-eval.h"
#include "spectral/stft.h"
#include "statmodel/mmse-oracle.h"
#include "statmodel/posterior.h"
#include "statmodel/rician.h"

namespace uncse {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char *fmt, double a, double b = 0.0, double c = 0.0,
                double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

Outcome StftRoundTrip() {
  const auto start = Clock::now();
  const StftConfig cfg;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> dur(1.0, 3.0);
  std::normal_distribution<double> gauss(0.0, 0.3);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Waveform w;
    w.samples.resize(static_cast<size_t>(dur(rng) * 16000));
    for (double &x : w.samples) x = gauss(rng);
    const Waveform back = Istft(Stft(w, cfg), cfg, w.Size());
    double num = 0.0, den = 0.0;
    for (size_t n = 0; n < w.Size(); ++n) {
      num += (back.samples[n] - w.samples[n]) * (back.samples[n] - w.samples[n]);
      den += w.samples[n] * w.samples[n];
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  const double t = Seconds(start);
  return {worst < 1e-10 && t < 5.0,
          Fmt("max relative L2 error %.3g, %.2f s", worst, t)};
}

Outcome WienerOracle() {
  const auto start = Clock::now();
  std::vector<double> gains;
  for (int i = 0; i <= 10; ++i) gains.push_back(i / 10.0);
  const RiskTable table = MmseRiskOracle(GaussianPrior{1.0, 1.0}, 1000000, gains, 7);
  const double best = table.gains[table.ArgMin()];
  const double t = Seconds(start);
  const bool ok = best == 0.5 && std::fabs(table.residual_variance - 0.5) <= 0.005 &&
                  t < 30.0;
  return {ok, Fmt("argmin gain %.1f, residual variance %.5f, %.2f s", best,
                  table.residual_variance, t)};
}

Outcome AmapVersusRicianMode() {
  const auto start = Clock::now();
  double worst = 0.0, worst_small = 0.0;
  double at_w = 0, at_lam = 0, at_x = 0;
  bool exact_at_zero = true, shape = true;
  for (int wi = 1; wi <= 9; ++wi) {
    const double w = wi / 10.0;
    for (double x : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      exact_at_zero = exact_at_zero && AmapGain(w, 0.0, x) == w;
      for (double lam : {0.01, 0.1, 0.5, 1.0}) {
        const double upper = x + 6.0 * std::sqrt(lam);
        const double mode = RicianMapBruteForce(w, lam, x, upper / 50000.0);
        const double amap = AmapGain(w, lam, x) * x;
        const double rel = std::fabs(amap - mode) / mode;
        if (rel > worst) {
          worst = rel;
          at_w = w;
          at_lam = lam;
          at_x = x;
        }
        if (lam <= 0.1) worst_small = std::max(worst_small, rel);
      }
      // Gain above WF for small inputs, approaching WF for large ones.
      shape = shape && AmapGain(w, 0.5, 0.1) > w &&
              AmapGain(w, 0.5, 1e4) - w < 1e-4;
    }
  }
  const double t = Seconds(start);
  const bool ok = worst <= 0.10 && worst_small <= 0.05 && exact_at_zero && shape &&
                  t < 10.0;
  return {ok, Fmt("max rel deviation %.4f at (wf %.1f, lam %.2f, ", worst, at_w, at_lam) +
                  Fmt("xmag %.1f); lam<=0.1: %.4f; ", at_x, worst_small) +
                  (exact_at_zero ? "lam=0 exact; " : "lam=0 NOT exact; ") +
                  (shape ? "shape ok; " : "shape WRONG; ") + Fmt("%.2f s", t)};
}

Outcome GradientSuite() {
  const auto start = Clock::now();
  const GradcheckReport report = RunGradcheck(GradcheckOptions{});
  const double t = Seconds(start);
  std::string detail;
  for (const GradcheckSuite &s : report.suites)
    detail += s.name + Fmt(" %.1e; ", s.max_rel_error);
  return {report.passed && t < 60.0, detail + Fmt("%.2f s", t)};
}

// Survivor RMSE through an exactly rounded multiprecision sum, for the
// removal order perm (perm[0] removed first).
std::vector<double> ReferenceCurve(const std::vector<double> &errors,
                                   const std::vector<int> &perm, int steps) {
  using Big = boost::multiprecision::cpp_bin_float_100;
  const size_t n = errors.size();
  std::vector<double> raw(steps);
  for (int k = 0; k < steps; ++k) {
    const size_t r = static_cast<size_t>(k) * n / steps;
    Big sum = 0;
    for (size_t i = r; i < n; ++i) sum += errors[perm[i]];
    raw[k] = std::sqrt(sum.convert_to<double>() / static_cast<double>(n - r));
  }
  std::vector<double> out(steps);
  for (int k = 0; k < steps; ++k) out[k] = raw[0] > 0.0 ? raw[k] / raw[0] : 1.0;
  return out;
}

Outcome SparsificationChecks() {
  std::mt19937_64 rng(55);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  bool self_zero = true, dominance = true, brute = true;
  double min_ause = std::numeric_limits<double>::infinity();
  for (int field = 0; field < 1000; ++field) {
    const int n = 50 + field % 200;
    std::vector<double> err(n), unc(n);
    for (int i = 0; i < n; ++i) {
      err[i] = expo(rng) * std::exp(gauss(rng));
      unc[i] = std::exp(std::log(err[i] + 1e-12) + gauss(rng));
    }
    const SparsificationCurve oracle = OracleCurve(err);
    self_zero = self_zero && Ause(Sparsify(err, err), oracle) == 0.0;
    const double a = Ause(Sparsify(err, unc), oracle);
    min_ause = std::min(min_ause, a);
    dominance = dominance && a >= 0.0;
  }
  long orderings = 0;
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> err(n);
    for (double &e : err) e = expo(rng);
    for (int steps : {n, 2 * n + 1, 100}) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<double> unc(n);
        for (int i = 0; i < n; ++i) unc[perm[i]] = n - i;
        brute = brute && Sparsify(err, unc, steps).rmse == ReferenceCurve(err, perm, steps);
        ++orderings;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return {self_zero && dominance && brute,
          std::string("self AUSE zero: ") + (self_zero ? "yes" : "NO") +
              Fmt("; min AUSE over 1000 fields %.3g", min_ause) +
              Fmt("; %.0f orderings ", static_cast<double>(orderings)) +
              (brute ? "bit-identical" : "MISMATCH")};
}

Outcome DecompositionIdentity() {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long bins = 0, violations = 0;
  for (int set_index = 0; set_index < 200; ++set_index) {
    const int members = 2 + set_index % 7, frames = 5 + set_index % 11, freqs = 9;
    PredictionSet set;
    ComplexGrid x(frames, freqs);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      x.data()[i] = {gauss(rng), gauss(rng)};
    for (int m = 0; m < members; ++m) {
      MemberPrediction p;
      p.gain = RealGrid(frames, freqs);
      RealGrid lam(frames, freqs);
      for (Eigen::Index i = 0; i < lam.size(); ++i) {
        p.gain.data()[i] = unit(rng);
        lam.data()[i] = std::exp(8.0 * gauss(rng));
      }
      p.wiener_estimate = x.cwiseProduct(p.gain.cast<std::complex<double>>());
      p.variance = lam;
      set.members.push_back(std::move(p));
    }
    const CombinedPrediction c = CombineTotal(set);
    for (Eigen::Index i = 0; i < c.total->size(); ++i, ++bins)
      violations += c.total->data()[i] - c.epistemic.data()[i] -
                        c.aleatoric->data()[i] != 0.0;
  }
  return {violations == 0, Fmt("%.0f bins, %.0f non-zero residuals",
                               static_cast<double>(bins),
                               static_cast<double>(violations))};
}

Outcome SiSdrProperties() {
  std::vector<double> ref(16000), est(16000);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (size_t i = 0; i < ref.size(); ++i) {
    ref[i] = gauss(rng);
    est[i] = ref[i] + 0.5 * gauss(rng);
  }
  const double base = SiSdr(ref, est);
  double scale_dev = 0.0;
  for (double s : {0.1, 1.0, 7.0}) {
    std::vector<double> scaled = est;
    for (double &v : scaled) v *= s;
    scale_dev = std::max(scale_dev, std::fabs(SiSdr(ref, scaled) - base));
  }
  const int n = 1600;
  std::vector<double> sine(n), noisy(n);
  for (int i = 0; i < n; ++i) {
    const double ph = 2.0 * 3.14159265358979323846 * 10.0 * i / n;
    sine[i] = std::sin(ph);
    noisy[i] = sine[i] + std::sqrt(0.1) * std::cos(ph);
  }
  const double ortho = SiSdr(sine, noisy);
  double mix_dev = 0.0;
  for (double snr : {-10.0, -5.0, 0.0, 5.0, 10.0})
    for (int kind = 0; kind < 4; ++kind)
      for (uint64_t seed = 1; seed <= 3; ++seed) {
        const Waveform s = SynthSpeech(seed, 3.0);
        const Waveform noise =
            SynthNoise(static_cast<NoiseKind>(kind), 1000 + seed, 3.0);
        const Mixture m = MixAtSnr(s, noise, snr);
        mix_dev = std::max(mix_dev, std::fabs(SiSdr(s.samples, m.mixture.samples) - snr));
      }
  const bool ok = scale_dev <= 1e-9 && std::fabs(ortho - 10.0) <= 1e-6 && mix_dev <= 0.1;
  return {ok, Fmt("scale deviation %.2g dB; orthogonal case %.9f dB; "
                  "mixture deviation %.4f dB",
                  scale_dev, ortho, mix_dev)};
}

struct PipelineOptions {
  std::string work_dir;
};

Outcome DeskScaleReplication(const PipelineOptions &opts) {
  const auto start = Clock::now();
  RunConfig base;
  base.Set("corpus_dir", (fs::path(opts.work_dir) / "corpus").string());
  base.Set("work_dir", (fs::path(opts.work_dir) / "runs").string());
  CmdGenData(base);
  std::map<std::string, std::vector<EvalRow>> evals;
  for (const std::string &method : MethodNames()) {
    RunConfig cfg = base;
    cfg.Set("method", method);
    CmdTrain(cfg);
    CmdEnhance(cfg);
    evals[method] = CmdEvaluate(cfg);
  }
  const double pipeline_s = Seconds(start);

  auto sparsify = [&](const std::string &method, const std::string &source) {
    RunConfig cfg = base;
    cfg.Set("method", method);
    cfg.Set("source", source);
    return CmdSparsify(cfg);
  };
  const SparsifyResult ale = sparsify("aleatoric", "aleatoric");
  const SparsifyResult de_total = sparsify("de_aleatoric", "total");
  sparsify("de_aleatoric", "aleatoric");
  sparsify("de_aleatoric", "epistemic");
  sparsify("deep_ensembles", "epistemic");
  sparsify("mc_dropout", "epistemic");

  const bool a = ale.ause < 0.5 * ale.ause_shuffled;
  const bool b = de_total.ause <= ale.ause;
  if (!b)
    std::printf("  WARN 7(b): deep-ensemble total AUSE %.4f > aleatoric AUSE %.4f\n",
                de_total.ause, ale.ause);

  auto improvement = [&](const std::string &method, const std::string &est) {
    const EvalRow *row = FindPooledRow(evals.at(method), est);
    if (row == nullptr) throw std::runtime_error("no pooled " + est + " row for " + method);
    return row->improvement.mean;
  };
  const double wf_base = improvement("baseline_wf", "wf");
  const double amap_ale = improvement("aleatoric", "amap");
  const double de_mean = improvement("deep_ensembles", "wf");
  const bool c = amap_ale >= wf_base - 0.5 && de_mean >= wf_base;

  RunConfig mc = base;
  mc.Set("method", "mc_dropout");
  const StftConfig stft = mc.Stft();
  long active = 0, positive = 0;
  for (const Utterance &utt : LoadSplit(mc.Get("corpus_dir"), "test")) {
    const ComplexSpectrogram clean = Stft(utt.clean, stft);
    const RealGrid epi =
        ReadGridCsv((fs::path(EnhanceDir(mc)) / (utt.id + "_epistemic.csv")).string());
    const RealGrid power = clean.coeffs.cwiseAbs2();
    const double floor = power.maxCoeff() * 1e-4;  // 40 dB below the peak
    for (Eigen::Index i = 0; i < power.size(); ++i) {
      if (power.data()[i] < floor) continue;
      ++active;
      positive += epi.data()[i] > 0.0;
    }
  }
  const double share = active > 0 ? static_cast<double>(positive) / active : 0.0;
  const bool d = share > 0.99;
  const bool time_ok = pipeline_s < 1800.0;

  std::printf("  7(a) aleatoric AUSE %.4f vs shuffled %.4f: %s\n", ale.ause,
              ale.ause_shuffled, a ? "ok" : "FAIL");
  std::printf("  7(b) de_aleatoric total AUSE %.4f vs aleatoric %.4f: %s\n",
              de_total.ause, ale.ause, b ? "ok" : "warn");
  std::printf("  7(c) improvement [dB]: baseline wf %.3f, aleatoric amap %.3f, "
              "deep ensemble mean %.3f: %s\n",
              wf_base, amap_ale, de_mean, c ? "ok" : "FAIL");
  std::printf("  7(d) MC-dropout epistemic > 0 on %.4f%% of %ld active bins: %s\n",
              100.0 * share, active, d ? "ok" : "FAIL");
  std::printf("  7 pipeline %.1f s: %s\n", pipeline_s, time_ok ? "ok" : "FAIL");
  return {a && c && d && time_ok,
          Fmt("pipeline %.0f s; see 7(a)-(d) above", pipeline_s)};
}

}  // namespace
}  // namespace uncse

int main(int argc, char **argv) {
  using namespace uncse;
  CLI::App app{"uncse acceptance checks"};
  std::vector<int> only;
  std::string work_dir = "acceptance-run";
  bool keep = false;
  app.add_option("--only", only, "Criteria to run (default all)")->delimiter(',');
  app.add_option("--work-dir", work_dir, "Directory for the training pipeline");
  app.add_flag("--keep", keep, "Keep the pipeline outputs");
  CLI11_PARSE(app, argc, argv);

  const PipelineOptions pipeline{work_dir};
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, StftRoundTrip},
      {2, WienerOracle},
      {3, AmapVersusRicianMode},
      {4, GradientSuite},
      {5, SparsificationChecks},
      {6, DecompositionIdentity},
      {7, [&] { return DeskScaleReplication(pipeline); }},
      {8, SiSdrProperties},
  };
  int failures = 0;
  for (const auto &[id, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
      continue;
    Outcome out;
    try {
      out = run();
    } catch (const std::exception &e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += !out.pass;
    std::printf("criterion %d: %s  %s\n", id, out.pass ? "PASS" : "FAIL",
                out.detail.c_str());
    std::fflush(stdout);
  }
  if (!keep) std::filesystem::remove_all(work_dir);
  return failures == 0 ? 0 : 1;
}
