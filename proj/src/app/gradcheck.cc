// src/app/gradcheck.cc

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

#include "app/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>

#include "losses/losses.h"
#include "net/features.h"
#include "net/mask-net.h"

namespace uncse {

namespace {

using LossFn = std::function<double(const std::vector<double> &)>;

struct Problem {
  std::vector<double> params;
  std::vector<double> analytic;
  LossFn loss;
};

// Flattened (W, log lambda) parameterisation of a posterior field.
std::vector<double> FlattenField(const RealGrid &wiener, const RealGrid *log_var) {
  std::vector<double> p(wiener.data(), wiener.data() + wiener.size());
  if (log_var) p.insert(p.end(), log_var->data(), log_var->data() + log_var->size());
  return p;
}

PosteriorField UnflattenField(const std::vector<double> &p, Eigen::Index rows,
                              Eigen::Index cols, const RealGrid &fixed_var) {
  PosteriorField field;
  field.wiener = Eigen::Map<const RealGrid>(p.data(), rows, cols);
  if (static_cast<Eigen::Index>(p.size()) == 2 * rows * cols)
    field.variance =
        Eigen::Map<const RealGrid>(p.data() + rows * cols, rows, cols)
            .array()
            .exp();
  else
    field.variance = fixed_var;
  return field;
}

struct Instance {
  StftConfig stft;
  Waveform clean;
  ComplexSpectrogram clean_spec;
  ComplexSpectrogram noisy_spec;
  RealGrid wiener;
  RealGrid log_var;
};

// Random waveform pair and posterior field on a frame_len-sized STFT.
Instance MakeInstance(int frame_len, int frames, std::mt19937_64 &rng) {
  Instance in;
  in.stft = StftConfig{frame_len, frame_len / 2};
  const size_t len = static_cast<size_t>(frames - 1) * in.stft.hop -
                     in.stft.Padding() + 1;
  std::normal_distribution<double> gauss(0.0, 1.0);
  Waveform noisy;
  in.clean.samples.resize(len);
  noisy.samples.resize(len);
  for (size_t i = 0; i < len; ++i) {
    in.clean.samples[i] = gauss(rng);
    noisy.samples[i] = in.clean.samples[i] + 0.7 * gauss(rng);
  }
  in.clean_spec = Stft(in.clean, in.stft);
  in.noisy_spec = Stft(noisy, in.stft);
  const Eigen::Index t = in.noisy_spec.NumFrames(), f = in.noisy_spec.NumBins();
  in.wiener.resize(t, f);
  in.log_var.resize(t, f);
  for (Eigen::Index i = 0; i < in.wiener.size(); ++i) {
    in.wiener.data()[i] = 0.05 + 0.9 * UniformUnit(rng);
    in.log_var.data()[i] = -2.0 + 3.0 * UniformUnit(rng);
  }
  return in;
}

Problem FieldProblem(const Instance &in, bool with_variance,
                     std::function<LossReport(const PosteriorField &)> fn) {
  const Eigen::Index rows = in.wiener.rows(), cols = in.wiener.cols();
  const RealGrid fixed_var = in.log_var.array().exp();
  Problem p;
  p.params = FlattenField(in.wiener, with_variance ? &in.log_var : nullptr);
  const LossReport r = fn(UnflattenField(p.params, rows, cols, fixed_var));
  p.analytic = FlattenField(r.grad_wiener, with_variance ? &r.grad_log_variance : nullptr);
  p.loss = [=](const std::vector<double> &x) {
    return fn(UnflattenField(x, rows, cols, fixed_var)).value;
  };
  return p;
}

// Tiny random network: F = 9 bins, 8 frames, features -> net -> hybrid loss.
Problem NetworkProblem(const Instance &in, double beta, uint64_t seed) {
  const FeatureSpec spec{3, in.stft.NumBins()};
  const Eigen::MatrixXd feats = ComputeFeatures(in.noisy_spec, spec);
  auto net = std::make_shared<MaskNet>(
      std::vector<int>{spec.Dim(), 16, 16, 2 * spec.num_bins}, DropoutSpec{},
      seed);
  auto loss_of = [=](const MaskNet &m) {
    const NetOutput out = m.Forward(feats, ForwardMode::kEval, nullptr);
    return std::make_pair(
        Hybrid(in.clean_spec, in.noisy_spec, out.field, in.clean, beta, in.stft),
        out);
  };
  Problem p;
  for (const DenseLayer &l : net->Layers()) {
    p.params.insert(p.params.end(), l.weight.data(), l.weight.data() + l.weight.size());
    p.params.insert(p.params.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  {
    auto [report, out] = loss_of(*net);
    const std::vector<DenseLayer> grads =
        net->Backward(out.cache, report.grad_wiener, report.grad_log_variance);
    for (const DenseLayer &g : grads) {
      p.analytic.insert(p.analytic.end(), g.weight.data(), g.weight.data() + g.weight.size());
      p.analytic.insert(p.analytic.end(), g.bias.data(), g.bias.data() + g.bias.size());
    }
  }
  p.loss = [=](const std::vector<double> &x) {
    MaskNet m = *net;
    size_t pos = 0;
    for (DenseLayer &l : m.MutableLayers()) {
      std::copy_n(x.begin() + pos, l.weight.size(), l.weight.data());
      pos += l.weight.size();
      std::copy_n(x.begin() + pos, l.bias.size(), l.bias.data());
      pos += l.bias.size();
    }
    return loss_of(m).first.value;
  };
  return p;
}

Problem MakeProblem(const std::string &name, const GradcheckOptions &opts) {
  std::mt19937_64 rng(MixSeed(opts.seed ^ std::hash<std::string>{}(name)));
  if (name == "sisdr_signal") {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> ref(64), est(64);
    for (size_t i = 0; i < ref.size(); ++i) {
      ref[i] = gauss(rng);
      est[i] = 0.8 * ref[i] + 0.5 * gauss(rng);
    }
    Problem p;
    p.params = est;
    p.analytic = SiSdrLoss(ref, est).grad;
    p.loss = [ref](const std::vector<double> &x) { return SiSdrLoss(ref, x).value; };
    return p;
  }
  // 4 x 6 grids for the spectral losses, F = 9 and T = 8 for istft paths.
  const bool small = name == "nll" || name == "mse";
  const Instance in = small ? MakeInstance(10, 4, rng) : MakeInstance(16, 8, rng);
  const double beta = opts.hybrid_beta;
  if (name == "nll")
    return FieldProblem(in, true, [in](const PosteriorField &f) {
      return NllPosterior(in.clean_spec, in.noisy_spec, f);
    });
  if (name == "mse")
    return FieldProblem(in, false, [in](const PosteriorField &f) {
      return Mse(in.clean_spec, in.noisy_spec, f.wiener);
    });
  if (name == "sisdr_wiener_path")
    return FieldProblem(in, false, [in](const PosteriorField &f) {
      return SiSdrWienerPath(in.clean, in.noisy_spec, f.wiener, in.stft);
    });
  if (name == "sisdr_amap_path")
    return FieldProblem(in, true, [in](const PosteriorField &f) {
      return SiSdrAmapPath(in.clean, in.noisy_spec, f, in.stft);
    });
  if (name == "hybrid")
    return FieldProblem(in, true, [in, beta](const PosteriorField &f) {
      return LossReport(
          Hybrid(in.clean_spec, in.noisy_spec, f, in.clean, beta, in.stft));
    });
  if (name == "network_hybrid") return NetworkProblem(in, beta, opts.seed);
  throw ConfigError("unknown gradcheck suite '" + name + "'");
}

}  // namespace

const std::vector<std::string> &GradcheckSuiteNames() {
  static const std::vector<std::string> names = {
      "nll",          "mse",    "sisdr_signal",  "sisdr_wiener_path",
      "sisdr_amap_path", "hybrid", "network_hybrid"};
  return names;
}

GradcheckReport RunGradcheck(const GradcheckOptions &opts) {
  if (!opts.corrupt.empty() &&
      std::find(GradcheckSuiteNames().begin(), GradcheckSuiteNames().end(),
                opts.corrupt) == GradcheckSuiteNames().end())
    throw ConfigError("unknown gradcheck suite '" + opts.corrupt + "'");
  GradcheckReport report;
  report.passed = true;
  for (const std::string &name : GradcheckSuiteNames()) {
    Problem p = MakeProblem(name, opts);
    if (name == opts.corrupt) p.analytic[0] = 1.1 * p.analytic[0] + 1e-3;
    GradcheckSuite suite;
    suite.name = name;
    suite.num_coords = p.params.size();
    std::vector<double> x = p.params;
    for (size_t i = 0; i < x.size(); ++i) {
      x[i] = p.params[i] + opts.step;
      const double up = p.loss(x);
      x[i] = p.params[i] - opts.step;
      const double down = p.loss(x);
      x[i] = p.params[i];
      const double numeric = (up - down) / (2.0 * opts.step);
      const double a = p.analytic[i];
      const double rel = std::fabs(a - numeric) /
                         std::max({std::fabs(a), std::fabs(numeric), opts.floor});
      suite.max_rel_error = std::max(suite.max_rel_error, rel);
    }
    suite.passed = suite.max_rel_error < opts.tolerance;
    report.passed = report.passed && suite.passed;
    report.suites.push_back(suite);
  }
  return report;
}

}  // namespace uncse
