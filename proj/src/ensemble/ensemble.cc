// src/ensemble/ensemble.cc

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

#include "ensemble/ensemble.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "base/text.h"

namespace uncse {

namespace {

// Sum in ascending order: the result does not depend on member order.
double CanonicalSum(std::vector<double> &values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

// Rounds both non-negative terms to multiples of ulp(a + b). Their sum is then
// exactly representable, so (a + b) - a - b evaluates to 0 in floating point.
// The perturbation is at most half an ulp of the sum.
void SnapToSumGrid(double *a, double *b) {
  const double sum = *a + *b;
  if (sum == 0.0 || !std::isfinite(sum)) return;
  const double q = std::nextafter(sum, HUGE_VAL) - sum;
  *a = std::nearbyint(*a / q) * q;
  *b = std::nearbyint(*b / q) * q;
}

MemberPrediction MakeMember(const PosteriorField &field,
                            const ComplexSpectrogram &noisy,
                            bool with_variance) {
  MemberPrediction member;
  member.gain = field.wiener;
  member.wiener_estimate =
      noisy.coeffs.cwiseProduct(field.wiener.cast<Complex>());
  if (with_variance) member.variance = field.variance;
  return member;
}

}  // namespace

void PredictionSet::Check() const {
  if (members.empty()) UNCSE_ERR << "PredictionSet: no members";
  const Eigen::Index rows = members[0].wiener_estimate.rows();
  const Eigen::Index cols = members[0].wiener_estimate.cols();
  for (const MemberPrediction &m : members) {
    if (m.wiener_estimate.rows() != rows || m.wiener_estimate.cols() != cols ||
        m.gain.rows() != rows || m.gain.cols() != cols)
      UNCSE_ERR << "PredictionSet: member shapes differ";
    if (m.variance) {
      if (m.variance->rows() != rows || m.variance->cols() != cols)
        UNCSE_ERR << "PredictionSet: variance shape differs";
      if ((m.variance->array() < 0.0).any())
        UNCSE_ERR << "PredictionSet: negative variance";
    }
  }
}

bool PredictionSet::HasVariance() const {
  return !members.empty() &&
         std::all_of(members.begin(), members.end(),
                     [](const MemberPrediction &m) { return m.variance.has_value(); });
}

std::vector<TrainResult> DeepEnsembleTrain(
    const std::vector<int> &layer_dims, const DropoutSpec &dropout,
    const TrainConfig &base, const std::vector<uint64_t> &seeds,
    std::span<const Utterance> train, std::span<const Utterance> val,
    const StftConfig &stft, const FeatureSpec &features) {
  if (seeds.empty()) throw ConfigError("DeepEnsembleTrain: need M >= 1");
  if (std::set<uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
    throw ConfigError("DeepEnsembleTrain: member seeds must be distinct");
  std::vector<TrainResult> members;
  for (uint64_t seed : seeds) {
    TrainConfig cfg = base;
    cfg.seed = seed;
    try {
      members.push_back(Train(MaskNet(layer_dims, dropout, seed), train, val,
                              cfg, stft, features));
    } catch (const NumericError &e) {
      throw NumericError("ensemble member with seed " + std::to_string(seed) +
                         ": " + e.what());
    }
  }
  return members;
}

PredictionSet McDropoutPredict(const MaskNet &net,
                               const Eigen::MatrixXd &features,
                               const ComplexSpectrogram &noisy, int num_samples,
                               uint64_t seed, bool with_variance) {
  if (num_samples < 1) UNCSE_ERR << "McDropoutPredict: M must be >= 1";
  std::mt19937_64 rng(seed);
  PredictionSet set;
  set.source = PredictionSource::kMcDropout;
  for (int m = 0; m < num_samples; ++m) {
    const NetOutput out = net.Forward(features, ForwardMode::kEvalMc, &rng);
    set.members.push_back(MakeMember(out.field, noisy, with_variance));
  }
  return set;
}

PredictionSet EnsemblePredict(std::span<const MaskNet> nets,
                              const Eigen::MatrixXd &features,
                              const ComplexSpectrogram &noisy,
                              bool with_variance) {
  if (nets.empty()) UNCSE_ERR << "EnsemblePredict: no members";
  PredictionSet set;
  set.source = PredictionSource::kDeepEnsemble;
  for (const MaskNet &net : nets) {
    const NetOutput out = net.Forward(features, ForwardMode::kEval, nullptr);
    set.members.push_back(MakeMember(out.field, noisy, with_variance));
  }
  return set;
}

CombinedPrediction CombineEpistemic(const PredictionSet &preds) {
  preds.Check();
  const size_t num = preds.members.size();
  const double inv_m = 1.0 / static_cast<double>(num);
  const Eigen::Index rows = preds.members[0].wiener_estimate.rows();
  const Eigen::Index cols = preds.members[0].wiener_estimate.cols();
  CombinedPrediction out;
  out.mean.resize(rows, cols);
  out.epistemic.resize(rows, cols);
  std::vector<double> re(num), im(num), dev(num);
  for (Eigen::Index t = 0; t < rows; ++t) {
    for (Eigen::Index f = 0; f < cols; ++f) {
      for (size_t m = 0; m < num; ++m) {
        re[m] = preds.members[m].wiener_estimate(t, f).real();
        im[m] = preds.members[m].wiener_estimate(t, f).imag();
      }
      const Complex mean(CanonicalSum(re) * inv_m, CanonicalSum(im) * inv_m);
      for (size_t m = 0; m < num; ++m)
        dev[m] = std::norm(preds.members[m].wiener_estimate(t, f) - mean);
      out.mean(t, f) = mean;
      out.epistemic(t, f) = CanonicalSum(dev) * inv_m;
    }
  }
  return out;
}

CombinedPrediction CombineTotal(const PredictionSet &preds) {
  if (!preds.HasVariance())
    UNCSE_ERR << "CombineTotal: every member needs an aleatoric variance";
  CombinedPrediction out = CombineEpistemic(preds);
  const size_t num = preds.members.size();
  const double inv_m = 1.0 / static_cast<double>(num);
  RealGrid aleatoric(out.epistemic.rows(), out.epistemic.cols());
  RealGrid total(out.epistemic.rows(), out.epistemic.cols());
  std::vector<double> lam(num);
  for (Eigen::Index i = 0; i < aleatoric.size(); ++i) {
    for (size_t m = 0; m < num; ++m)
      lam[m] = preds.members[m].variance->data()[i];
    double epi = out.epistemic.data()[i];
    double ale = CanonicalSum(lam) * inv_m;
    SnapToSumGrid(&epi, &ale);
    out.epistemic.data()[i] = epi;
    aleatoric.data()[i] = ale;
    total.data()[i] = epi + ale;
  }
  out.total = std::move(total);
  out.aleatoric = std::move(aleatoric);
  return out;
}

RealGrid AverageAmap(const PredictionSet &preds,
                     const ComplexSpectrogram &noisy) {
  preds.Check();
  if (!preds.HasVariance())
    UNCSE_ERR << "AverageAmap: every member needs an aleatoric variance";
  const size_t num = preds.members.size();
  const double inv_m = 1.0 / static_cast<double>(num);
  const RealGrid mag = Magnitude(noisy);
  if (mag.rows() != preds.members[0].gain.rows() ||
      mag.cols() != preds.members[0].gain.cols())
    UNCSE_ERR << "AverageAmap: noisy spectrogram shape mismatch";
  RealGrid out(mag.rows(), mag.cols());
  std::vector<double> est(num);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double x = mag.data()[i];
    for (size_t m = 0; m < num; ++m)
      est[m] = AmapGain(preds.members[m].gain.data()[i],
                        preds.members[m].variance->data()[i], x) *
               x;
    out.data()[i] = CanonicalSum(est) * inv_m;
  }
  return out;
}

void WriteEnsembleManifest(const std::string &path,
                           const EnsembleManifest &manifest) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << "uncse-ensemble 1\n";
  os << "method " << manifest.method << '\n';
  for (size_t m = 0; m < manifest.members.size(); ++m)
    os << "member " << m << ' ' << manifest.members[m].seed << ' '
       << manifest.members[m].checkpoint << '\n';
}

EnsembleManifest ReadEnsembleManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read ensemble manifest " + path);
  EnsembleManifest manifest;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    const std::vector<std::string> f = SplitWhitespace(line);
    if (f.empty() || f[0][0] == '#') continue;
    if (f[0] == "uncse-ensemble") {
      if (f.size() != 2 || f[1] != "1")
        throw ConfigError(path + ": unsupported manifest version");
      header = true;
    } else if (f[0] == "method" && f.size() == 2) {
      manifest.method = f[1];
    } else if (f[0] == "member" && f.size() == 4) {
      if (ParseLong(f[1]) != static_cast<long>(manifest.members.size()))
        throw ConfigError(path + ": members out of order");
      manifest.members.push_back({ParseUint64(f[2]), f[3]});
    } else {
      throw ConfigError(path + ": malformed line '" + line + "'");
    }
  }
  if (!header || manifest.members.empty())
    throw ConfigError(path + ": not an ensemble manifest");
  return manifest;
}

}  // namespace uncse
