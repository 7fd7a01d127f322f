// tests/ensemble-test.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "ensemble/ensemble.h"
#include "statmodel/posterior.h"

namespace uncse {
namespace {

PredictionSet RandomSet(int members, int frames, int bins, uint64_t seed,
                        bool with_variance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexGrid x(frames, bins);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x.data()[i] = {gauss(rng), gauss(rng)};
  PredictionSet set;
  for (int m = 0; m < members; ++m) {
    MemberPrediction p;
    p.gain = RealGrid(frames, bins);
    for (Eigen::Index i = 0; i < p.gain.size(); ++i) p.gain.data()[i] = unit(rng);
    p.wiener_estimate = x.cwiseProduct(p.gain.cast<std::complex<double>>());
    if (with_variance) {
      RealGrid v(frames, bins);
      for (Eigen::Index i = 0; i < v.size(); ++i)
        v.data()[i] = std::exp(6.0 * gauss(rng));  // wide dynamic range
      p.variance = v;
    }
    set.members.push_back(std::move(p));
  }
  return set;
}

TEST(EnsembleTest, EpistemicMatchesTwoPassOracle) {
  const PredictionSet set = RandomSet(5, 4, 6, 1, false);
  const CombinedPrediction c = CombineEpistemic(set);
  EXPECT_FALSE(c.aleatoric.has_value());
  for (Eigen::Index i = 0; i < c.mean.size(); ++i) {
    std::complex<long double> mean = 0;
    for (const auto &m : set.members)
      mean += std::complex<long double>(m.wiener_estimate.data()[i]);
    mean /= 5.0L;
    long double var = 0;
    for (const auto &m : set.members)
      var += std::norm(std::complex<long double>(m.wiener_estimate.data()[i]) - mean);
    var /= 5.0L;
    EXPECT_NEAR(c.mean.data()[i].real(), static_cast<double>(mean.real()), 1e-15);
    EXPECT_NEAR(c.epistemic.data()[i], static_cast<double>(var),
                1e-14 * std::max(1.0, static_cast<double>(var)));
  }
}

TEST(EnsembleTest, SingleMemberHasZeroEpistemic) {
  const CombinedPrediction c = CombineEpistemic(RandomSet(1, 3, 3, 2, false));
  EXPECT_EQ(c.epistemic.cwiseAbs().maxCoeff(), 0.0);
}

TEST(EnsembleTest, TotalDecompositionIsExact) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const PredictionSet set = RandomSet(2 + seed % 6, 7, 9, seed, true);
    const CombinedPrediction c = CombineTotal(set);
    ASSERT_TRUE(c.total.has_value());
    for (Eigen::Index i = 0; i < c.total->size(); ++i) {
      double mean_lambda = 0.0;
      for (const auto &m : set.members) mean_lambda += m.variance->data()[i];
      mean_lambda /= set.members.size();
      const double total = c.total->data()[i];
      EXPECT_EQ(total - c.epistemic.data()[i] - c.aleatoric->data()[i], 0.0);
      EXPECT_GE(total, c.epistemic.data()[i]);
      EXPECT_GE(total, c.aleatoric->data()[i]);
      // Snapping moves each part by at most half an ulp of the total.
      EXPECT_LE(std::fabs(c.aleatoric->data()[i] - mean_lambda),
                1e-14 * std::max(total, 1e-300));
    }
  }
}

TEST(EnsembleTest, PermutationInvariance) {
  PredictionSet set = RandomSet(6, 5, 7, 3, true);
  const CombinedPrediction a = CombineTotal(set);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(set.members.begin(), set.members.end(), rng);
    const CombinedPrediction b = CombineTotal(set);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.epistemic, b.epistemic);
    EXPECT_EQ(*a.aleatoric, *b.aleatoric);
    EXPECT_EQ(*a.total, *b.total);
  }
}

TEST(EnsembleTest, InvalidSetsRejected) {
  PredictionSet empty;
  EXPECT_THROW(CombineEpistemic(empty), std::invalid_argument);
  PredictionSet mixed = RandomSet(3, 2, 2, 5, true);
  mixed.members[1].variance.reset();
  EXPECT_THROW(CombineTotal(mixed), std::invalid_argument);
  PredictionSet no_var = RandomSet(3, 2, 2, 5, false);
  EXPECT_THROW(CombineTotal(no_var), std::invalid_argument);
  PredictionSet shapes = RandomSet(2, 2, 2, 5, false);
  shapes.members[1] = RandomSet(1, 3, 2, 6, false).members[0];
  EXPECT_THROW(CombineEpistemic(shapes), std::invalid_argument);
}

TEST(EnsembleTest, AverageAmapMatchesMemberGains) {
  const PredictionSet set = RandomSet(3, 4, 5, 7, true);
  ComplexSpectrogram noisy;
  noisy.coeffs = ComplexGrid::Random(4, 5);
  const RealGrid avg = AverageAmap(set, noisy);
  for (Eigen::Index t = 0; t < 4; ++t)
    for (Eigen::Index f = 0; f < 5; ++f) {
      const double mag = std::abs(noisy.coeffs(t, f));
      double sum = 0.0;
      for (const auto &m : set.members)
        sum += AmapGain(m.gain(t, f), (*m.variance)(t, f), mag) * mag;
      EXPECT_NEAR(avg(t, f), sum / 3.0, 1e-12 * std::max(1.0, sum));
    }
}

TEST(EnsembleTest, McDropoutWithoutDropoutIsDeterministic) {
  const MaskNet net({15, 8, 10}, DropoutSpec{}, 1);
  ComplexSpectrogram noisy;
  noisy.coeffs = ComplexGrid::Random(6, 5);
  const Eigen::MatrixXd feats = Eigen::MatrixXd::Random(15, 6);
  const PredictionSet set = McDropoutPredict(net, feats, noisy, 4, 9, true);
  EXPECT_EQ(set.source, PredictionSource::kMcDropout);
  ASSERT_EQ(set.members.size(), 4u);
  EXPECT_EQ(CombineTotal(set).epistemic.cwiseAbs().maxCoeff(), 0.0);
}

TEST(EnsembleTest, McDropoutSpreadsPredictions) {
  DropoutSpec d;
  d.layers = {0};
  d.p = 0.5;
  d.active_at_inference = true;
  const MaskNet net({15, 32, 10}, d, 1);
  ComplexSpectrogram noisy;
  noisy.coeffs = ComplexGrid::Random(6, 5);
  const Eigen::MatrixXd feats = Eigen::MatrixXd::Random(15, 6);
  const PredictionSet a = McDropoutPredict(net, feats, noisy, 8, 9, false);
  const PredictionSet b = McDropoutPredict(net, feats, noisy, 8, 9, false);
  const CombinedPrediction ca = CombineEpistemic(a);
  EXPECT_GT(ca.epistemic.minCoeff(), 0.0);
  EXPECT_EQ(ca.epistemic, CombineEpistemic(b).epistemic);
  EXPECT_FALSE(a.HasVariance());
}

TEST(EnsembleTest, EnsemblePredictUsesEveryMember) {
  std::vector<MaskNet> nets;
  for (uint64_t s = 1; s <= 3; ++s) nets.emplace_back(std::vector<int>{15, 8, 10}, DropoutSpec{}, s);
  ComplexSpectrogram noisy;
  noisy.coeffs = ComplexGrid::Random(6, 5);
  const Eigen::MatrixXd feats = Eigen::MatrixXd::Random(15, 6);
  const PredictionSet set = EnsemblePredict(nets, feats, noisy, true);
  ASSERT_EQ(set.members.size(), 3u);
  for (size_t m = 0; m < 3; ++m) {
    const NetOutput out = nets[m].Forward(feats, ForwardMode::kEval, nullptr);
    EXPECT_EQ(set.members[m].gain, out.field.wiener);
    EXPECT_EQ(*set.members[m].variance, out.field.variance);
  }
}

TEST(EnsembleTest, DistinctSeedsRequired) {
  std::vector<Utterance> none;
  EXPECT_THROW(DeepEnsembleTrain({15, 8, 10}, DropoutSpec{}, TrainConfig{}, {1, 1},
                                 none, none, StftConfig{8, 4}, FeatureSpec{1, 5}),
               ConfigError);
}

TEST(EnsembleTest, ManifestRoundTrip) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "uncse-ensemble-test.txt").string();
  EnsembleManifest m{"deep_ensembles", {{1, "member_0.ckpt"}, {2, "member_1.ckpt"}}};
  WriteEnsembleManifest(path, m);
  const EnsembleManifest back = ReadEnsembleManifest(path);
  EXPECT_EQ(back.method, "deep_ensembles");
  ASSERT_EQ(back.members.size(), 2u);
  EXPECT_EQ(back.members[1].seed, 2u);
  EXPECT_EQ(back.members[1].checkpoint, "member_1.ckpt");
  std::filesystem::remove(path);
  EXPECT_THROW(ReadEnsembleManifest(path), ConfigError);
}

}  // namespace
}  // namespace uncse
