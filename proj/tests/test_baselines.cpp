// Copyright 2026 The nasrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <vector>

#include "gradient_harness.hpp"
#include "nasrec/baselines/bpr_mf.hpp"
#include "nasrec/baselines/nas_star.hpp"
#include "nasrec/data/relevance.hpp"
#include "nasrec/eval/evaluate.hpp"
#include "nasrec/model/snapshot.hpp"
#include "nasrec/nn/ops.hpp"
#include "nasrec/synth/synthetic.hpp"
#include "nasrec/train/mf_pretrain.hpp"

namespace nasrec {
namespace {

// Two users with disjoint tastes over three items; item 2 is rated by no one.
DatasetSplit separable_toy() {
  DatasetSplit s;
  s.train = InteractionSet(2, 3, {{0, 0, 5.0}, {1, 1, 5.0}});
  s.validation = InteractionSet(2, 3, {});
  s.test = InteractionSet(2, 3, {});
  return s;
}

TrainConfig toy_config() {
  TrainConfig c;
  c.d = 4;
  c.neg_per_pos = 2;
  c.batch_size = 4;
  c.lr = 0.05;
  c.epochs = 200;
  return c;
}

TEST(BprMf, SeparableToyRanksPositivesFirst) {
  const DatasetSplit data = separable_toy();
  const TrainResult r = train_bpr_mf(toy_config(), data);
  const auto& f = r.last.factors;
  for (UserId u = 0; u < 2; ++u) {
    const ItemId pos = u;
    for (ItemId neg = 0; neg < 3; ++neg) {
      if (neg == pos) continue;
      EXPECT_GT(dot(f.users.row(u), f.items.row(pos)), dot(f.users.row(u), f.items.row(neg)))
          << "user " << u << " item " << neg;
    }
  }
  EXPECT_LT(r.log.back().mean_loss, r.log.front().mean_loss);
}

TEST(BprMf, ZeroLearningRateKeepsFactors) {
  TrainConfig c = toy_config();
  c.lr = 0.0;
  c.epochs = 5;
  const DatasetSplit data = separable_toy();
  const LatentFactors init = bpr_mf_initial_factors(2, 3, c.d, 9);
  const TrainResult r = train_bpr_mf(c, data, init);
  EXPECT_TRUE(r.last.factors == init);
  EXPECT_FALSE(r.last.params.has_value());
  EXPECT_EQ(r.last.kind, ModelKind::kBprMf);
}

TEST(BprMf, InitialFactorsAreSmallAndSeeded) {
  const LatentFactors a = bpr_mf_initial_factors(50, 40, 8, 3);
  const LatentFactors b = bpr_mf_initial_factors(50, 40, 8, 3);
  EXPECT_TRUE(a == b);
  double sq = 0.0;
  for (double x : a.users.flat()) sq += x * x;
  EXPECT_NEAR(std::sqrt(sq / static_cast<double>(a.users.flat().size())), 0.1, 0.01);
}

class BprMfGradient : public ::testing::TestWithParam<int> {};

TEST_P(BprMfGradient, MatchesFiniteDifferences) {
  const int s = GetParam();
  const std::size_t d = 1 + static_cast<std::size_t>(s) % 8;
  for (double reg : {0.0, 0.01, 0.5}) {
    const auto out = testing_support::check_bpr_mf_gradients(d, reg, static_cast<std::uint64_t>(s) + 1);
    EXPECT_LT(out.result.max_relative_error, 1e-4) << "d " << d << " reg " << reg;
    EXPECT_EQ(out.result.checked, out.size);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, BprMfGradient, ::testing::Range(0, 20));

class NasStarGradient : public ::testing::TestWithParam<int> {};

TEST_P(NasStarGradient, MatchesFiniteDifferences) {
  const int s = GetParam();
  testing_support::GradCase c;
  c.d = 1 + static_cast<std::size_t>(s) % 8;
  c.h = 1 + static_cast<std::size_t>(s) % 3;
  c.k = 1 + static_cast<std::size_t>(s) % 5;
  c.mode = AttentionMode::kUniformSum;
  c.seed = static_cast<std::uint64_t>(s) + 100;
  const auto out = testing_support::check_nas_gradients(c);
  ASSERT_GT(out.size, 0u) << "no kink-free draw";
  EXPECT_LT(out.result.max_relative_error, 1e-4);
  EXPECT_EQ(out.result.checked, out.size);
}

INSTANTIATE_TEST_SUITE_P(Seeds, NasStarGradient, ::testing::Range(0, 20));

struct SmallWorld {
  SyntheticData synth;
  DatasetSplit data;
  TrainConfig config;
  LatentFactors factors;
};

SmallWorld small_world() {
  SyntheticSpec spec;
  spec.n = 40;
  spec.m = 60;
  spec.friends_per_user = 4;
  spec.influential_per_user = 2;
  spec.ratings_per_user = 12;
  SmallWorld w{generate_synthetic(spec), {}, {}, {}};
  w.data = split(w.synth.ratings, 0.6, 0.2, 2);
  w.config.d = 4;
  w.config.h = 2;
  w.config.k_max = 4;
  w.config.neg_per_pos = 2;
  w.config.batch_size = 32;
  w.config.lr = 0.003;
  w.config.epochs = 2;
  w.config.mf_epochs = 5;
  w.factors = mf_pretrain(w.data.train, w.config.d, w.config.mf_epochs, w.config.mf_lr,
                          w.config.mf_reg, 1)
                  .factors;
  return w;
}

TEST(NasStar, HasNoAttentionParameters) {
  const SmallWorld w = small_world();
  const TrainResult star = build_nas_star(w.config, w.data, w.synth.graph, w.factors);
  const TrainResult full = pretrain_shallow_then_deepen(w.config, AttentionMode::kSoftmax, w.data,
                                                        w.synth.graph, w.factors);
  EXPECT_EQ(star.best.kind, ModelKind::kNasStar);
  EXPECT_EQ(star.best.mode, AttentionMode::kUniformSum);
  EXPECT_LT(star.best.parameter_count(), full.best.parameter_count());
  EXPECT_EQ(full.best.parameter_count() - star.best.parameter_count(),
            2 * w.config.d * w.config.d + w.config.d);
  for (const auto& name : snapshot_block_names(star.best)) {
    EXPECT_EQ(name.find("attention"), std::string::npos) << name;
  }
}

TEST(NasStar, MeanFlagSelectsMeanMode) {
  const SmallWorld w = small_world();
  const TrainResult star = build_nas_star(w.config, w.data, w.synth.graph, w.factors, true);
  EXPECT_EQ(star.best.mode, AttentionMode::kUniformMean);
}

TEST(NasStar, ZeroLearningRateKeepsParameters) {
  SmallWorld w = small_world();
  w.config.lr = 0.0;
  w.config.h = 1;
  const TrainResult star = build_nas_star(w.config, w.data, w.synth.graph, w.factors);
  EXPECT_TRUE(star.last.factors == w.factors);
  EXPECT_TRUE(*star.last.params == initial_parameters(w.config, AttentionMode::kUniformSum));
}

TEST(Baselines, EvaluateThroughTheSameHarness) {
  const SmallWorld w = small_world();
  const TrainResult star = build_nas_star(w.config, w.data, w.synth.graph, w.factors);
  const TrainResult bpr = train_bpr_mf(w.config, w.data);
  const auto labels = binarize_relevance(w.data.test);
  for (const ModelSnapshot* snap : {&star.best, &bpr.best}) {
    const auto rec = make_recommender(*snap, w.synth.graph);
    const auto run = evaluate_run(*rec, labels, w.data.train, 10, 1);
    EXPECT_GE(run.ndcg, 0.0);
    EXPECT_LE(run.ndcg, 1.0);
    EXPECT_GT(run.evaluated_users, 0u);
  }
}

}  // namespace
}  // namespace nasrec
