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

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "brute_metrics.hpp"
#include "nasrec/common/errors.hpp"
#include "nasrec/data/relevance.hpp"
#include "nasrec/eval/evaluate.hpp"
#include "nasrec/eval/metrics.hpp"
#include "nasrec/eval/stats.hpp"

namespace nasrec {
namespace {

using Bits = std::vector<std::uint8_t>;

TEST(RankItems, HigherScoreFirst) {
  const std::vector<double> scores{0.1, 0.9};
  const std::vector<ItemId> cand{0, 1};
  EXPECT_EQ(rank_items(scores, cand), (std::vector<ItemId>{1, 0}));
}

TEST(RankItems, TiesByAscendingId) {
  const std::vector<double> scores{0.5, 0.5, 0.7, 0.5};
  const std::vector<ItemId> cand{3, 1, 0, 2};
  EXPECT_EQ(rank_items(scores, cand), (std::vector<ItemId>{2, 0, 1, 3}));
}

TEST(RankItems, TopNIsPrefixOfFullRanking) {
  Rng rng(4);
  std::uniform_int_distribution<int> s(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> scores(40);
    for (double& x : scores) x = s(rng);
    const auto cand = candidate_items(40, std::vector<ItemId>{1, 5, 7});
    const auto full = rank_items(scores, cand);
    for (std::size_t n : {0u, 1u, 10u, 37u, 80u}) {
      const auto top = top_n_items(scores, cand, n);
      ASSERT_EQ(top.size(), std::min<std::size_t>(n, full.size()));
      EXPECT_TRUE(std::equal(top.begin(), top.end(), full.begin()));
    }
  }
}

TEST(RankItems, CandidateWithoutScoreIsRejected) {
  const std::vector<double> scores{1.0};
  const std::vector<ItemId> cand{0, 1};
  EXPECT_THROW(rank_items(scores, cand), ContractViolation);
}

TEST(CandidateItems, ExcludesTrainPositives) {
  EXPECT_EQ(candidate_items(6, std::vector<ItemId>{0, 2, 5}), (std::vector<ItemId>{1, 3, 4}));
  EXPECT_TRUE(candidate_items(2, std::vector<ItemId>{0, 1}).empty());
}

TEST(Recall, HandCases) {
  const std::vector<ItemId> ranked{4, 2, 9};
  EXPECT_EQ(recall_at_n(ranked, std::vector<ItemId>{4}, 10), 1.0);
  EXPECT_EQ(recall_at_n(ranked, std::vector<ItemId>{2, 7}, 10), 0.5);
  EXPECT_EQ(recall_at_n(ranked, std::vector<ItemId>{9}, 2), 0.0);
  EXPECT_THROW(recall_at_n(ranked, std::vector<ItemId>{}, 10), ContractViolation);
}

TEST(Dcg, HandCases) {
  EXPECT_EQ(dcg_at_n(Bits{1, 0, 0}, 10), 1.0);
  EXPECT_NEAR(dcg_at_n(Bits{1, 1, 0}, 10), 1.63093, 1e-5);
  EXPECT_EQ(dcg_at_n(Bits{0, 0, 0, 1}, 3), 0.0);
  EXPECT_EQ(dcg_at_n(Bits{}, 10), 0.0);
}

TEST(Ndcg, HandCases) {
  EXPECT_EQ(ndcg_at_n(Bits{0, 0, 1}, 1, 10), 0.5);
  EXPECT_EQ(ndcg_at_n(Bits{1, 1, 1}, 3, 10), 1.0);
  // Ideal uses min(num_relevant, n) slots: 12 relevant, top 10 all hits.
  EXPECT_DOUBLE_EQ(ndcg_at_n(Bits(10, 1), 12, 10), 1.0);
  EXPECT_THROW(ndcg_at_n(Bits{1}, 0, 10), ContractViolation);
}

TEST(Ndcg, IgnoresIrrelevantItemsBelowCutoff) {
  const std::vector<ItemId> relevant{1};
  const auto a = relevance_bits(std::vector<ItemId>{0, 1, 2, 3, 4, 5}, relevant, 3);
  const auto b = relevance_bits(std::vector<ItemId>{0, 1, 2, 5, 3, 4}, relevant, 3);
  EXPECT_EQ(ndcg_at_n(a, 1, 3), ndcg_at_n(b, 1, 3));
}

// Moving a relevant item up never lowers NDCG; recall is monotone in N.
TEST(MetricProperties, RandomRankings) {
  Rng rng(19);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    Bits bits(20);
    for (auto& b : bits) b = static_cast<std::uint8_t>(bit(rng));
    const std::size_t rel = std::max<std::size_t>(1, std::accumulate(bits.begin(), bits.end(), 0u));
    for (std::size_t n : {1u, 5u, 10u, 20u}) {
      const double v = ndcg_at_n(bits, rel, n);
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0 + 1e-15);
    }
    for (std::size_t l = 1; l < bits.size(); ++l) {
      if (bits[l] == 1 && bits[l - 1] == 0) {
        Bits up = bits;
        std::swap(up[l], up[l - 1]);
        EXPECT_GE(ndcg_at_n(up, rel, 10), ndcg_at_n(bits, rel, 10));
      }
    }
    std::vector<ItemId> ranked(20);
    std::iota(ranked.begin(), ranked.end(), ItemId{0});
    std::vector<ItemId> relevant;
    for (ItemId i = 0; i < 20; ++i) {
      if (bits[i]) relevant.push_back(i);
    }
    if (relevant.empty()) continue;
    double prev = 0.0;
    for (std::size_t n = 0; n <= 20; ++n) {
      const double r = recall_at_n(ranked, relevant, n);
      ASSERT_GE(r, prev);
      ASSERT_LE(r, 1.0);
      prev = r;
    }
  }
}

TEST(Relevance, StrictlyAboveUserMean) {
  const InteractionSet test(3, 4, {{0, 0, 5}, {0, 1, 3}, {0, 2, 1}, {1, 3, 3}, {2, 1, 4}, {2, 2, 4}});
  const auto labels = binarize_relevance(test);
  EXPECT_EQ(labels.relevant[0], (std::vector<ItemId>{0}));
  EXPECT_TRUE(labels.relevant[1].empty());  // single rating equals its own mean
  EXPECT_TRUE(labels.relevant[2].empty());  // all equal
  EXPECT_DOUBLE_EQ(labels.user_mean[0], 3.0);
}

TEST(Evaluate, OracleModelHasFullRecall) {
  // Scores +1 on relevant items, so each user with <= 10 relevant items has
  // all of them in the top 10.
  const auto inst = brute::random_instance(3, 20, 40);
  const auto labels = binarize_relevance(inst.test);
  std::vector<std::vector<double>> table(inst.users, std::vector<double>(inst.items, 0.0));
  for (UserId u = 0; u < inst.users; ++u) {
    for (ItemId i : labels.relevant[u]) table[u][i] = 1.0;
  }
  const brute::TableRecommender oracle(table);
  std::size_t small = 0;
  for (const auto& r : labels.relevant) small += !r.empty() && r.size() <= 10;
  ASSERT_GT(small, 0u);
  const auto run = evaluate_run(oracle, labels, inst.train, 10, 1);
  double expected = 0.0;
  for (const auto& r : labels.relevant) {
    if (!r.empty()) expected += std::min(1.0, 10.0 / static_cast<double>(r.size()));
  }
  EXPECT_DOUBLE_EQ(run.recall, expected / static_cast<double>(run.evaluated_users));
}

TEST(Evaluate, MatchesBruteForceEvaluator) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = brute::random_instance(seed, 10, 50);
    const auto labels = binarize_relevance(inst.test);
    const auto relevant = brute::relevant_sets(inst.test);
    std::size_t evaluable = 0;
    double recall = 0.0, ndcg = 0.0;
    for (UserId u = 0; u < inst.users; ++u) {
      ASSERT_EQ(std::vector<ItemId>(relevant[u].begin(), relevant[u].end()), labels.relevant[u]);
      if (relevant[u].empty()) continue;
      const auto tr = inst.train.user_items(u);
      const auto m = brute::user_metrics(inst.model.row(u), std::set<ItemId>(tr.begin(), tr.end()),
                                         relevant[u], 10);
      // Per-user values agree exactly.
      std::vector<double> scores(inst.items);
      inst.model.score_items(u, 0, scores);
      const auto top = top_n_items(scores, candidate_items(inst.items, tr), 10);
      EXPECT_EQ(recall_at_n(top, labels.relevant[u], 10), m.recall);
      EXPECT_EQ(ndcg_at_n(relevance_bits(top, labels.relevant[u], 10), labels.relevant[u].size(), 10),
                m.ndcg);
      ++evaluable;
      recall += m.recall;
      ndcg += m.ndcg;
    }
    if (evaluable == 0) {
      EXPECT_THROW(evaluate_run(inst.model, labels, inst.train, 10, 1), EvalError);
      continue;
    }
    const auto run = evaluate_run(inst.model, labels, inst.train, 10, 1);
    EXPECT_EQ(run.evaluated_users, evaluable);
    EXPECT_EQ(run.skipped_users, inst.users - evaluable);
    // Only the summation order of the user average differs.
    EXPECT_NEAR(run.recall, recall / static_cast<double>(evaluable), 1e-15);
    EXPECT_NEAR(run.ndcg, ndcg / static_cast<double>(evaluable), 1e-15);
  }
}

TEST(Evaluate, ThreadCountDoesNotChangeResult) {
  const auto inst = brute::random_instance(8, 40, 50);
  const auto labels = binarize_relevance(inst.test);
  const auto a = evaluate_run(inst.model, labels, inst.train, 10, 1, 1);
  const auto b = evaluate_run(inst.model, labels, inst.train, 10, 1, 4);
  EXPECT_EQ(a.recall, b.recall);
  EXPECT_EQ(a.ndcg, b.ndcg);
}

TEST(Evaluate, DeterministicModelHasZeroStddev) {
  const auto inst = brute::random_instance(5, 10, 30);
  const auto labels = binarize_relevance(inst.test);
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  const auto report = evaluate(inst.model, labels, inst.train, 10, seeds);
  ASSERT_EQ(report.runs.size(), 5u);
  EXPECT_EQ(report.recall_std, 0.0);
  EXPECT_EQ(report.ndcg_std, 0.0);
  EXPECT_EQ(report.ndcg_mean, report.runs[0].ndcg);
}

TEST(Evaluate, ShapeMismatchIsAnError) {
  const auto inst = brute::random_instance(5, 10, 30);
  const InteractionSet other(inst.users + 1, inst.items, {});
  EXPECT_THROW(evaluate_run(inst.model, binarize_relevance(other), other, 10, 1), EvalError);
}

TEST(Summary, MeanWithinRunRange) {
  std::vector<RunMetrics> runs(3);
  runs[0].ndcg = 0.2;
  runs[1].ndcg = 0.5;
  runs[2].ndcg = 0.3;
  const auto report = summarize_runs(10, runs);
  EXPECT_GE(report.ndcg_mean, 0.2);
  EXPECT_LE(report.ndcg_mean, 0.5);
  EXPECT_NEAR(report.ndcg_std, 0.152752523165195, 1e-12);
  EXPECT_EQ(sample_stddev(std::vector<double>{4.0}), 0.0);
}

TEST(Report, CsvLayout) {
  std::vector<RunMetrics> runs(2);
  runs[0] = {11, 0.5, 0.25, 3, 0};
  runs[1] = {12, 0.5, 0.25, 3, 0};
  std::ostringstream out;
  write_report_csv(out, "nas", 0.75, summarize_runs(10, runs));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "model,train_frac,run,seed,recall@10,ndcg@10");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4u);
  EXPECT_NE(out.str().find("nas,0.75,stddev,,0,0"), std::string::npos) << out.str();
}

// Reference values from scipy.stats.ttest_rel.
TEST(PairedTTest, MatchesReferenceValues) {
  const std::vector<double> a{0.31, 0.29, 0.35, 0.33, 0.30};
  const std::vector<double> b{0.28, 0.27, 0.30, 0.31, 0.29};
  const auto t = paired_t_test(a, b);
  EXPECT_NEAR(t.t_statistic, 3.833490860027325, 1e-9);
  EXPECT_NEAR(t.p_value, 0.018562564501560474, 1e-9);
  EXPECT_EQ(t.degrees_of_freedom, 4u);

  const std::vector<double> c{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> e{1.5, 1.0, 3.5, 2.0};
  const auto u = paired_t_test(c, e);
  EXPECT_NEAR(u.t_statistic, 0.8164965809277261, 1e-12);
  EXPECT_NEAR(u.p_value, 0.4740213884950637, 1e-12);
}

TEST(PairedTTest, DegenerateDifferences) {
  const std::vector<double> a{1.0, 2.0, 3.0};
  EXPECT_EQ(paired_t_test(a, a).p_value, 1.0);
  EXPECT_EQ(paired_t_test(a, a).t_statistic, 0.0);
  const std::vector<double> b{0.5, 1.5, 2.5};
  EXPECT_EQ(paired_t_test(a, b).p_value, 0.0);
  EXPECT_THROW(paired_t_test(std::vector<double>{1.0}, std::vector<double>{1.0}),
               ContractViolation);
}

}  // namespace
}  // namespace nasrec
