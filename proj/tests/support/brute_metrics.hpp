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


#pragma once

// Brute-force top-N evaluator kept independent of nasrec/eval: candidates by
// membership test, a full sort of (score, id) pairs, metrics from their
// definitions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "nasrec/common/rng.hpp"
#include "nasrec/data/interactions.hpp"
#include "nasrec/data/relevance.hpp"
#include "nasrec/model/recommender.hpp"

namespace nasrec::brute {

struct UserMetrics {
  double recall = 0.0;
  double ndcg = 0.0;
};

inline UserMetrics user_metrics(const std::vector<double>& scores, const std::set<ItemId>& train,
                                const std::set<ItemId>& relevant, std::size_t n) {
  std::vector<std::pair<double, ItemId>> order;
  for (ItemId i = 0; i < scores.size(); ++i) {
    if (!train.count(i)) order.emplace_back(-scores[i], i);
  }
  std::sort(order.begin(), order.end());
  const std::size_t k = std::min(n, order.size());
  std::size_t hits = 0;
  double dcg = 0.0;
  for (std::size_t l = 1; l <= k; ++l) {
    const int rel = relevant.count(order[l - 1].second) ? 1 : 0;
    hits += static_cast<std::size_t>(rel);
    dcg += (std::pow(2.0, rel) - 1.0) / std::log2(static_cast<double>(l + 1));
  }
  double ideal = 0.0;
  for (std::size_t l = 1; l <= std::min(relevant.size(), n); ++l) {
    ideal += 1.0 / std::log2(static_cast<double>(l + 1));
  }
  return {static_cast<double>(hits) / static_cast<double>(relevant.size()), dcg / ideal};
}

// A recommender backed by a fixed users x items score table.
class TableRecommender : public Recommender {
 public:
  explicit TableRecommender(std::vector<std::vector<double>> table) : table_(std::move(table)) {}
  std::size_t num_users() const override { return table_.size(); }
  std::size_t num_items() const override { return table_.empty() ? 0 : table_[0].size(); }
  void score_items(UserId user, std::uint64_t, std::span<double> out) const override {
    std::copy(table_[user].begin(), table_[user].end(), out.begin());
  }
  const std::vector<double>& row(UserId u) const { return table_[u]; }

 private:
  std::vector<std::vector<double>> table_;
};

struct Instance {
  std::size_t users = 0;
  std::size_t items = 0;
  TableRecommender model{{}};
  InteractionSet train;
  InteractionSet test;
};

// Random evaluation instance with integer-valued scores so ties are common.
inline Instance random_instance(std::uint64_t seed, std::size_t max_users, std::size_t max_items) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> users_dist(1, max_users);
  std::uniform_int_distribution<std::size_t> items_dist(2, max_items);
  Instance inst;
  inst.users = users_dist(rng);
  inst.items = items_dist(rng);
  std::uniform_int_distribution<int> score(0, 6);
  std::uniform_int_distribution<int> rating(1, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> table(inst.users, std::vector<double>(inst.items));
  std::vector<Interaction> train, test;
  for (UserId u = 0; u < inst.users; ++u) {
    for (ItemId i = 0; i < inst.items; ++i) {
      table[u][i] = score(rng);
      const double draw = unit(rng);
      if (draw < 0.2) {
        train.push_back({u, i, static_cast<double>(rating(rng))});
      } else if (draw < 0.5) {
        test.push_back({u, i, static_cast<double>(rating(rng))});
      }
    }
  }
  inst.model = TableRecommender(std::move(table));
  inst.train = InteractionSet(inst.users, inst.items, std::move(train));
  inst.test = InteractionSet(inst.users, inst.items, std::move(test));
  return inst;
}

// Relevance from the definition: rating strictly above the user's mean test
// rating.
inline std::vector<std::set<ItemId>> relevant_sets(const InteractionSet& test) {
  std::vector<std::set<ItemId>> out(test.num_users());
  for (UserId u = 0; u < test.num_users(); ++u) {
    const auto r = test.user_ratings(u);
    if (r.empty()) continue;
    double mean = 0.0;
    for (const auto& x : r) mean += x.rating;
    mean /= static_cast<double>(r.size());
    for (const auto& x : r) {
      if (x.rating > mean) out[u].insert(x.item);
    }
  }
  return out;
}

}  // namespace nasrec::brute
