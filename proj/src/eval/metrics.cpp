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

#include "nasrec/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "nasrec/common/errors.hpp"

namespace nasrec {
namespace {

auto ranking_order(std::span<const double> scores) {
  return [scores](ItemId a, ItemId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
}

}  // namespace

std::vector<ItemId> candidate_items(std::size_t num_items, std::span<const ItemId> excluded) {
  std::vector<ItemId> out;
  out.reserve(num_items - std::min(num_items, excluded.size()));
  std::size_t e = 0;
  for (ItemId i = 0; i < num_items; ++i) {
    while (e < excluded.size() && excluded[e] < i) ++e;
    if (e < excluded.size() && excluded[e] == i) continue;
    out.push_back(i);
  }
  return out;
}

std::vector<ItemId> rank_items(std::span<const double> scores, std::span<const ItemId> candidates) {
  std::vector<ItemId> out(candidates.begin(), candidates.end());
  for (ItemId i : out) {
    if (i >= scores.size()) throw ContractViolation("rank_items: candidate without a score");
  }
  std::sort(out.begin(), out.end(), ranking_order(scores));
  return out;
}

std::vector<ItemId> top_n_items(std::span<const double> scores, std::span<const ItemId> candidates,
                                std::size_t n) {
  std::vector<ItemId> out(candidates.begin(), candidates.end());
  for (ItemId i : out) {
    if (i >= scores.size()) throw ContractViolation("top_n_items: candidate without a score");
  }
  const std::size_t k = std::min(n, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<long>(k), out.end(),
                    ranking_order(scores));
  out.resize(k);
  return out;
}

double recall_at_n(std::span<const ItemId> ranked, std::span<const ItemId> relevant,
                   std::size_t n) {
  if (relevant.empty()) throw ContractViolation("recall_at_n: no relevant items");
  const std::size_t k = std::min(n, ranked.size());
  std::size_t hits = 0;
  for (std::size_t l = 0; l < k; ++l) {
    if (std::binary_search(relevant.begin(), relevant.end(), ranked[l])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

double dcg_at_n(std::span<const std::uint8_t> relevance, std::size_t n) {
  const std::size_t k = std::min(n, relevance.size());
  double dcg = 0.0;
  for (std::size_t l = 1; l <= k; ++l) {
    const double gain = std::exp2(static_cast<double>(relevance[l - 1])) - 1.0;
    dcg += gain / std::log2(static_cast<double>(l) + 1.0);
  }
  return dcg;
}

double ndcg_at_n(std::span<const std::uint8_t> relevance, std::size_t num_relevant,
                 std::size_t n) {
  if (num_relevant == 0) throw ContractViolation("ndcg_at_n: no relevant items");
  const std::vector<std::uint8_t> ideal(std::min(num_relevant, n), 1);
  return dcg_at_n(relevance, n) / dcg_at_n(ideal, n);
}

std::vector<std::uint8_t> relevance_bits(std::span<const ItemId> ranked,
                                         std::span<const ItemId> relevant, std::size_t n) {
  const std::size_t k = std::min(n, ranked.size());
  std::vector<std::uint8_t> bits(k, 0);
  for (std::size_t l = 0; l < k; ++l) {
    bits[l] = std::binary_search(relevant.begin(), relevant.end(), ranked[l]) ? 1 : 0;
  }
  return bits;
}

}  // namespace nasrec
