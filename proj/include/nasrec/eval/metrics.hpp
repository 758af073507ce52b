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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nasrec/data/interactions.hpp"

namespace nasrec {

// All items in [0, num_items) not in `excluded` (sorted).
std::vector<ItemId> candidate_items(std::size_t num_items, std::span<const ItemId> excluded);

// Candidates ordered by descending score; equal scores by ascending item id.
std::vector<ItemId> rank_items(std::span<const double> scores, std::span<const ItemId> candidates);

// First min(n, |candidates|) entries of rank_items, via partial sort.
std::vector<ItemId> top_n_items(std::span<const double> scores, std::span<const ItemId> candidates,
                                std::size_t n);

// |top-n of ranked ∩ relevant| / |relevant|. `relevant` sorted and nonempty.
double recall_at_n(std::span<const ItemId> ranked, std::span<const ItemId> relevant,
                   std::size_t n);

// sum_{l=1..n} (2^rel_l - 1) / log2(l + 1) over binary labels.
double dcg_at_n(std::span<const std::uint8_t> relevance, std::size_t n);

// DCG@n over the ideal DCG with min(num_relevant, n) hits at the top.
// Requires num_relevant >= 1.
double ndcg_at_n(std::span<const std::uint8_t> relevance, std::size_t num_relevant,
                 std::size_t n);

// Relevance bits for the first min(n, |ranked|) positions.
std::vector<std::uint8_t> relevance_bits(std::span<const ItemId> ranked,
                                         std::span<const ItemId> relevant, std::size_t n);

}  // namespace nasrec
