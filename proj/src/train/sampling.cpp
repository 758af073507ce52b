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

#include "nasrec/train/sampling.hpp"

#include <algorithm>
#include <random>

namespace nasrec {

std::vector<ItemId> sample_negatives(std::span<const ItemId> positives, std::size_t count,
                                     std::size_t num_items, Rng& rng) {
  std::vector<ItemId> out;
  if (positives.size() >= num_items || count == 0) return out;
  out.reserve(count);
  std::uniform_int_distribution<ItemId> pick(0, static_cast<ItemId>(num_items - 1));
  while (out.size() < count) {
    const ItemId i = pick(rng);
    if (!std::binary_search(positives.begin(), positives.end(), i)) out.push_back(i);
  }
  return out;
}

EpochTriples build_epoch_triples(const InteractionSet& train, std::size_t neg_per_pos, Rng& rng) {
  EpochTriples out;
  out.triples.reserve(train.size() * neg_per_pos);
  for (UserId u = 0; u < train.num_users(); ++u) {
    const auto positives = train.user_items(u);
    if (positives.empty()) continue;
    if (positives.size() >= train.num_items()) {
      ++out.skipped_users;
      continue;
    }
    for (ItemId pos : positives) {
      for (ItemId neg : sample_negatives(positives, neg_per_pos, train.num_items(), rng)) {
        out.triples.push_back({u, pos, neg});
      }
    }
  }
  std::shuffle(out.triples.begin(), out.triples.end(), rng);
  return out;
}

}  // namespace nasrec
