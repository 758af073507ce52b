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
#include <span>
#include <vector>

#include "nasrec/common/rng.hpp"
#include "nasrec/data/interactions.hpp"

namespace nasrec {

struct TrainTriple {
  UserId user = 0;
  ItemId pos_item = 0;
  ItemId neg_item = 0;

  friend bool operator==(const TrainTriple&, const TrainTriple&) = default;
};

// `count` items drawn uniformly with replacement from [0, num_items) minus
// `positives` (sorted), by rejection. Empty when every item is a positive.
std::vector<ItemId> sample_negatives(std::span<const ItemId> positives, std::size_t count,
                                     std::size_t num_items, Rng& rng);

struct EpochTriples {
  std::vector<TrainTriple> triples;
  // Users with train positives but no unobserved item.
  std::size_t skipped_users = 0;
};

// neg_per_pos triples per train positive, with fresh negatives, in shuffled
// order. Fully determined by the state of `rng`.
EpochTriples build_epoch_triples(const InteractionSet& train, std::size_t neg_per_pos, Rng& rng);

}  // namespace nasrec
