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

#include <vector>

#include "nasrec/data/interactions.hpp"

namespace nasrec {

struct RelevanceLabels {
  // Sorted relevant item ids per user.
  std::vector<std::vector<ItemId>> relevant;
  // Mean rating used as the threshold; NaN for users without labeled ratings.
  std::vector<double> user_mean;

  std::size_t num_users() const { return relevant.size(); }
  bool has_relevant(UserId u) const { return !relevant[u].empty(); }
};

// An item is relevant iff its rating is strictly above the user's mean
// rating over `labeled`.
RelevanceLabels binarize_relevance(const InteractionSet& labeled);

// Same rule, but the per-user mean comes from `mean_source` (falls back to
// the labeled ratings for users absent there).
RelevanceLabels binarize_relevance(const InteractionSet& labeled,
                                   const InteractionSet& mean_source);

}  // namespace nasrec
