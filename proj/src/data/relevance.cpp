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

#include "nasrec/data/relevance.hpp"

#include <limits>
#include <optional>

namespace nasrec {
namespace {

std::optional<double> mean_rating(std::span<const Interaction> ratings) {
  if (ratings.empty()) return std::nullopt;
  double total = 0.0;
  for (const Interaction& t : ratings) total += t.rating;
  return total / static_cast<double>(ratings.size());
}

RelevanceLabels label(const InteractionSet& labeled, const InteractionSet* mean_source) {
  RelevanceLabels out;
  const std::size_t n = labeled.num_users();
  out.relevant.resize(n);
  out.user_mean.assign(n, std::numeric_limits<double>::quiet_NaN());
  for (UserId u = 0; u < n; ++u) {
    const auto ratings = labeled.user_ratings(u);
    if (ratings.empty()) continue;
    std::optional<double> mean;
    if (mean_source != nullptr) mean = mean_rating(mean_source->user_ratings(u));
    if (!mean) mean = mean_rating(ratings);
    out.user_mean[u] = *mean;
    for (const Interaction& t : ratings) {
      if (t.rating > *mean) out.relevant[u].push_back(t.item);
    }
  }
  return out;
}

}  // namespace

RelevanceLabels binarize_relevance(const InteractionSet& labeled) {
  return label(labeled, nullptr);
}

RelevanceLabels binarize_relevance(const InteractionSet& labeled,
                                   const InteractionSet& mean_source) {
  return label(labeled, &mean_source);
}

}  // namespace nasrec
