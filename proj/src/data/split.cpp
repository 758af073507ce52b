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

#include "nasrec/data/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nasrec/common/errors.hpp"
#include "nasrec/common/rng.hpp"

namespace nasrec {

DatasetSplit split(const InteractionSet& data, double train_frac, double val_frac,
                   std::uint64_t seed) {
  if (!(train_frac > 0.0) || !(val_frac > 0.0) || !(train_frac + val_frac < 1.0)) {
    throw ConfigError("split fractions must be positive with train + validation < 1 (got " +
                      std::to_string(train_frac) + ", " + std::to_string(val_frac) + ")");
  }
  std::vector<Interaction> train, validation, test;
  std::vector<std::size_t> order;
  for (UserId u = 0; u < data.num_users(); ++u) {
    const auto ratings = data.user_ratings(u);
    const std::size_t c = ratings.size();
    if (c < 3) {
      train.insert(train.end(), ratings.begin(), ratings.end());
      continue;
    }
    order.resize(c);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = make_rng(seed, {u});
    std::shuffle(order.begin(), order.end(), rng);
    const auto n_train = std::min<std::size_t>(c, std::llround(c * train_frac));
    const auto n_val = std::min<std::size_t>(c - n_train, std::llround(c * val_frac));
    for (std::size_t i = 0; i < c; ++i) {
      const Interaction& t = ratings[order[i]];
      if (i < n_train) {
        train.push_back(t);
      } else if (i < n_train + n_val) {
        validation.push_back(t);
      } else {
        test.push_back(t);
      }
    }
  }
  const std::size_t n = data.num_users();
  const std::size_t m = data.num_items();
  return DatasetSplit{InteractionSet(n, m, std::move(train)),
                      InteractionSet(n, m, std::move(validation)),
                      InteractionSet(n, m, std::move(test)), seed};
}

}  // namespace nasrec
