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
#include <optional>

#include "nasrec/data/split.hpp"
#include "nasrec/model/nas.hpp"
#include "nasrec/train/config.hpp"
#include "nasrec/train/trainer.hpp"

namespace nasrec {

// N(0, 0.1^2) entries.
LatentFactors bpr_mf_initial_factors(std::size_t num_users, std::size_t num_items,
                                     std::size_t d, std::uint64_t seed);

// Pairwise ranking with score u.v through the shared triple sampler and Adam
// loop; L2 weight config.bpr_reg. Starts from `initial` when given.
TrainResult train_bpr_mf(const TrainConfig& config, const DatasetSplit& data,
                         std::optional<LatentFactors> initial = std::nullopt,
                         const TrainCallbacks& callbacks = {});

}  // namespace nasrec
