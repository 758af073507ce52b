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

#include <cstdint>

#include "nasrec/data/interactions.hpp"

namespace nasrec {

struct DatasetSplit {
  InteractionSet train;
  InteractionSet validation;
  InteractionSet test;
  std::uint64_t seed = 0;
};

// Per-user stratified random split. Each user with c >= 3 ratings gets
// round(c * train_frac) train and round(c * val_frac) validation ratings, the
// rest go to test. Users with fewer than 3 ratings keep everything in train.
// All three parts share the source's user/item index space.
// Throws ConfigError unless both fractions are positive and sum below 1.
DatasetSplit split(const InteractionSet& data, double train_frac, double val_frac,
                   std::uint64_t seed);

}  // namespace nasrec
