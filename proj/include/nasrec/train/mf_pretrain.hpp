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
#include <vector>

#include "nasrec/data/interactions.hpp"
#include "nasrec/model/nas.hpp"

namespace nasrec {

struct MfResult {
  LatentFactors factors;
  // Train RMSE before the first epoch, then after each epoch.
  std::vector<double> rmse;
};

// SGD on sum (r - u.v)^2 + reg (|u|^2 + |v|^2) per observed rating, visiting
// ratings in a fresh shuffled order each epoch. Factors start at
// sqrt(mean / d) * U[0, 2) so the initial predictions sit near the mean.
// Throws TrainingError if the RMSE becomes non-finite or exceeds 10x its
// initial value.
MfResult mf_pretrain(const InteractionSet& train, std::size_t d, std::size_t epochs, double lr,
                     double reg, std::uint64_t seed);

double train_rmse(const InteractionSet& train, const LatentFactors& factors);

}  // namespace nasrec
