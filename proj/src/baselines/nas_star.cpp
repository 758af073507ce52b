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

#include "nasrec/baselines/nas_star.hpp"

namespace nasrec {

TrainResult build_nas_star(const TrainConfig& config, const DatasetSplit& data,
                           const SocialGraph& graph, const LatentFactors& factors,
                           bool uniform_mean, const TrainCallbacks& callbacks) {
  const AttentionMode mode = uniform_mean ? AttentionMode::kUniformMean : AttentionMode::kUniformSum;
  return pretrain_shallow_then_deepen(config, mode, data, graph, factors, callbacks);
}

}  // namespace nasrec
