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

#include "nasrec/data/social_graph.hpp"
#include "nasrec/data/split.hpp"
#include "nasrec/model/nas.hpp"
#include "nasrec/train/config.hpp"
#include "nasrec/train/trainer.hpp"

namespace nasrec {

// The social model with every attention weight fixed to 1 (plain sum of
// friend effects) and no attention parameters. `uniform_mean` switches to
// weights 1/k instead. Same training regimen as the full model.
TrainResult build_nas_star(const TrainConfig& config, const DatasetSplit& data,
                           const SocialGraph& graph, const LatentFactors& factors,
                           bool uniform_mean = false, const TrainCallbacks& callbacks = {});

}  // namespace nasrec
