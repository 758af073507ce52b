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
#include <string>
#include <string_view>
#include <vector>

namespace nasrec {

// How hidden layers added when deepening a pretrained shallow model start.
//   kXavier    fresh Xavier-uniform weights, zero biases
//   kIdentity  identity weights, zero biases (the deeper model initially
//              computes the same function as the shallow one)
enum class DeepenInit { kXavier, kIdentity };

std::string_view deepen_init_name(DeepenInit init);
DeepenInit parse_deepen_init(std::string_view name);

struct TrainConfig {
  std::size_t d = 50;
  std::size_t h = 3;
  std::size_t k_max = 30;
  std::size_t neg_per_pos = 9;
  std::size_t batch_size = 512;
  double lr = 1e-4;
  std::size_t epochs = 20;
  std::uint64_t seed = 1;

  std::size_t mf_epochs = 30;
  double mf_lr = 0.01;
  double mf_reg = 0.01;
  bool finetune_embeddings = true;

  // Epochs of the h = 1 phase; 0 means `epochs`.
  std::size_t pretrain_epochs = 0;
  DeepenInit deepen_init = DeepenInit::kXavier;

  // L2 weight of the BPR-MF baseline: 0.5 * reg * |x|^2 per factor row used.
  double bpr_reg = 0.01;
  // Same penalty on the social model's own user row and item rows. 0 gives
  // the unregularised objective.
  double nas_reg = 0.0;

  // Cutoff of the per-epoch validation metrics.
  std::size_t val_n = 10;
  // 1 is the deterministic reference path.
  std::size_t threads = 1;

  // Every violated constraint, in field order. lr = 0 is accepted: it gives
  // a run that leaves all parameters unchanged.
  std::vector<std::string> problems() const;
  // Throws ConfigError listing every problem.
  void validate() const;

  std::size_t phase_one_epochs() const { return pretrain_epochs ? pretrain_epochs : epochs; }

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

}  // namespace nasrec
