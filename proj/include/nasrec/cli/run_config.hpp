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

#include "nasrec/model/snapshot.hpp"
#include "nasrec/train/config.hpp"

namespace nasrec::cli {

// Declarative experiment description. JSON keys match the field names;
// training keys sit at the top level next to the rest.
//
//   preset          ""        "epinions" (d 50, h 3, neg 9) or "flixster"
//                             (d 80, h 4, neg 6); explicit keys win
//   model           "nas"     nas | nas_star | bpr_mf
//   nas_star_mean   false     weights 1/k instead of 1 for nas_star
//   data_dir        ""        directory written by `prepare`
//   output_dir      "run"     relative paths resolve under $NASREC_OUTPUT_ROOT
//   eval_n          10
//   eval_runs       5
//   eval_seed       1         run r uses eval_seed + r
//   relevance_mean  "test"    partition that supplies the per-user mean:
//                             test | train | all
//   d, h, k_max, neg_per_pos, batch_size, lr, epochs, seed, mf_epochs,
//   mf_lr, mf_reg, finetune_embeddings, pretrain_epochs, deepen_init,
//   bpr_reg, nas_reg, val_n, threads   see TrainConfig
struct RunConfig {
  std::string preset;
  ModelKind model = ModelKind::kNas;
  bool nas_star_mean = false;
  std::string data_dir;
  std::string output_dir = "run";
  std::size_t eval_n = 10;
  std::size_t eval_runs = 5;
  std::uint64_t eval_seed = 1;
  std::string relevance_mean = "test";
  TrainConfig train;

  std::vector<std::uint64_t> eval_seeds() const;
  std::vector<std::string> problems() const;
  // Throws ConfigError listing every problem.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Applies d/h/neg_per_pos of a named preset. Throws ConfigError for unknown
// names.
void apply_preset(std::string_view preset, TrainConfig& train);

// Parses and validates. Unknown keys and type mismatches are collected and
// reported together in one ConfigError.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string& path);

// Every field, resolved; parse_run_config(to_json(c)) == c.
std::string run_config_json(const RunConfig& config);

}  // namespace nasrec::cli
