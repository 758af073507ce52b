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
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nasrec/model/nas.hpp"
#include "nasrec/model/recommender.hpp"

namespace nasrec {

enum class ModelKind { kNas, kNasStar, kBprMf };

std::string_view model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct ModelSnapshot {
  ModelKind kind = ModelKind::kNas;
  AttentionMode mode = AttentionMode::kSoftmax;
  std::size_t k_max = 0;
  LatentFactors factors;
  // Absent for bpr_mf.
  std::optional<NasParameters> params;

  std::size_t num_users() const { return factors.users.rows(); }
  std::size_t num_items() const { return factors.items.rows(); }
  std::size_t dim() const { return factors.dim(); }
  std::size_t depth() const { return params ? params->depth() : 0; }
  // Parameter count over all stored blocks.
  std::size_t parameter_count() const;

  friend bool operator==(const ModelSnapshot&, const ModelSnapshot&) = default;
};

// Binary container, little-endian:
//   "NASRSNAP" | u32 version | u32 kind | u32 attention mode |
//   u64 n, m, d, h, k_max | u8 has_attention | u32 block count |
//   per block: u32 name length, name, u64 rows, u64 cols, rows*cols f64 |
//   u32 CRC-32 of everything before it.
// Blocks are "factors.users", "factors.items", then the parameter blocks in
// layout order, so save -> load -> save is byte-identical.
std::vector<std::uint8_t> serialize_snapshot(const ModelSnapshot& snapshot);
// Throws DataError on bad magic, version, checksum or inconsistent shapes.
ModelSnapshot deserialize_snapshot(std::span<const std::uint8_t> bytes);

void save_snapshot(const std::filesystem::path& path, const ModelSnapshot& snapshot);
ModelSnapshot load_snapshot(const std::filesystem::path& path);

// Block names in file order.
std::vector<std::string> snapshot_block_names(const ModelSnapshot& snapshot);

// Scorer over a snapshot; the snapshot and graph must outlive it.
std::unique_ptr<Recommender> make_recommender(const ModelSnapshot& snapshot,
                                              const SocialGraph& graph);

}  // namespace nasrec
