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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nasrec {

using UserId = std::uint32_t;
using ItemId = std::uint32_t;

struct Interaction {
  UserId user = 0;
  ItemId item = 0;
  double rating = 0.0;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

// tsv: fields separated by tabs or runs of spaces; csv: commas.
enum class Delimiter { kTab, kComma };

Delimiter parse_delimiter(std::string_view format);
std::string_view delimiter_name(Delimiter d);

// Original string id <-> dense index, in first-appearance order.
class IdMap {
 public:
  std::uint32_t intern(std::string_view original);
  std::optional<std::uint32_t> find(std::string_view original) const;
  const std::string& original(std::uint32_t index) const { return originals_.at(index); }
  std::size_t size() const { return originals_.size(); }

  // One `original<TAB>dense_index` line per id.
  void save(const std::filesystem::path& path) const;
  static IdMap load(const std::filesystem::path& path);

 private:
  std::vector<std::string> originals_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Sparse user-item ratings. Triples are kept sorted by (user, item); per-user
// slices are served from a CSR offset table. Immutable after construction.
class InteractionSet {
 public:
  InteractionSet() = default;
  // Throws DataError on duplicate pairs, out-of-range ids or non-finite ratings.
  InteractionSet(std::size_t num_users, std::size_t num_items, std::vector<Interaction> triples);

  std::size_t num_users() const { return num_users_; }
  std::size_t num_items() const { return num_items_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  std::span<const Interaction> triples() const { return triples_; }
  std::span<const Interaction> user_ratings(UserId user) const;
  // Sorted item ids rated by `user`.
  std::span<const ItemId> user_items(UserId user) const;
  bool contains(UserId user, ItemId item) const;

  double density() const;

  friend bool operator==(const InteractionSet& a, const InteractionSet& b) {
    return a.num_users_ == b.num_users_ && a.num_items_ == b.num_items_ &&
           a.triples_ == b.triples_;
  }

 private:
  std::size_t num_users_ = 0;
  std::size_t num_items_ = 0;
  std::vector<Interaction> triples_;
  std::vector<std::size_t> offsets_{0};
  std::vector<ItemId> items_;
};

struct LoadedInteractions {
  InteractionSet data;
  IdMap users;
  IdMap items;
};

// Reads `user<sep>item<sep>rating[<sep>...]` rows with arbitrary string ids.
// Blank lines and lines starting with '#' are skipped; extra trailing fields
// are ignored. Throws ParseError (with line number) or DataError.
LoadedInteractions load_interactions(const std::filesystem::path& path, Delimiter delimiter);

// Same row format, but ids are already dense indices below the given bounds
// (files written by save_interactions).
InteractionSet load_indexed_interactions(const std::filesystem::path& path,
                                         std::size_t num_users, std::size_t num_items,
                                         Delimiter delimiter = Delimiter::kTab);

void save_interactions(const std::filesystem::path& path, const InteractionSet& data,
                       Delimiter delimiter = Delimiter::kTab);

// Shortest round-trip text for a double.
std::string format_double(double x);

namespace detail {
// Splits a data line into fields per the delimiter rules above.
std::vector<std::string_view> split_fields(std::string_view line, Delimiter delimiter);
bool is_skippable(std::string_view line);
std::optional<double> parse_real(std::string_view field);
std::optional<std::uint64_t> parse_index(std::string_view field);
}  // namespace detail

}  // namespace nasrec
