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
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "nasrec/data/interactions.hpp"

namespace nasrec {

using Edge = std::pair<UserId, UserId>;

// Undirected friendship graph: symmetric, deduplicated, no self-loops.
// Neighbor lists are sorted.
class SocialGraph {
 public:
  SocialGraph() = default;
  // Throws DataError if an endpoint is >= num_users.
  SocialGraph(std::size_t num_users, std::span<const Edge> edges);

  std::size_t num_users() const { return offsets_.size() - 1; }
  // Undirected edge count.
  std::size_t num_edges() const { return adjacency_.size() / 2; }
  std::span<const UserId> neighbors(UserId user) const;
  std::size_t degree(UserId user) const { return neighbors(user).size(); }
  bool connected(UserId a, UserId b) const;

  // Each undirected edge once, as (low, high), sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<UserId> adjacency_;
};

struct LoadedGraph {
  SocialGraph graph;
  // Rows whose endpoints are absent from the user mapping.
  std::size_t dropped_unresolved = 0;
  std::size_t self_loops = 0;
};

// `user<sep>user` rows with original ids resolved through `users`.
LoadedGraph load_social_graph(const std::filesystem::path& path, const IdMap& users,
                              Delimiter delimiter = Delimiter::kTab);

// Rows of dense indices (files written by save_graph).
SocialGraph load_indexed_graph(const std::filesystem::path& path, std::size_t num_users,
                               Delimiter delimiter = Delimiter::kTab);

void save_graph(const std::filesystem::path& path, const SocialGraph& graph,
                Delimiter delimiter = Delimiter::kTab);

}  // namespace nasrec
