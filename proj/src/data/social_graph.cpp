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

#include "nasrec/data/social_graph.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "nasrec/common/errors.hpp"

namespace nasrec {

SocialGraph::SocialGraph(std::size_t num_users, std::span<const Edge> edges) {
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    if (a >= num_users || b >= num_users) {
      throw DataError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") out of range for " + std::to_string(num_users) + " users");
    }
    if (a == b) continue;
    directed.emplace_back(a, b);
    directed.emplace_back(b, a);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
  offsets_.assign(num_users + 1, 0);
  adjacency_.reserve(directed.size());
  for (const auto& [a, b] : directed) {
    ++offsets_[a + 1];
    adjacency_.push_back(b);
  }
  for (std::size_t u = 0; u < num_users; ++u) offsets_[u + 1] += offsets_[u];
}

std::span<const UserId> SocialGraph::neighbors(UserId user) const {
  if (user >= num_users()) return {};
  return std::span<const UserId>(adjacency_).subspan(offsets_[user],
                                                     offsets_[user + 1] - offsets_[user]);
}

bool SocialGraph::connected(UserId a, UserId b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> SocialGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (UserId u = 0; u < num_users(); ++u) {
    for (UserId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

LoadedGraph load_social_graph(const std::filesystem::path& path, const IdMap& users,
                              Delimiter delimiter) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open graph file " + path.string());
  LoadedGraph out;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split_fields(line, delimiter);
    if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path.string(), line_no, "expected user, user");
    }
    const auto a = users.find(fields[0]);
    const auto b = users.find(fields[1]);
    if (!a || !b) {
      ++out.dropped_unresolved;
      continue;
    }
    if (*a == *b) ++out.self_loops;
    edges.emplace_back(*a, *b);
  }
  out.graph = SocialGraph(users.size(), edges);
  return out;
}

SocialGraph load_indexed_graph(const std::filesystem::path& path, std::size_t num_users,
                               Delimiter delimiter) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open graph file " + path.string());
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split_fields(line, delimiter);
    if (fields.size() < 2) throw ParseError(path.string(), line_no, "expected user, user");
    const auto a = detail::parse_index(fields[0]);
    const auto b = detail::parse_index(fields[1]);
    if (!a || !b || *a >= num_users || *b >= num_users) {
      throw ParseError(path.string(), line_no, "expected dense user indices in range");
    }
    edges.emplace_back(static_cast<UserId>(*a), static_cast<UserId>(*b));
  }
  return SocialGraph(num_users, edges);
}

void save_graph(const std::filesystem::path& path, const SocialGraph& graph,
                Delimiter delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  const char sep = delimiter == Delimiter::kTab ? '\t' : ',';
  for (const auto& [a, b] : graph.edges()) out << a << sep << b << '\n';
}

}  // namespace nasrec
