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

// Planted-influence synthetic data.
//
// Ground truth: own preference vectors w_u ~ N(0, I) and item vectors
// v_i ~ N(0, I) in d_true dimensions. Each user gets about friends_per_user
// neighbors and a designated subset of influential_per_user of them, A(u).
// Effective preferences solve
//   e_u = (1 - alpha) w_u + alpha * std(mean_{p in A(u)} e_p)
// by fixed-point iteration, where std() centres the social term across users
// and scales it to unit RMS so it stays commensurate with w_u. Users without
// influential friends keep e_u = w_u.
// Users rate the items they prefer: ratings_per_user items are drawn without
// replacement with logits selectivity * pref(u, i), where pref is e_u . v_i
// standardized over all pairs. A rating is round(3 + pref + noise * N(0,1))
// clipped to [1, 5].

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nasrec/data/interactions.hpp"
#include "nasrec/data/social_graph.hpp"
#include "nasrec/model/snapshot.hpp"
#include "nasrec/nn/matrix.hpp"

namespace nasrec {

struct SyntheticSpec {
  std::size_t n = 300;
  std::size_t m = 500;
  std::size_t d_true = 4;
  std::size_t friends_per_user = 10;
  std::size_t influential_per_user = 5;
  std::size_t ratings_per_user = 20;
  double alpha = 0.8;
  double noise = 0.1;
  double selectivity = 4.0;
  std::uint64_t seed = 1;

  std::vector<std::string> problems() const;
  // Throws ConfigError listing every problem.
  void validate() const;

  friend bool operator==(const SyntheticSpec&, const SyntheticSpec&) = default;
};

struct SyntheticData {
  InteractionSet ratings;
  SocialGraph graph;
  // Sorted ground-truth influential friends per user.
  std::vector<std::vector<UserId>> influential;
  DenseMatrix own;        // n x d_true
  DenseMatrix effective;  // n x d_true
  DenseMatrix items;      // m x d_true
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// Writes ratings.tsv (user item rating), graph.tsv (user friend),
// influential.tsv (user friend) and spec.json into `dir`, using raw indices
// as ids.
void write_synthetic(const std::filesystem::path& dir, const SyntheticSpec& spec,
                     const SyntheticData& data);

std::string synthetic_spec_json(const SyntheticSpec& spec);
// Throws ConfigError on unknown keys or bad types.
SyntheticSpec parse_synthetic_spec_json(const std::string& text);

struct AttentionDiagnostics {
  // Averages over users whose drawn friends include both groups.
  double mean_gamma_influential = 0.0;
  double mean_gamma_other = 0.0;
  std::size_t users = 0;
};

// Mean trained attention on ground-truth influential vs other friends. The
// snapshot must use softmax attention.
AttentionDiagnostics attention_diagnostics(const ModelSnapshot& snapshot,
                                           const SocialGraph& graph,
                                           const std::vector<std::vector<UserId>>& influential,
                                           std::uint64_t seed);

}  // namespace nasrec
