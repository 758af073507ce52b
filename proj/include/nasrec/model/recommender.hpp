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
#include <span>

#include "nasrec/data/social_graph.hpp"
#include "nasrec/model/nas.hpp"

namespace nasrec {

// Anything that can score every item for a user. Evaluation and the CLI only
// see this interface.
class Recommender {
 public:
  virtual ~Recommender() = default;
  virtual std::size_t num_users() const = 0;
  virtual std::size_t num_items() const = 0;
  // Writes one score per item into `out` (size num_items()). `seed` drives
  // any inference-time sampling such as friend subsampling.
  virtual void score_items(UserId user, std::uint64_t seed, std::span<double> out) const = 0;
};

// Scores with the social model; friend lists come from `graph`, subsampled to
// k_max with the per-call seed.
class NasRecommender : public Recommender {
 public:
  NasRecommender(const LatentFactors& factors, const NasParameters& params, AttentionMode mode,
                 std::size_t k_max, const SocialGraph& graph);

  std::size_t num_users() const override { return factors_.users.rows(); }
  std::size_t num_items() const override { return factors_.items.rows(); }
  void score_items(UserId user, std::uint64_t seed, std::span<double> out) const override;

  // Forward pass only, for attention diagnostics.
  void user_forward(UserId user, std::uint64_t seed, ForwardCache& cache,
                    FriendContext* friends_out = nullptr) const;

 private:
  const LatentFactors& factors_;
  const NasParameters& params_;
  AttentionMode mode_;
  std::size_t k_max_;
  const SocialGraph& graph_;
};

// Plain inner-product scorer u_u . v_i.
class DotProductRecommender : public Recommender {
 public:
  explicit DotProductRecommender(const LatentFactors& factors) : factors_(factors) {}

  std::size_t num_users() const override { return factors_.users.rows(); }
  std::size_t num_items() const override { return factors_.items.rows(); }
  void score_items(UserId user, std::uint64_t seed, std::span<double> out) const override;

 private:
  const LatentFactors& factors_;
};

// z . v_i for every item, z of length d.
void score_all_items(std::span<const double> z, const DenseMatrix& items, std::span<double> out);

}  // namespace nasrec
