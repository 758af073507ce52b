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

#include "nasrec/model/recommender.hpp"

#include "nasrec/common/errors.hpp"
#include "nasrec/simd/kernels.hpp"

namespace nasrec {

void score_all_items(std::span<const double> z, const DenseMatrix& items, std::span<double> out) {
  if (out.size() != items.rows() || z.size() != items.cols()) {
    throw ContractViolation("score_all_items: shape mismatch");
  }
  simd::kernels().gemv(items.flat().data(), items.rows(), items.cols(), z.data(), out.data());
}

NasRecommender::NasRecommender(const LatentFactors& factors, const NasParameters& params,
                               AttentionMode mode, std::size_t k_max, const SocialGraph& graph)
    : factors_(factors), params_(params), mode_(mode), k_max_(k_max), graph_(graph) {
  if (graph.num_users() != factors.users.rows()) {
    throw DataError("social graph has " + std::to_string(graph.num_users()) +
                    " users but the model has " + std::to_string(factors.users.rows()));
  }
}

void NasRecommender::user_forward(UserId user, std::uint64_t seed, ForwardCache& cache,
                                  FriendContext* friends_out) const {
  FriendContext friends = friend_context(graph_, user, k_max_, seed);
  forward_user(user, friends, factors_, params_, mode_, cache);
  if (friends_out != nullptr) *friends_out = std::move(friends);
}

void NasRecommender::score_items(UserId user, std::uint64_t seed, std::span<double> out) const {
  ForwardCache cache;
  user_forward(user, seed, cache);
  score_all_items(cache.z(), factors_.items, out);
}

void DotProductRecommender::score_items(UserId user, std::uint64_t /*seed*/,
                                        std::span<double> out) const {
  score_all_items(factors_.users.row(user), factors_.items, out);
}

}  // namespace nasrec
