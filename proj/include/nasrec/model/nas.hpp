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

// Forward and backward passes of the social attention recommender.
//
// Per user u with friends p = 1..k:
//   effects:    o0 = relu(We_u0 u + We_p0 u_p + be_0)
//               oq = relu(We_q o(q-1) + be_q),           q = 1..h
//               f_p = We_f oh + be_f                      (no activation)
//   attention:  phi_p = sum_j relu(Wpsi_1 u + Wpsi_2 f_p + bpsi)_j
//               gamma = softmax(phi)
//   aggregate:  fbar = sum_p gamma_p f_p                  (zero when k = 0)
//   extraction: x0 = relu(Wz_u0 u + Wz_f0 fbar + bz_0)
//               xq = relu(Wz_q x(q-1) + bz_q),            z = xh
//   score:      s(i) = z . v_i

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nasrec/data/friend_context.hpp"
#include "nasrec/model/parameters.hpp"
#include "nasrec/nn/matrix.hpp"

namespace nasrec {

struct LatentFactors {
  DenseMatrix users;  // n x d
  DenseMatrix items;  // m x d

  std::size_t dim() const { return users.cols(); }
  friend bool operator==(const LatentFactors&, const LatentFactors&) = default;
};

struct EffectCache {
  std::vector<Vector> pre;   // layers 0..h before ReLU
  std::vector<Vector> post;  // layers 0..h after ReLU
  Vector effect;             // f_p
};

// Everything the backward pass needs for one user's social vector. Reused
// across calls to avoid reallocations.
struct ForwardCache {
  AttentionMode mode = AttentionMode::kSoftmax;
  std::size_t dim = 0;
  std::size_t depth = 0;
  Vector user;
  std::vector<Vector> friends;
  std::vector<EffectCache> effects;
  std::vector<Vector> attention_pre;  // per friend, before ReLU (softmax mode only)
  Vector scores;                      // phi
  Vector gamma;
  Vector aggregate;                   // fbar
  std::vector<Vector> extraction_pre;
  std::vector<Vector> extraction_post;

  std::size_t k() const { return friends.size(); }
  std::span<const double> z() const { return extraction_post.back(); }
  // Smallest |pre-activation| over every ReLU input (infinity if none).
  double min_preactivation_magnitude() const;
};

// Single friend's effect f_p (layers 0..h plus the linear output).
Vector social_effect(std::span<const double> user, std::span<const double> friend_vec,
                     const NasParameters& params, EffectCache* cache = nullptr);

// Softmax attention over friend effects. Throws ContractViolation for k = 0.
Vector attention_weights(std::span<const double> user, const std::vector<Vector>& effects,
                         const NasParameters& params);

// sum_p gamma_p f_p; zero vector of length `dim` when there are no friends.
Vector aggregate_effects(std::span<const double> gamma, const std::vector<Vector>& effects,
                         std::size_t dim);

Vector extract_social_vector(std::span<const double> user, std::span<const double> aggregate,
                             const NasParameters& params, ForwardCache* cache = nullptr);

double predict(std::span<const double> z, std::span<const double> item);

// Full user-side pipeline; friend vectors given explicitly.
void forward_user(std::span<const double> user, std::span<const std::span<const double>> friends,
                  const NasParameters& params, AttentionMode mode, ForwardCache& cache);

// Convenience overload reading rows of `factors`.
void forward_user(UserId user, const FriendContext& friends, const LatentFactors& factors,
                  const NasParameters& params, AttentionMode mode, ForwardCache& cache);

struct TripleForward {
  UserId user = 0;
  ItemId pos_item = 0;
  ItemId neg_item = 0;
  std::vector<UserId> friend_ids;
  double score_pos = 0.0;
  double score_neg = 0.0;
  ForwardCache cache;
};

TripleForward forward(UserId user, ItemId pos_item, ItemId neg_item, const FriendContext& friends,
                      const LatentFactors& factors, const NasParameters& params,
                      AttentionMode mode);

// Reverse pass from dL/dz. Parameter gradients are accumulated into `grads`,
// the user-vector gradient into `d_user`, and per-position friend-vector
// gradients into `d_friends` (resized to k and zeroed by the callee).
// Throws ContractViolation if the cache does not match the parameters.
void backward_user(const ForwardCache& cache, std::span<const double> d_z,
                   const NasParameters& params, NasParameters& grads, std::span<double> d_user,
                   std::vector<Vector>& d_friends);

struct TripleGradients {
  NasParameters params;
  Vector user;
  // One entry per distinct friend id (duplicates accumulated), sorted by id.
  std::vector<std::pair<UserId, Vector>> friends;
  Vector pos_item;
  Vector neg_item;
};

TripleGradients backward(const TripleForward& fwd, double d_score_pos, double d_score_neg,
                         const LatentFactors& factors, const NasParameters& params);

}  // namespace nasrec
