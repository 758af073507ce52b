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

#include "nasrec/model/nas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "nasrec/common/errors.hpp"
#include "nasrec/nn/ops.hpp"
#include "nasrec/simd/kernels.hpp"

namespace nasrec {
namespace {

void require_dim(std::span<const double> v, std::size_t d, const char* what) {
  if (v.size() != d) {
    throw ContractViolation(std::string(what) + ": expected length " + std::to_string(d) +
                            ", got " + std::to_string(v.size()));
  }
}

// out = W x (+ existing contents if accumulate)
void gemv(ConstMatrixView w, std::span<const double> x, std::span<double> out) {
  simd::kernels().gemv(w.data(), w.rows(), w.cols(), x.data(), out.data());
}

void add_into(std::span<double> y, std::span<const double> x) {
  simd::kernels().axpy(1.0, x.data(), y.data(), y.size());
}

// y += W^T x
void gemv_t_acc(ConstMatrixView w, std::span<const double> x, std::span<double> y) {
  simd::kernels().gemv_t_acc(w.data(), w.rows(), w.cols(), x.data(), y.data());
}

// G += g x^T
void outer_acc(MatrixView g_w, std::span<const double> g, std::span<const double> x) {
  simd::kernels().ger_acc(1.0, g.data(), g_w.rows(), x.data(), g_w.cols(), g_w.data());
}

void relu_copy(std::span<const double> pre, Vector& post) {
  post.assign(pre.begin(), pre.end());
  relu_inplace(post);
}

// g <- g * [pre > 0]
void mask_relu(std::span<double> g, std::span<const double> pre) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(pre[i] > 0.0)) g[i] = 0.0;
  }
}

// Layers 1..h plus the linear output on top of layer-0 pre-activation `pre0`.
void effect_stack(const NasParameters& params, EffectCache& c) {
  const auto& L = params.layout();
  const std::size_t d = params.dim();
  const std::size_t h = params.depth();
  c.post.resize(h + 1);
  c.pre.resize(h + 1);
  relu_copy(c.pre[0], c.post[0]);
  for (std::size_t q = 1; q <= h; ++q) {
    c.pre[q].resize(d);
    gemv(params.matrix(L.effects_hidden_weight[q - 1]), c.post[q - 1], c.pre[q]);
    add_into(c.pre[q], params.vec(L.effects_hidden_bias[q - 1]));
    relu_copy(c.pre[q], c.post[q]);
  }
  c.effect.resize(d);
  gemv(params.matrix(L.effects_out_weight), c.post[h], c.effect);
  add_into(c.effect, params.vec(L.effects_out_bias));
}

void extraction_stack(std::span<const double> user, std::span<const double> aggregate,
                      const NasParameters& params, ForwardCache& c) {
  const auto& L = params.layout();
  const std::size_t d = params.dim();
  const std::size_t h = params.depth();
  c.extraction_pre.resize(h + 1);
  c.extraction_post.resize(h + 1);
  Vector& pre0 = c.extraction_pre[0];
  pre0.resize(d);
  Vector tmp(d);
  gemv(params.matrix(L.extraction_user), user, pre0);
  gemv(params.matrix(L.extraction_effect), aggregate, tmp);
  add_into(pre0, tmp);
  add_into(pre0, params.vec(L.extraction_bias));
  relu_copy(pre0, c.extraction_post[0]);
  for (std::size_t q = 1; q <= h; ++q) {
    c.extraction_pre[q].resize(d);
    gemv(params.matrix(L.extraction_hidden_weight[q - 1]), c.extraction_post[q - 1],
         c.extraction_pre[q]);
    add_into(c.extraction_pre[q], params.vec(L.extraction_hidden_bias[q - 1]));
    relu_copy(c.extraction_pre[q], c.extraction_post[q]);
  }
}

double relu_sum(std::span<const double> pre) {
  double s = 0.0;
  for (double x : pre) s += x > 0.0 ? x : 0.0;
  return s;
}

}  // namespace

double ForwardCache::min_preactivation_magnitude() const {
  double m = std::numeric_limits<double>::infinity();
  auto scan = [&m](const Vector& v) {
    for (double x : v) m = std::min(m, std::abs(x));
  };
  for (const auto& e : effects) {
    for (const auto& v : e.pre) scan(v);
  }
  for (const auto& v : attention_pre) scan(v);
  for (const auto& v : extraction_pre) scan(v);
  return m;
}

Vector social_effect(std::span<const double> user, std::span<const double> friend_vec,
                     const NasParameters& params, EffectCache* cache) {
  const auto& L = params.layout();
  const std::size_t d = params.dim();
  require_dim(user, d, "social_effect user");
  require_dim(friend_vec, d, "social_effect friend");
  EffectCache local;
  EffectCache& c = cache != nullptr ? *cache : local;
  c.pre.resize(params.depth() + 1);
  c.pre[0].resize(d);
  Vector tmp(d);
  gemv(params.matrix(L.effects_user), user, c.pre[0]);
  gemv(params.matrix(L.effects_friend), friend_vec, tmp);
  add_into(c.pre[0], tmp);
  add_into(c.pre[0], params.vec(L.effects_bias));
  effect_stack(params, c);
  return c.effect;
}

Vector attention_weights(std::span<const double> user, const std::vector<Vector>& effects,
                         const NasParameters& params) {
  if (effects.empty()) throw ContractViolation("attention_weights: no friends (k = 0)");
  if (!params.has_attention()) throw ContractViolation("attention_weights: model has no attention");
  const auto& L = params.layout();
  const std::size_t d = params.dim();
  require_dim(user, d, "attention_weights user");
  Vector user_term(d);
  gemv(params.matrix(L.attention_user), user, user_term);
  add_into(user_term, params.vec(L.attention_bias));
  Vector scores(effects.size());
  Vector pre(d);
  for (std::size_t p = 0; p < effects.size(); ++p) {
    require_dim(effects[p], d, "attention_weights effect");
    gemv(params.matrix(L.attention_effect), effects[p], pre);
    add_into(pre, user_term);
    scores[p] = relu_sum(pre);
  }
  return softmax(scores);
}

Vector aggregate_effects(std::span<const double> gamma, const std::vector<Vector>& effects,
                         std::size_t dim) {
  if (gamma.size() != effects.size()) {
    throw ContractViolation("aggregate_effects: " + std::to_string(gamma.size()) +
                            " weights for " + std::to_string(effects.size()) + " effects");
  }
  Vector out(dim, 0.0);
  for (std::size_t p = 0; p < effects.size(); ++p) {
    require_dim(effects[p], dim, "aggregate_effects effect");
    simd::kernels().axpy(gamma[p], effects[p].data(), out.data(), dim);
  }
  return out;
}

Vector extract_social_vector(std::span<const double> user, std::span<const double> aggregate,
                             const NasParameters& params, ForwardCache* cache) {
  require_dim(user, params.dim(), "extract_social_vector user");
  require_dim(aggregate, params.dim(), "extract_social_vector aggregate");
  ForwardCache local;
  ForwardCache& c = cache != nullptr ? *cache : local;
  extraction_stack(user, aggregate, params, c);
  return c.extraction_post.back();
}

double predict(std::span<const double> z, std::span<const double> item) { return dot(z, item); }

void forward_user(std::span<const double> user, std::span<const std::span<const double>> friends,
                  const NasParameters& params, AttentionMode mode, ForwardCache& c) {
  const auto& L = params.layout();
  const std::size_t d = params.dim();
  const std::size_t k = friends.size();
  require_dim(user, d, "forward_user user");
  if (mode == AttentionMode::kSoftmax && !params.has_attention()) {
    throw ContractViolation("forward_user: softmax attention requested without attention blocks");
  }
  c.mode = mode;
  c.dim = d;
  c.depth = params.depth();
  c.user.assign(user.begin(), user.end());
  c.friends.resize(k);
  c.effects.resize(k);

  // Friend-independent halves of the effects and attention layers.
  Vector effects_user_term(d);
  gemv(params.matrix(L.effects_user), user, effects_user_term);
  add_into(effects_user_term, params.vec(L.effects_bias));
  Vector attention_user_term;
  if (mode == AttentionMode::kSoftmax) {
    attention_user_term.resize(d);
    gemv(params.matrix(L.attention_user), user, attention_user_term);
    add_into(attention_user_term, params.vec(L.attention_bias));
    c.attention_pre.resize(k);
  } else {
    c.attention_pre.clear();
  }
  c.scores.assign(k, 0.0);

  for (std::size_t p = 0; p < k; ++p) {
    require_dim(friends[p], d, "forward_user friend");
    c.friends[p].assign(friends[p].begin(), friends[p].end());
    EffectCache& e = c.effects[p];
    e.pre.resize(params.depth() + 1);
    e.pre[0].resize(d);
    gemv(params.matrix(L.effects_friend), friends[p], e.pre[0]);
    add_into(e.pre[0], effects_user_term);
    effect_stack(params, e);
    if (mode == AttentionMode::kSoftmax) {
      Vector& a = c.attention_pre[p];
      a.resize(d);
      gemv(params.matrix(L.attention_effect), e.effect, a);
      add_into(a, attention_user_term);
      c.scores[p] = relu_sum(a);
    }
  }

  switch (mode) {
    case AttentionMode::kSoftmax:
      c.gamma = k > 0 ? softmax(c.scores) : Vector{};
      break;
    case AttentionMode::kUniformSum:
      c.gamma.assign(k, 1.0);
      break;
    case AttentionMode::kUniformMean:
      c.gamma.assign(k, k > 0 ? 1.0 / static_cast<double>(k) : 0.0);
      break;
  }

  c.aggregate.assign(d, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    simd::kernels().axpy(c.gamma[p], c.effects[p].effect.data(), c.aggregate.data(), d);
  }
  extraction_stack(c.user, c.aggregate, params, c);
}

void forward_user(UserId user, const FriendContext& friends, const LatentFactors& factors,
                  const NasParameters& params, AttentionMode mode, ForwardCache& cache) {
  if (user >= factors.users.rows()) throw ContractViolation("forward_user: user out of range");
  std::vector<std::span<const double>> rows;
  rows.reserve(friends.k());
  for (UserId f : friends.friends) {
    if (f >= factors.users.rows()) throw ContractViolation("forward_user: friend out of range");
    rows.push_back(factors.users.row(f));
  }
  forward_user(factors.users.row(user), rows, params, mode, cache);
}

TripleForward forward(UserId user, ItemId pos_item, ItemId neg_item, const FriendContext& friends,
                      const LatentFactors& factors, const NasParameters& params,
                      AttentionMode mode) {
  if (pos_item >= factors.items.rows() || neg_item >= factors.items.rows()) {
    throw ContractViolation("forward: item out of range");
  }
  TripleForward out;
  out.user = user;
  out.pos_item = pos_item;
  out.neg_item = neg_item;
  out.friend_ids = friends.friends;
  forward_user(user, friends, factors, params, mode, out.cache);
  out.score_pos = predict(out.cache.z(), factors.items.row(pos_item));
  out.score_neg = predict(out.cache.z(), factors.items.row(neg_item));
  return out;
}

void backward_user(const ForwardCache& c, std::span<const double> d_z,
                   const NasParameters& params, NasParameters& grads, std::span<double> d_user,
                   std::vector<Vector>& d_friends) {
  const auto& L = params.layout();
  const std::size_t d = params.dim();
  const std::size_t h = params.depth();
  const std::size_t k = c.k();
  if (c.dim != d || c.depth != h || c.extraction_pre.size() != h + 1 || c.effects.size() != k ||
      grads.dim() != d || grads.depth() != h || grads.has_attention() != params.has_attention() ||
      (c.mode == AttentionMode::kSoftmax && c.attention_pre.size() != k)) {
    throw ContractViolation("backward_user: cache does not match parameter shapes");
  }
  require_dim(d_z, d, "backward_user d_z");
  require_dim(d_user, d, "backward_user d_user");

  // Extraction network, top down.
  Vector g(d_z.begin(), d_z.end());
  Vector g_next(d);
  for (std::size_t q = h; q >= 1; --q) {
    mask_relu(g, c.extraction_pre[q]);
    outer_acc(grads.matrix(L.extraction_hidden_weight[q - 1]), g, c.extraction_post[q - 1]);
    add_into(grads.vec(L.extraction_hidden_bias[q - 1]), g);
    std::fill(g_next.begin(), g_next.end(), 0.0);
    gemv_t_acc(params.matrix(L.extraction_hidden_weight[q - 1]), g, g_next);
    std::swap(g, g_next);
  }
  mask_relu(g, c.extraction_pre[0]);
  outer_acc(grads.matrix(L.extraction_user), g, c.user);
  outer_acc(grads.matrix(L.extraction_effect), g, c.aggregate);
  add_into(grads.vec(L.extraction_bias), g);
  gemv_t_acc(params.matrix(L.extraction_user), g, d_user);
  Vector d_aggregate(d, 0.0);
  gemv_t_acc(params.matrix(L.extraction_effect), g, d_aggregate);

  // d f_p from the aggregation, and d gamma_p.
  std::vector<Vector> d_effect(k, Vector(d, 0.0));
  for (std::size_t p = 0; p < k; ++p) {
    simd::kernels().axpy(c.gamma[p], d_aggregate.data(), d_effect[p].data(), d);
  }
  if (c.mode == AttentionMode::kSoftmax && k > 0) {
    Vector d_gamma(k);
    double weighted = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      d_gamma[p] = dot(d_aggregate, c.effects[p].effect);
      weighted += c.gamma[p] * d_gamma[p];
    }
    Vector d_att_sum(d, 0.0);  // sum_p of attention pre-activation grads
    Vector ga(d);
    for (std::size_t p = 0; p < k; ++p) {
      const double d_score = c.gamma[p] * (d_gamma[p] - weighted);
      const Vector& pre = c.attention_pre[p];
      for (std::size_t j = 0; j < d; ++j) ga[j] = pre[j] > 0.0 ? d_score : 0.0;
      outer_acc(grads.matrix(L.attention_effect), ga, c.effects[p].effect);
      add_into(d_att_sum, ga);
      gemv_t_acc(params.matrix(L.attention_effect), ga, d_effect[p]);
    }
    outer_acc(grads.matrix(L.attention_user), d_att_sum, c.user);
    add_into(grads.vec(L.attention_bias), d_att_sum);
    gemv_t_acc(params.matrix(L.attention_user), d_att_sum, d_user);
  }

  // Effects network per friend.
  d_friends.assign(k, Vector(d, 0.0));
  Vector d_embed_sum(d, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    const EffectCache& e = c.effects[p];
    outer_acc(grads.matrix(L.effects_out_weight), d_effect[p], e.post[h]);
    add_into(grads.vec(L.effects_out_bias), d_effect[p]);
    std::fill(g.begin(), g.end(), 0.0);
    gemv_t_acc(params.matrix(L.effects_out_weight), d_effect[p], g);
    for (std::size_t q = h; q >= 1; --q) {
      mask_relu(g, e.pre[q]);
      outer_acc(grads.matrix(L.effects_hidden_weight[q - 1]), g, e.post[q - 1]);
      add_into(grads.vec(L.effects_hidden_bias[q - 1]), g);
      std::fill(g_next.begin(), g_next.end(), 0.0);
      gemv_t_acc(params.matrix(L.effects_hidden_weight[q - 1]), g, g_next);
      std::swap(g, g_next);
    }
    mask_relu(g, e.pre[0]);
    outer_acc(grads.matrix(L.effects_friend), g, c.friends[p]);
    gemv_t_acc(params.matrix(L.effects_friend), g, d_friends[p]);
    add_into(d_embed_sum, g);
  }
  if (k > 0) {
    outer_acc(grads.matrix(L.effects_user), d_embed_sum, c.user);
    add_into(grads.vec(L.effects_bias), d_embed_sum);
    gemv_t_acc(params.matrix(L.effects_user), d_embed_sum, d_user);
  }
}

TripleGradients backward(const TripleForward& fwd, double d_score_pos, double d_score_neg,
                         const LatentFactors& factors, const NasParameters& params) {
  if (fwd.friend_ids.size() != fwd.cache.k()) {
    throw ContractViolation("backward: friend ids do not match the cache");
  }
  const std::size_t d = params.dim();
  TripleGradients out;
  out.params = params.zeros_like();
  out.user.assign(d, 0.0);
  const auto z = fwd.cache.z();
  const auto v_pos = factors.items.row(fwd.pos_item);
  const auto v_neg = factors.items.row(fwd.neg_item);
  Vector d_z(d);
  out.pos_item.resize(d);
  out.neg_item.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    d_z[j] = d_score_pos * v_pos[j] + d_score_neg * v_neg[j];
    out.pos_item[j] = d_score_pos * z[j];
    out.neg_item[j] = d_score_neg * z[j];
  }
  std::vector<Vector> d_friends;
  backward_user(fwd.cache, d_z, params, out.params, out.user, d_friends);
  std::map<UserId, Vector> merged;
  for (std::size_t p = 0; p < d_friends.size(); ++p) {
    auto [it, inserted] = merged.try_emplace(fwd.friend_ids[p], d, 0.0);
    add_into(it->second, d_friends[p]);
  }
  for (auto& [id, grad] : merged) out.friends.emplace_back(id, std::move(grad));
  return out;
}

}  // namespace nasrec
