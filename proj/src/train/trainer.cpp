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

#include "nasrec/train/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nasrec/common/errors.hpp"
#include "nasrec/common/parallel.hpp"
#include "nasrec/common/rng.hpp"
#include "nasrec/data/friend_context.hpp"
#include "nasrec/data/relevance.hpp"
#include "nasrec/eval/evaluate.hpp"
#include "nasrec/nn/ops.hpp"
#include "nasrec/simd/kernels.hpp"
#include "nasrec/train/bpr.hpp"

namespace nasrec {
namespace {

constexpr std::uint64_t kTripleStream = 0x5452'0001;
constexpr std::uint64_t kFriendStream = 0x5452'0002;
constexpr std::uint64_t kValidationStream = 0x5452'0003;
constexpr std::uint64_t kParamStream = 0x5452'0004;
constexpr std::uint64_t kDeepenStream = 0x5452'0005;

BatchGradients make_gradients(const NasParameters* params, const LatentFactors& factors) {
  BatchGradients g;
  if (params != nullptr) g.params = params->zeros_like();
  g.users = RowGradients(factors.users.rows(), factors.dim());
  g.items = RowGradients(factors.items.rows(), factors.dim());
  return g;
}

// Contiguous runs of equal users in `order` (indices into batch, sorted by
// user then position).
struct UserGroup {
  std::size_t begin;
  std::size_t end;
};

void accumulate_user_group(const LatentFactors& factors, const NasParameters& params,
                           AttentionMode mode, const SocialGraph& graph, std::size_t k_max,
                           double reg, std::uint64_t friend_seed, std::span<const TrainTriple> batch,
                           std::span<const std::size_t> members, double scale,
                           BatchGradients& out, ForwardCache& cache, Vector& d_z,
                           std::vector<Vector>& d_friends, double& loss) {
  const UserId u = batch[members.front()].user;
  const FriendContext friends = friend_context(graph, u, k_max, friend_seed);
  forward_user(u, friends, factors, params, mode, cache);
  const auto z = cache.z();
  const std::size_t d = factors.dim();
  const auto& kern = simd::kernels();
  std::fill(d_z.begin(), d_z.end(), 0.0);
  for (std::size_t idx : members) {
    const auto& t = batch[idx];
    const auto v_pos = factors.items.row(t.pos_item);
    const auto v_neg = factors.items.row(t.neg_item);
    const double s_pos = kern.dot(z.data(), v_pos.data(), d);
    const double s_neg = kern.dot(z.data(), v_neg.data(), d);
    loss += bpr_loss(s_pos, s_neg);
    const double g = scale * bpr_margin_gradient(s_pos, s_neg);
    kern.axpy(g, v_pos.data(), d_z.data(), d);
    kern.axpy(-g, v_neg.data(), d_z.data(), d);
    auto d_pos = out.items.row(t.pos_item);
    kern.axpy(g, z.data(), d_pos.data(), d);
    auto d_neg = out.items.row(t.neg_item);
    kern.axpy(-g, z.data(), d_neg.data(), d);
    if (reg > 0.0) {
      loss += 0.5 * reg * (kern.dot(v_pos.data(), v_pos.data(), d) +
                           kern.dot(v_neg.data(), v_neg.data(), d));
      kern.axpy(scale * reg, v_pos.data(), d_pos.data(), d);
      kern.axpy(scale * reg, v_neg.data(), d_neg.data(), d);
    }
  }
  auto d_user = out.users.row(u);
  if (reg > 0.0) {
    const auto row = factors.users.row(u);
    const double n = static_cast<double>(members.size());
    loss += 0.5 * reg * n * kern.dot(row.data(), row.data(), d);
    kern.axpy(scale * reg * n, row.data(), d_user.data(), d);
  }
  backward_user(cache, d_z, params, out.params, d_user, d_friends);
  for (std::size_t p = 0; p < friends.k(); ++p) {
    kern.axpy(1.0, d_friends[p].data(), out.users.row(friends.friends[p]).data(), d);
  }
}

void require_finite_rows(const RowGradients& g, std::string_view table) {
  for (std::uint32_t r : g.touched()) {
    const auto row = g.get(r);
    if (!std::all_of(row.begin(), row.end(), [](double x) { return std::isfinite(x); })) {
      throw TrainingError("non-finite gradient in " + std::string(table) + " row " +
                          std::to_string(r));
    }
  }
}

void apply_rows(const RowGradients& g, DenseMatrix& table, AdamState& adam, double lr) {
  if (g.touched().empty()) return;
  adam.advance();
  const std::size_t d = table.cols();
  for (std::uint32_t r : g.touched()) adam.apply(r * d, table.row(r), g.get(r), lr);
}

void update_parameters(NasParameters& params, const NasParameters& grads, AdamState& adam,
                       double lr) {
  for (const auto& block : grads.blocks()) {
    require_finite(grads.values().subspan(block.offset, block.size()), block.name);
  }
  adam.advance();
  adam.apply(0, params.values(), grads.values(), lr);
}

}  // namespace

void BatchGradients::clear() {
  params.set_zero();
  users.clear();
  items.clear();
}

NasObjective::NasObjective(const SocialGraph& graph, AttentionMode mode, std::size_t k_max,
                           std::size_t threads, double reg)
    : graph_(graph),
      mode_(mode),
      k_max_(k_max),
      threads_(std::max<std::size_t>(1, threads)),
      reg_(reg) {}

double NasObjective::accumulate(const LatentFactors& factors, const NasParameters& params,
                                std::uint64_t friend_seed, std::span<const TrainTriple> batch,
                                double scale, BatchGradients& out) {
  std::vector<std::size_t> order(batch.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return batch[a].user < batch[b].user; });
  std::vector<UserGroup> groups;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && batch[order[j]].user == batch[order[i]].user) ++j;
    groups.push_back({i, j});
    i = j;
  }

  const std::size_t workers = effective_workers(groups.size(), threads_);
  if (workers > 1 && scratch_.size() < workers - 1) {
    while (scratch_.size() < workers - 1) scratch_.push_back(make_gradients(&params, factors));
  }
  std::vector<double> losses(workers, 0.0);
  parallel_for(groups.size(), workers, [&](std::size_t begin, std::size_t end, std::size_t w) {
    BatchGradients& target = w == 0 ? out : scratch_[w - 1];
    ForwardCache cache;
    Vector d_z(factors.dim());
    std::vector<Vector> d_friends;
    for (std::size_t g = begin; g < end; ++g) {
      const std::span<const std::size_t> members(order.data() + groups[g].begin,
                                                 groups[g].end - groups[g].begin);
      accumulate_user_group(factors, params, mode_, graph_, k_max_, reg_, friend_seed, batch, members,
                            scale, target, cache, d_z, d_friends, losses[w]);
    }
  });
  for (std::size_t w = 1; w < workers; ++w) {
    auto& s = scratch_[w - 1];
    const auto src = s.params.values();
    auto dst = out.params.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    out.users.add(s.users);
    out.items.add(s.items);
    s.clear();
  }
  double loss = 0.0;
  for (double l : losses) loss += l;
  return loss;
}

double accumulate_bpr_mf(const LatentFactors& factors, double reg,
                         std::span<const TrainTriple> batch, double scale, BatchGradients& out) {
  const std::size_t d = factors.dim();
  const auto& kern = simd::kernels();
  double loss = 0.0;
  for (const auto& t : batch) {
    const auto u = factors.users.row(t.user);
    const auto vp = factors.items.row(t.pos_item);
    const auto vn = factors.items.row(t.neg_item);
    const double sp = kern.dot(u.data(), vp.data(), d);
    const double sn = kern.dot(u.data(), vn.data(), d);
    loss += bpr_loss(sp, sn) + 0.5 * reg *
                                   (kern.dot(u.data(), u.data(), d) +
                                    kern.dot(vp.data(), vp.data(), d) +
                                    kern.dot(vn.data(), vn.data(), d));
    const double g = scale * bpr_margin_gradient(sp, sn);
    auto du = out.users.row(t.user);
    kern.axpy(g, vp.data(), du.data(), d);
    kern.axpy(-g, vn.data(), du.data(), d);
    kern.axpy(scale * reg, u.data(), du.data(), d);
    auto dvp = out.items.row(t.pos_item);
    kern.axpy(g, u.data(), dvp.data(), d);
    kern.axpy(scale * reg, vp.data(), dvp.data(), d);
    auto dvn = out.items.row(t.neg_item);
    kern.axpy(-g, u.data(), dvn.data(), d);
    kern.axpy(scale * reg, vn.data(), dvn.data(), d);
  }
  return loss;
}

NasTrainable::NasTrainable(const TrainConfig& config, AttentionMode mode,
                           const SocialGraph& graph, LatentFactors factors, NasParameters params)
    : config_(config),
      mode_(mode),
      graph_(graph),
      factors_(std::move(factors)),
      params_(std::move(params)),
      objective_(graph, mode, config.k_max, config.threads, config.nas_reg),
      grads_(make_gradients(&params_, factors_)),
      param_adam_(params_.size()),
      user_adam_(factors_.users.size()),
      item_adam_(factors_.items.size()) {
  if (params_.dim() != factors_.dim()) {
    throw ContractViolation("NasTrainable: parameter and factor dimensions differ");
  }
  if (params_.has_attention() != (mode == AttentionMode::kSoftmax)) {
    throw ContractViolation("NasTrainable: attention blocks do not match the attention mode");
  }
  if (graph.num_users() != factors_.users.rows()) {
    throw DataError("social graph has " + std::to_string(graph.num_users()) +
                    " users but the factors have " + std::to_string(factors_.users.rows()));
  }
}

double NasTrainable::accumulate(std::span<const TrainTriple> batch, std::size_t epoch,
                                double scale) {
  const std::uint64_t friend_seed = derive_seed(config_.seed, {kFriendStream, epoch});
  return objective_.accumulate(factors_, params_, friend_seed, batch, scale, grads_);
}

void NasTrainable::update(double lr) {
  update_parameters(params_, grads_.params, param_adam_, lr);
  if (config_.finetune_embeddings) {
    require_finite_rows(grads_.users, "factors.users");
    require_finite_rows(grads_.items, "factors.items");
    apply_rows(grads_.users, factors_.users, user_adam_, lr);
    apply_rows(grads_.items, factors_.items, item_adam_, lr);
  }
  grads_.clear();
}

std::unique_ptr<Recommender> NasTrainable::scorer() const {
  return std::make_unique<NasRecommender>(factors_, params_, mode_, config_.k_max, graph_);
}

ModelSnapshot NasTrainable::snapshot() const {
  ModelSnapshot s;
  s.kind = mode_ == AttentionMode::kSoftmax ? ModelKind::kNas : ModelKind::kNasStar;
  s.mode = mode_;
  s.k_max = config_.k_max;
  s.factors = factors_;
  s.params = params_;
  return s;
}

BprMfTrainable::BprMfTrainable(const TrainConfig& config, LatentFactors factors)
    : config_(config),
      factors_(std::move(factors)),
      grads_(make_gradients(nullptr, factors_)),
      user_adam_(factors_.users.size()),
      item_adam_(factors_.items.size()) {}

double BprMfTrainable::accumulate(std::span<const TrainTriple> batch, std::size_t,
                                  double scale) {
  return accumulate_bpr_mf(factors_, config_.bpr_reg, batch, scale, grads_);
}

void BprMfTrainable::update(double lr) {
  require_finite_rows(grads_.users, "factors.users");
  require_finite_rows(grads_.items, "factors.items");
  apply_rows(grads_.users, factors_.users, user_adam_, lr);
  apply_rows(grads_.items, factors_.items, item_adam_, lr);
  grads_.clear();
}

std::unique_ptr<Recommender> BprMfTrainable::scorer() const {
  return std::make_unique<DotProductRecommender>(factors_);
}

ModelSnapshot BprMfTrainable::snapshot() const {
  ModelSnapshot s;
  s.kind = ModelKind::kBprMf;
  s.factors = factors_;
  return s;
}

TrainResult run_training(TrainableModel& model, const TrainConfig& config,
                         const DatasetSplit& data, std::size_t epochs, std::size_t first_epoch,
                         const TrainCallbacks& callbacks) {
  config.validate();
  if (data.train.empty()) throw ContractViolation("train: empty training partition");
  const RelevanceLabels val_labels = binarize_relevance(data.validation);
  const bool can_validate =
      std::any_of(val_labels.relevant.begin(), val_labels.relevant.end(),
                  [](const auto& r) { return !r.empty(); });
  const std::uint64_t val_seed = derive_seed(config.seed, {kValidationStream});

  TrainResult result;
  double best_ndcg = -1.0;
  for (std::size_t e = 0; e < epochs; ++e) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng = make_rng(config.seed, {kTripleStream, e});
    const EpochTriples epoch = build_epoch_triples(data.train, config.neg_per_pos, rng);
    result.skipped_users = epoch.skipped_users;
    const auto& triples = epoch.triples;

    CompensatedSum loss_total;
    std::size_t batch_index = 0;
    for (std::size_t begin = 0; begin < triples.size(); begin += config.batch_size, ++batch_index) {
      const std::size_t end = std::min(triples.size(), begin + config.batch_size);
      const std::span<const TrainTriple> batch(triples.data() + begin, end - begin);
      const double loss = model.accumulate(batch, e, 1.0 / static_cast<double>(batch.size()));
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "non-finite loss in epoch " << first_epoch + e << ", batch " << batch_index
            << " (triples " << begin << ".." << end - 1 << ", first user " << batch.front().user
            << ")";
        throw TrainingError(msg.str());
      }
      loss_total.add(loss);
      model.update(config.lr);
    }

    EpochLog log;
    log.epoch = first_epoch + e;
    log.mean_loss =
        triples.empty() ? 0.0 : loss_total.value() / static_cast<double>(triples.size());
    if (can_validate) {
      const auto scorer = model.scorer();
      const RunMetrics m =
          evaluate_run(*scorer, val_labels, data.train, config.val_n, val_seed, config.threads);
      log.val_recall = m.recall;
      log.val_ndcg = m.ndcg;
    } else {
      log.val_recall = std::nan("");
      log.val_ndcg = std::nan("");
    }
    log.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.log.push_back(log);
    if (callbacks.on_epoch) callbacks.on_epoch(log);

    const double score = can_validate ? log.val_ndcg : static_cast<double>(e);
    if (score > best_ndcg) {
      best_ndcg = score;
      result.best = model.snapshot();
      result.best_epoch = log.epoch;
    }
  }
  result.last = model.snapshot();
  if (epochs == 0) {
    result.best = result.last;
    result.best_epoch = first_epoch - 1;
  }
  return result;
}

NasParameters initial_parameters(const TrainConfig& config, AttentionMode mode) {
  return NasParameters::xavier(config.d, config.h, mode == AttentionMode::kSoftmax,
                               derive_seed(config.seed, {kParamStream, config.h}));
}

NasParameters deepen_parameters(const NasParameters& shallow, const TrainConfig& config) {
  NasParameters deep =
      NasParameters::xavier(shallow.dim(), config.h, shallow.has_attention(),
                            derive_seed(config.seed, {kDeepenStream, config.h}));
  copy_shared_blocks(shallow, deep);
  if (config.deepen_init == DeepenInit::kIdentity) {
    const auto& layout = deep.layout();
    for (std::size_t q = shallow.depth(); q < deep.depth(); ++q) {
      for (std::size_t block : {layout.effects_hidden_weight[q], layout.extraction_hidden_weight[q]}) {
        auto w = deep.matrix(block);
        for (std::size_t r = 0; r < w.rows(); ++r) {
          for (std::size_t c = 0; c < w.cols(); ++c) w(r, c) = r == c ? 1.0 : 0.0;
        }
      }
    }
  }
  return deep;
}

TrainResult train_nas(const TrainConfig& config, AttentionMode mode, const DatasetSplit& data,
                      const SocialGraph& graph, const LatentFactors& factors,
                      std::optional<NasParameters> initial, const TrainCallbacks& callbacks) {
  config.validate();
  if (factors.dim() != config.d) {
    throw ConfigError("latent factors have d=" + std::to_string(factors.dim()) +
                      " but the configuration asks for d=" + std::to_string(config.d));
  }
  NasParameters params = initial ? std::move(*initial) : initial_parameters(config, mode);
  if (params.depth() != config.h) {
    throw ContractViolation("train_nas: initial parameters have the wrong depth");
  }
  NasTrainable model(config, mode, graph, factors, std::move(params));
  return run_training(model, config, data, config.epochs, 1, callbacks);
}

TrainResult pretrain_shallow_then_deepen(const TrainConfig& config, AttentionMode mode,
                                         const DatasetSplit& data, const SocialGraph& graph,
                                         const LatentFactors& factors,
                                         const TrainCallbacks& callbacks) {
  if (config.h == 1) return train_nas(config, mode, data, graph, factors, std::nullopt, callbacks);
  config.validate();

  TrainConfig shallow_config = config;
  shallow_config.h = 1;
  shallow_config.epochs = config.phase_one_epochs();
  TrainResult phase1 =
      train_nas(shallow_config, mode, data, graph, factors, std::nullopt, callbacks);

  NasParameters deep = deepen_parameters(*phase1.best.params, config);
  NasTrainable model(config, mode, graph, phase1.best.factors, std::move(deep));
  TrainResult phase2 =
      run_training(model, config, data, config.epochs, phase1.log.size() + 1, callbacks);

  TrainResult result = std::move(phase2);
  result.log.insert(result.log.begin(), phase1.log.begin(), phase1.log.end());
  return result;
}

}  // namespace nasrec
