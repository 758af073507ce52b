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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nasrec/data/social_graph.hpp"
#include "nasrec/data/split.hpp"
#include "nasrec/model/nas.hpp"
#include "nasrec/model/recommender.hpp"
#include "nasrec/model/snapshot.hpp"
#include "nasrec/nn/adam.hpp"
#include "nasrec/train/config.hpp"
#include "nasrec/train/row_gradients.hpp"
#include "nasrec/train/sampling.hpp"

namespace nasrec {

struct BatchGradients {
  NasParameters params;  // empty for bpr_mf
  RowGradients users;
  RowGradients items;

  void clear();
};

// Batch objective of the social model. Triples are grouped by user so each
// user's social vector is computed and back-propagated once per batch; by
// linearity this equals summing per-triple gradients.
class NasObjective {
 public:
  // `reg` adds 0.5 reg (|u|^2 + |v+|^2 + |v-|^2) per triple on the user's own
  // row and both item rows, as in the BPR-MF objective. Friend rows are not
  // penalised.
  NasObjective(const SocialGraph& graph, AttentionMode mode, std::size_t k_max,
               std::size_t threads = 1, double reg = 0.0);

  // Adds scale * d(sum of per-triple losses)/d(everything) into `out` and
  // returns the unscaled loss sum. Friend lists are drawn with `friend_seed`.
  double accumulate(const LatentFactors& factors, const NasParameters& params,
                    std::uint64_t friend_seed, std::span<const TrainTriple> batch, double scale,
                    BatchGradients& out);

 private:
  const SocialGraph& graph_;
  AttentionMode mode_;
  std::size_t k_max_;
  std::size_t threads_;
  double reg_;
  std::vector<BatchGradients> scratch_;
};

// BPR-MF objective: softplus(-(u.v+ - u.v-)) + 0.5 reg (|u|^2 + |v+|^2 + |v-|^2)
// per triple. Same contract as NasObjective::accumulate.
double accumulate_bpr_mf(const LatentFactors& factors, double reg,
                         std::span<const TrainTriple> batch, double scale, BatchGradients& out);

struct EpochLog {
  std::size_t epoch = 0;  // 1-based, continuous across pretraining phases
  double mean_loss = 0.0;
  double val_recall = 0.0;
  double val_ndcg = 0.0;
  double seconds = 0.0;
};

struct TrainResult {
  ModelSnapshot best;  // highest validation NDCG
  ModelSnapshot last;
  std::vector<EpochLog> log;
  std::size_t best_epoch = 0;
  std::size_t skipped_users = 0;  // users with no unobserved item
};

struct TrainCallbacks {
  std::function<void(const EpochLog&)> on_epoch;
};

// A model the shared loop can drive.
class TrainableModel {
 public:
  virtual ~TrainableModel() = default;
  // Adds the scaled batch gradient to internal buffers; returns the loss sum.
  virtual double accumulate(std::span<const TrainTriple> batch, std::size_t epoch,
                            double scale) = 0;
  // Adam step from the buffered gradient, then clears it.
  virtual void update(double lr) = 0;
  virtual std::unique_ptr<Recommender> scorer() const = 0;
  virtual ModelSnapshot snapshot() const = 0;
};

class NasTrainable : public TrainableModel {
 public:
  NasTrainable(const TrainConfig& config, AttentionMode mode, const SocialGraph& graph,
               LatentFactors factors, NasParameters params);

  double accumulate(std::span<const TrainTriple> batch, std::size_t epoch, double scale) override;
  void update(double lr) override;
  std::unique_ptr<Recommender> scorer() const override;
  ModelSnapshot snapshot() const override;

  const LatentFactors& factors() const { return factors_; }
  const NasParameters& params() const { return params_; }
  const BatchGradients& gradients() const { return grads_; }

 private:
  TrainConfig config_;
  AttentionMode mode_;
  const SocialGraph& graph_;
  LatentFactors factors_;
  NasParameters params_;
  NasObjective objective_;
  BatchGradients grads_;
  AdamState param_adam_;
  AdamState user_adam_;
  AdamState item_adam_;
};

class BprMfTrainable : public TrainableModel {
 public:
  BprMfTrainable(const TrainConfig& config, LatentFactors factors);

  double accumulate(std::span<const TrainTriple> batch, std::size_t epoch, double scale) override;
  void update(double lr) override;
  std::unique_ptr<Recommender> scorer() const override;
  ModelSnapshot snapshot() const override;

  const LatentFactors& factors() const { return factors_; }

 private:
  TrainConfig config_;
  LatentFactors factors_;
  BatchGradients grads_;
  AdamState user_adam_;
  AdamState item_adam_;
};

// Shared mini-batch loop: fresh shuffled triples each epoch, batches of
// batch_size, gradients averaged over the batch, validation after each
// epoch. `first_epoch` offsets the logged epoch numbers. Throws
// TrainingError on a non-finite batch loss, naming the batch.
TrainResult run_training(TrainableModel& model, const TrainConfig& config,
                         const DatasetSplit& data, std::size_t epochs,
                         std::size_t first_epoch = 1, const TrainCallbacks& callbacks = {});

// Trains the social model with depth config.h from `factors`, starting from
// `initial` or Xavier parameters seeded from config.seed.
TrainResult train_nas(const TrainConfig& config, AttentionMode mode, const DatasetSplit& data,
                      const SocialGraph& graph, const LatentFactors& factors,
                      std::optional<NasParameters> initial = std::nullopt,
                      const TrainCallbacks& callbacks = {});

// Initial parameters of a depth-config.h model.
NasParameters initial_parameters(const TrainConfig& config, AttentionMode mode);

// Deep parameters whose non-depth-dependent blocks and first hidden layer come
// from `shallow`; added layers follow config.deepen_init.
NasParameters deepen_parameters(const NasParameters& shallow, const TrainConfig& config);

// Phase 1 trains with h = 1 for phase_one_epochs(); phase 2 continues at
// depth config.h from the phase-1 best snapshot. Same as train_nas when
// config.h == 1.
TrainResult pretrain_shallow_then_deepen(const TrainConfig& config, AttentionMode mode,
                                         const DatasetSplit& data, const SocialGraph& graph,
                                         const LatentFactors& factors,
                                         const TrainCallbacks& callbacks = {});

}  // namespace nasrec
