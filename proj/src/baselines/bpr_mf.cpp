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

#include "nasrec/baselines/bpr_mf.hpp"

#include <random>

#include "nasrec/common/errors.hpp"
#include "nasrec/common/rng.hpp"

namespace nasrec {
namespace {

constexpr std::uint64_t kBprInitStream = 0x4250'0001;

}  // namespace

LatentFactors bpr_mf_initial_factors(std::size_t num_users, std::size_t num_items,
                                     std::size_t d, std::uint64_t seed) {
  LatentFactors f{DenseMatrix(num_users, d), DenseMatrix(num_items, d)};
  Rng rng = make_rng(seed, {kBprInitStream});
  std::normal_distribution<double> normal(0.0, 0.1);
  for (double& x : f.users.flat()) x = normal(rng);
  for (double& x : f.items.flat()) x = normal(rng);
  return f;
}

TrainResult train_bpr_mf(const TrainConfig& config, const DatasetSplit& data,
                         std::optional<LatentFactors> initial, const TrainCallbacks& callbacks) {
  config.validate();
  LatentFactors factors =
      initial ? std::move(*initial)
              : bpr_mf_initial_factors(data.train.num_users(), data.train.num_items(), config.d,
                                       config.seed);
  if (factors.users.rows() != data.train.num_users() ||
      factors.items.rows() != data.train.num_items() || factors.dim() != config.d) {
    throw ContractViolation("train_bpr_mf: factor shapes do not match the data");
  }
  BprMfTrainable model(config, std::move(factors));
  return run_training(model, config, data, config.epochs, 1, callbacks);
}

}  // namespace nasrec
