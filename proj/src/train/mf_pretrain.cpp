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

#include "nasrec/train/mf_pretrain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "nasrec/common/errors.hpp"
#include "nasrec/common/rng.hpp"
#include "nasrec/nn/ops.hpp"

namespace nasrec {
namespace {

constexpr std::uint64_t kInitStream = 0x4d46'0001;
constexpr std::uint64_t kOrderStream = 0x4d46'0002;

}  // namespace

double train_rmse(const InteractionSet& train, const LatentFactors& factors) {
  if (train.empty()) return 0.0;
  CompensatedSum sq;
  for (const auto& t : train.triples()) {
    const double e = t.rating - dot(factors.users.row(t.user), factors.items.row(t.item));
    sq.add(e * e);
  }
  return std::sqrt(sq.value() / static_cast<double>(train.size()));
}

MfResult mf_pretrain(const InteractionSet& train, std::size_t d, std::size_t epochs, double lr,
                     double reg, std::uint64_t seed) {
  if (train.empty()) throw ContractViolation("mf_pretrain: empty training set");
  if (d == 0) throw ContractViolation("mf_pretrain: d must be >= 1");

  CompensatedSum total;
  for (const auto& t : train.triples()) total.add(t.rating);
  const double mean = total.value() / static_cast<double>(train.size());
  const double scale = std::sqrt(std::fabs(mean) / static_cast<double>(d));

  MfResult out;
  out.factors.users = DenseMatrix(train.num_users(), d);
  out.factors.items = DenseMatrix(train.num_items(), d);
  Rng init = make_rng(seed, {kInitStream});
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  for (double& x : out.factors.users.flat()) x = scale * unit(init);
  for (double& x : out.factors.items.flat()) x = scale * unit(init);

  const double initial = train_rmse(train, out.factors);
  out.rmse.push_back(initial);

  const auto triples = train.triples();
  std::vector<std::size_t> order(triples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Vector u_old(d);
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    Rng rng = make_rng(seed, {kOrderStream, epoch});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      const auto& t = triples[idx];
      auto u = out.factors.users.row(t.user);
      auto v = out.factors.items.row(t.item);
      const double e = t.rating - dot(u, v);
      std::copy(u.begin(), u.end(), u_old.begin());
      for (std::size_t j = 0; j < d; ++j) {
        u[j] += lr * (e * v[j] - reg * u[j]);
        v[j] += lr * (e * u_old[j] - reg * v[j]);
      }
    }
    const double rmse = train_rmse(train, out.factors);
    out.rmse.push_back(rmse);
    if (!std::isfinite(rmse) || rmse > 10.0 * std::max(initial, 1e-12)) {
      std::ostringstream msg;
      msg << "MF pretraining diverged at epoch " << epoch + 1 << " (train RMSE " << rmse
          << ", initial " << initial << "); use a smaller mf_lr";
      throw TrainingError(msg.str());
    }
  }
  return out;
}

}  // namespace nasrec
