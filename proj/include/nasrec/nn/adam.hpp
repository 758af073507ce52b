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
#include <string_view>
#include <vector>

namespace nasrec {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Moment buffers for a flat parameter vector. Sparse users (embedding rows)
// call advance() once per optimizer step and then apply() for each touched
// segment, so untouched rows keep stale moments, as in lazy Adam.
class AdamState {
 public:
  AdamState() = default;
  explicit AdamState(std::size_t size, AdamConfig config = {});

  std::size_t size() const { return first_.size(); }
  std::int64_t step() const { return step_; }
  const AdamConfig& config() const { return config_; }
  std::span<const double> first_moment() const { return first_; }
  std::span<const double> second_moment() const { return second_; }

  void advance() { ++step_; }

  // Updates params[offset..offset+n) in place with the current step's bias
  // correction. Requires step() >= 1.
  void apply(std::size_t offset, std::span<double> params, std::span<const double> grads,
             double lr);

 private:
  AdamConfig config_;
  std::vector<double> first_;
  std::vector<double> second_;
  std::int64_t step_ = 0;
};

// One dense Adam step: checks the gradient, advances t, updates all params.
// Throws TrainingError naming `block` on a non-finite gradient entry.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr, std::string_view block = "parameters");

// Throws TrainingError if any entry is NaN or infinite.
void require_finite(std::span<const double> grads, std::string_view block);

}  // namespace nasrec
