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

#include "nasrec/nn/adam.hpp"

#include <cmath>
#include <string>

#include "nasrec/common/errors.hpp"

namespace nasrec {

AdamState::AdamState(std::size_t size, AdamConfig config)
    : config_(config), first_(size, 0.0), second_(size, 0.0) {}

void AdamState::apply(std::size_t offset, std::span<double> params,
                      std::span<const double> grads, double lr) {
  if (params.size() != grads.size() || offset + params.size() > first_.size()) {
    throw ContractViolation("adam: parameter/gradient/state shape mismatch");
  }
  if (step_ < 1) throw ContractViolation("adam: apply() before advance()");
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  double* m = first_.data() + offset;
  double* v = second_.data() + offset;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    m[i] = b1 * m[i] + (1.0 - b1) * g;
    v[i] = b2 * v[i] + (1.0 - b2) * g * g;
    const double m_hat = m[i] / correction1;
    const double v_hat = v[i] / correction2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + config_.epsilon);
  }
}

void require_finite(std::span<const double> grads, std::string_view block) {
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw TrainingError("non-finite gradient in block '" + std::string(block) + "' at index " +
                          std::to_string(i));
    }
  }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr, std::string_view block) {
  if (params.size() != state.size()) throw ContractViolation("adam: state size mismatch");
  require_finite(grads, block);
  state.advance();
  state.apply(0, params, grads, lr);
}

}  // namespace nasrec
