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
#include <functional>
#include <limits>
#include <span>

namespace nasrec {

// Loss evaluation plus the smallest |pre-activation| of any ReLU touched on
// the way (infinity for smooth losses).
struct LossProbe {
  double loss = 0.0;
  double kink_margin = std::numeric_limits<double>::infinity();
};

using LossFn = std::function<double(std::span<const double>)>;
using ProbeFn = std::function<LossProbe(std::span<const double>)>;

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t checked = 0;
  // Coordinates whose +/- epsilon evaluation came within the kink margin of a
  // ReLU boundary.
  std::size_t skipped = 0;
};

// |a - n| / max(|a|, |n|, 1e-8)
double relative_error(double analytic, double numeric);

// Central differences (f(x+e) - f(x-e)) / 2e per coordinate against `analytic`.
GradCheckResult grad_check(const ProbeFn& loss, std::span<const double> params,
                           std::span<const double> analytic, double epsilon = 1e-5,
                           double kink_margin = 1e-3);

GradCheckResult grad_check(const LossFn& loss, std::span<const double> params,
                           std::span<const double> analytic, double epsilon = 1e-5);

}  // namespace nasrec
