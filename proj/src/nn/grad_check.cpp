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

#include "nasrec/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nasrec/common/errors.hpp"

namespace nasrec {

double relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

GradCheckResult grad_check(const ProbeFn& loss, std::span<const double> params,
                           std::span<const double> analytic, double epsilon,
                           double kink_margin) {
  if (params.size() != analytic.size()) {
    throw ContractViolation("grad_check: gradient length does not match parameters");
  }
  GradCheckResult result;
  std::vector<double> theta(params.begin(), params.end());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double saved = theta[j];
    theta[j] = saved + epsilon;
    const LossProbe plus = loss(theta);
    theta[j] = saved - epsilon;
    const LossProbe minus = loss(theta);
    theta[j] = saved;
    if (plus.kink_margin < kink_margin || minus.kink_margin < kink_margin) {
      ++result.skipped;
      continue;
    }
    const double numeric = (plus.loss - minus.loss) / (2.0 * epsilon);
    const double err = relative_error(analytic[j], numeric);
    ++result.checked;
    if (err > result.max_relative_error) {
      result.max_relative_error = err;
      result.worst_index = j;
      result.worst_analytic = analytic[j];
      result.worst_numeric = numeric;
    }
  }
  return result;
}

GradCheckResult grad_check(const LossFn& loss, std::span<const double> params,
                           std::span<const double> analytic, double epsilon) {
  return grad_check([&](std::span<const double> p) { return LossProbe{loss(p)}; }, params,
                    analytic, epsilon, 0.0);
}

}  // namespace nasrec
