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

#include "nasrec/nn/init.hpp"

#include <cmath>

#include "nasrec/common/errors.hpp"

namespace nasrec {

double xavier_bound(std::size_t rows, std::size_t cols) {
  return std::sqrt(6.0 / static_cast<double>(rows + cols));
}

void xavier_fill(std::span<double> out, std::size_t rows, std::size_t cols, Rng& rng) {
  const double a = xavier_bound(rows, cols);
  std::uniform_real_distribution<double> dist(-a, a);
  for (double& x : out) x = dist(rng);
}

DenseMatrix init_params(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw ContractViolation("init_params: dimensions must be positive");
  DenseMatrix m(rows, cols);
  Rng rng(seed);
  xavier_fill(m.flat(), rows, cols, rng);
  return m;
}

}  // namespace nasrec
