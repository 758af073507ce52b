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

#include "nasrec/common/rng.hpp"
#include "nasrec/nn/matrix.hpp"

namespace nasrec {

// Xavier-uniform bound sqrt(6 / (rows + cols)).
double xavier_bound(std::size_t rows, std::size_t cols);

// rows x cols matrix, entries iid U[-a, a] with a = xavier_bound(rows, cols).
DenseMatrix init_params(std::size_t rows, std::size_t cols, std::uint64_t seed);

void xavier_fill(std::span<double> out, std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace nasrec
