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

#include "nasrec/train/row_gradients.hpp"

#include <algorithm>

#include "nasrec/common/errors.hpp"

namespace nasrec {

RowGradients::RowGradients(std::size_t rows, std::size_t dim)
    : dim_(dim), values_(rows * dim, 0.0), flags_(rows, 0) {}

std::span<double> RowGradients::row(std::uint32_t r) {
  if (r >= flags_.size()) throw ContractViolation("RowGradients: row out of range");
  if (!flags_[r]) {
    flags_[r] = 1;
    touched_.push_back(r);
  }
  return {values_.data() + static_cast<std::size_t>(r) * dim_, dim_};
}

void RowGradients::add(const RowGradients& other) {
  if (other.rows() != rows() || other.dim() != dim_) {
    throw ContractViolation("RowGradients::add: shape mismatch");
  }
  for (std::uint32_t r : other.touched()) {
    auto dst = row(r);
    const auto src = other.get(r);
    for (std::size_t j = 0; j < dim_; ++j) dst[j] += src[j];
  }
}

void RowGradients::clear() {
  for (std::uint32_t r : touched_) {
    std::fill_n(values_.begin() + static_cast<std::ptrdiff_t>(r * dim_), dim_, 0.0);
    flags_[r] = 0;
  }
  touched_.clear();
}

}  // namespace nasrec
