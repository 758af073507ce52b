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
#include <vector>

namespace nasrec {

// Gradient buffer for an embedding table where a batch touches few rows.
// Storage is dense; touched() lists rows in first-touch order.
class RowGradients {
 public:
  RowGradients() = default;
  RowGradients(std::size_t rows, std::size_t dim);

  std::size_t rows() const { return flags_.size(); }
  std::size_t dim() const { return dim_; }

  // Mutable row; marks it touched.
  std::span<double> row(std::uint32_t r);
  std::span<const double> get(std::uint32_t r) const {
    return {values_.data() + static_cast<std::size_t>(r) * dim_, dim_};
  }
  std::span<const std::uint32_t> touched() const { return touched_; }
  bool is_touched(std::uint32_t r) const { return flags_[r] != 0; }

  // Adds every touched row of `other` (same shape).
  void add(const RowGradients& other);
  // Zeroes touched rows and forgets them.
  void clear();

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace nasrec
