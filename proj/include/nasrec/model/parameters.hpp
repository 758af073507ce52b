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
#include <string>
#include <string_view>
#include <vector>

#include "nasrec/nn/matrix.hpp"

namespace nasrec {

// How friend effects are weighted before aggregation.
//   kSoftmax      learned attention (NAS)
//   kUniformSum   gamma = 1 for every friend (NAS*)
//   kUniformMean  gamma = 1/k, sensitivity variant of NAS*
enum class AttentionMode { kSoftmax, kUniformSum, kUniformMean };

std::string_view attention_mode_name(AttentionMode mode);
AttentionMode parse_attention_mode(std::string_view name);

struct ParameterBlock {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;  // 1 for bias vectors
  std::size_t offset = 0;

  std::size_t size() const { return rows * cols; }
};

// Every weight and bias of the effects, attention and extraction networks,
// stored contiguously so optimizers and checkers can treat them as one
// vector. The same class doubles as the gradient buffer.
class NasParameters {
 public:
  // Indices into blocks(). Hidden layers are 0-based here (layer q=1 is [0]).
  struct Layout {
    std::size_t effects_user = 0;    // W^e_u0
    std::size_t effects_friend = 0;  // W^e_p0
    std::size_t effects_bias = 0;    // b^e_0
    std::vector<std::size_t> effects_hidden_weight;
    std::vector<std::size_t> effects_hidden_bias;
    std::size_t effects_out_weight = 0;  // shared W^e_f
    std::size_t effects_out_bias = 0;
    std::size_t attention_user = 0;    // W^psi_1
    std::size_t attention_effect = 0;  // W^psi_2
    std::size_t attention_bias = 0;
    std::size_t extraction_user = 0;    // W^zeta_u0
    std::size_t extraction_effect = 0;  // W^zeta_f0
    std::size_t extraction_bias = 0;
    std::vector<std::size_t> extraction_hidden_weight;
    std::vector<std::size_t> extraction_hidden_bias;
  };

  NasParameters() = default;
  // All zeros. Throws ContractViolation unless dim >= 1 and depth >= 1.
  NasParameters(std::size_t dim, std::size_t depth, bool with_attention);

  // Weights Xavier-uniform, biases zero.
  static NasParameters xavier(std::size_t dim, std::size_t depth, bool with_attention,
                              std::uint64_t seed);
  NasParameters zeros_like() const { return NasParameters(dim_, depth_, attention_); }

  std::size_t dim() const { return dim_; }
  std::size_t depth() const { return depth_; }
  bool has_attention() const { return attention_; }
  const Layout& layout() const { return layout_; }
  std::span<const ParameterBlock> blocks() const { return blocks_; }
  const ParameterBlock* find(std::string_view name) const;
  std::size_t size() const { return values_.size(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  MatrixView matrix(std::size_t block) {
    const auto& b = blocks_[block];
    return {values_.data() + b.offset, b.rows, b.cols};
  }
  ConstMatrixView matrix(std::size_t block) const {
    const auto& b = blocks_[block];
    return {values_.data() + b.offset, b.rows, b.cols};
  }
  std::span<double> vec(std::size_t block) {
    const auto& b = blocks_[block];
    return {values_.data() + b.offset, b.size()};
  }
  std::span<const double> vec(std::size_t block) const {
    const auto& b = blocks_[block];
    return {values_.data() + b.offset, b.size()};
  }

  void set_zero();
  bool all_finite() const;

  friend bool operator==(const NasParameters& a, const NasParameters& b) {
    return a.dim_ == b.dim_ && a.depth_ == b.depth_ && a.attention_ == b.attention_ &&
           a.values_ == b.values_;
  }

 private:
  std::size_t add_block(std::string name, std::size_t rows, std::size_t cols);

  std::size_t dim_ = 0;
  std::size_t depth_ = 0;
  bool attention_ = false;
  Layout layout_;
  std::vector<ParameterBlock> blocks_;
  std::vector<double> values_;
};

// Copies every block of `shallow` whose name also exists in `deep` (shape
// must agree). Hidden layers beyond `shallow.depth()` are left untouched.
void copy_shared_blocks(const NasParameters& shallow, NasParameters& deep);

}  // namespace nasrec
