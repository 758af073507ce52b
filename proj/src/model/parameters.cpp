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

#include "nasrec/model/parameters.hpp"

#include <algorithm>
#include <cmath>

#include "nasrec/common/errors.hpp"
#include "nasrec/nn/init.hpp"

namespace nasrec {

std::string_view attention_mode_name(AttentionMode mode) {
  switch (mode) {
    case AttentionMode::kSoftmax:
      return "softmax";
    case AttentionMode::kUniformSum:
      return "uniform_sum";
    case AttentionMode::kUniformMean:
      return "uniform_mean";
  }
  return "softmax";
}

AttentionMode parse_attention_mode(std::string_view name) {
  if (name == "softmax") return AttentionMode::kSoftmax;
  if (name == "uniform_sum") return AttentionMode::kUniformSum;
  if (name == "uniform_mean") return AttentionMode::kUniformMean;
  throw ConfigError("unknown attention mode '" + std::string(name) + "'");
}

std::size_t NasParameters::add_block(std::string name, std::size_t rows, std::size_t cols) {
  const std::size_t offset = blocks_.empty() ? 0 : blocks_.back().offset + blocks_.back().size();
  blocks_.push_back({std::move(name), rows, cols, offset});
  return blocks_.size() - 1;
}

NasParameters::NasParameters(std::size_t dim, std::size_t depth, bool with_attention)
    : dim_(dim), depth_(depth), attention_(with_attention) {
  if (dim == 0 || depth == 0) {
    throw ContractViolation("NasParameters: dimension and depth must be >= 1");
  }
  const std::size_t d = dim;
  layout_.effects_user = add_block("effects.embed.user", d, d);
  layout_.effects_friend = add_block("effects.embed.friend", d, d);
  layout_.effects_bias = add_block("effects.embed.bias", d, 1);
  for (std::size_t q = 1; q <= depth; ++q) {
    layout_.effects_hidden_weight.push_back(
        add_block("effects.hidden." + std::to_string(q) + ".weight", d, d));
    layout_.effects_hidden_bias.push_back(
        add_block("effects.hidden." + std::to_string(q) + ".bias", d, 1));
  }
  layout_.effects_out_weight = add_block("effects.out.weight", d, d);
  layout_.effects_out_bias = add_block("effects.out.bias", d, 1);
  if (with_attention) {
    layout_.attention_user = add_block("attention.user", d, d);
    layout_.attention_effect = add_block("attention.effect", d, d);
    layout_.attention_bias = add_block("attention.bias", d, 1);
  }
  layout_.extraction_user = add_block("extraction.embed.user", d, d);
  layout_.extraction_effect = add_block("extraction.embed.effect", d, d);
  layout_.extraction_bias = add_block("extraction.embed.bias", d, 1);
  for (std::size_t q = 1; q <= depth; ++q) {
    layout_.extraction_hidden_weight.push_back(
        add_block("extraction.hidden." + std::to_string(q) + ".weight", d, d));
    layout_.extraction_hidden_bias.push_back(
        add_block("extraction.hidden." + std::to_string(q) + ".bias", d, 1));
  }
  values_.assign(blocks_.back().offset + blocks_.back().size(), 0.0);
}

NasParameters NasParameters::xavier(std::size_t dim, std::size_t depth, bool with_attention,
                                    std::uint64_t seed) {
  NasParameters p(dim, depth, with_attention);
  Rng rng(seed);
  for (std::size_t i = 0; i < p.blocks_.size(); ++i) {
    const auto& b = p.blocks_[i];
    if (b.cols == 1) continue;
    xavier_fill(p.vec(i), b.rows, b.cols, rng);
  }
  return p;
}

const ParameterBlock* NasParameters::find(std::string_view name) const {
  for (const auto& b : blocks_) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

void NasParameters::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

bool NasParameters::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

void copy_shared_blocks(const NasParameters& shallow, NasParameters& deep) {
  if (shallow.dim() != deep.dim()) throw ContractViolation("copy_shared_blocks: dimension mismatch");
  for (const auto& src : shallow.blocks()) {
    const ParameterBlock* dst = deep.find(src.name);
    if (dst == nullptr) continue;
    if (dst->rows != src.rows || dst->cols != src.cols) {
      throw ContractViolation("copy_shared_blocks: shape mismatch for " + src.name);
    }
    const auto from = shallow.values().subspan(src.offset, src.size());
    std::copy(from.begin(), from.end(), deep.values().begin() + static_cast<long>(dst->offset));
  }
}

}  // namespace nasrec
