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

#include "nasrec/nn/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nasrec/simd/kernels.hpp"

namespace nasrec {

Vector relu(std::span<const double> x) {
  Vector out(x.begin(), x.end());
  relu_inplace(out);
  return out;
}

void relu_inplace(std::span<double> x) {
  for (double& v : x) v = v > 0.0 ? v : 0.0;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

Vector softmax(std::span<const double> scores) {
  if (scores.empty()) throw ContractViolation("softmax: empty input");
  const double mx = *std::max_element(scores.begin(), scores.end());
  Vector out(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scores[i] - mx);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractViolation("dot: length " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  return simd::kernels().dot(a.data(), b.data(), a.size());
}

void affine_into(ConstMatrixView w, std::span<const double> x, std::span<const double> b,
                 std::span<double> out) {
  if (w.cols() != x.size() || w.rows() != b.size() || out.size() != w.rows()) {
    throw ContractViolation("affine: W is " + std::to_string(w.rows()) + "x" +
                            std::to_string(w.cols()) + ", x has " + std::to_string(x.size()) +
                            ", b has " + std::to_string(b.size()));
  }
  simd::kernels().gemv(w.data(), w.rows(), w.cols(), x.data(), out.data());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
}

Vector affine(ConstMatrixView w, std::span<const double> x, std::span<const double> b) {
  Vector out(w.rows());
  affine_into(w, x, b, out);
  return out;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace nasrec
