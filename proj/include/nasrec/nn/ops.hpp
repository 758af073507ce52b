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

#include <span>

#include "nasrec/nn/matrix.hpp"

namespace nasrec {

Vector relu(std::span<const double> x);
void relu_inplace(std::span<double> x);

// Branch form: never evaluates exp of a large positive argument.
double sigmoid(double x);

// log(1 + exp(x)) without overflow.
double softplus(double x);

// Max-subtracted softmax. Throws ContractViolation on empty input.
Vector softmax(std::span<const double> scores);

double dot(std::span<const double> a, std::span<const double> b);

// W x + b. W must be b.size() x x.size().
Vector affine(ConstMatrixView w, std::span<const double> x, std::span<const double> b);
// out = W x + b without allocating.
void affine_into(ConstMatrixView w, std::span<const double> x, std::span<const double> b,
                 std::span<double> out);

// Neumaier-compensated sum; order-stable aggregation for metrics.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace nasrec
