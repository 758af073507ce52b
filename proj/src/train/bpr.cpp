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

#include "nasrec/train/bpr.hpp"

#include "nasrec/nn/ops.hpp"

namespace nasrec {

double bpr_loss(double score_pos, double score_neg) { return softplus(score_neg - score_pos); }

double bpr_margin_gradient(double score_pos, double score_neg) {
  return -sigmoid(score_neg - score_pos);
}

}  // namespace nasrec
