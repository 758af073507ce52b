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
#include <span>

namespace nasrec {

struct PairedTTest {
  double mean_difference = 0.0;
  double t_statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  // Two-sided.
  double p_value = 1.0;
};

// Paired t-test on per-run metrics a[i] vs b[i]. Requires equal sizes >= 2.
// Identical samples give t = 0, p = 1; a constant nonzero difference gives
// p = 0.
PairedTTest paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace nasrec
