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

#include "nasrec/eval/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "nasrec/common/errors.hpp"
#include "nasrec/eval/evaluate.hpp"

namespace nasrec {

PairedTTest paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ContractViolation("paired_t_test: need two equal-length samples of size >= 2");
  }
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  PairedTTest out;
  out.degrees_of_freedom = diff.size() - 1;
  out.mean_difference = mean_of(diff);
  const double sd = sample_stddev(diff);
  if (sd == 0.0) {
    out.t_statistic = out.mean_difference == 0.0
                          ? 0.0
                          : std::copysign(std::numeric_limits<double>::infinity(),
                                          out.mean_difference);
    out.p_value = out.mean_difference == 0.0 ? 1.0 : 0.0;
    return out;
  }
  out.t_statistic = out.mean_difference / (sd / std::sqrt(static_cast<double>(diff.size())));
  const boost::math::students_t dist(static_cast<double>(out.degrees_of_freedom));
  out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(out.t_statistic)));
  return out;
}

}  // namespace nasrec
