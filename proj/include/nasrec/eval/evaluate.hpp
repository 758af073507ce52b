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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nasrec/data/interactions.hpp"
#include "nasrec/data/relevance.hpp"
#include "nasrec/model/recommender.hpp"

namespace nasrec {

struct RunMetrics {
  std::uint64_t seed = 0;
  double recall = 0.0;
  double ndcg = 0.0;
  std::size_t evaluated_users = 0;
  // Users with no relevant labeled item; excluded from the averages.
  std::size_t skipped_users = 0;
};

struct EvalReport {
  std::size_t n = 10;
  std::vector<RunMetrics> runs;
  double recall_mean = 0.0;
  double recall_std = 0.0;
  double ndcg_mean = 0.0;
  double ndcg_std = 0.0;
};

// Sample standard deviation; 0 for fewer than two values.
double sample_stddev(std::span<const double> values);
double mean_of(std::span<const double> values);

// Full-ranking evaluation of one run: candidates are all items minus the
// user's `train` positives. Per-user results are summed in user order, so the
// outcome does not depend on `threads`. Throws EvalError when no user has a
// relevant item.
RunMetrics evaluate_run(const Recommender& model, const RelevanceLabels& labels,
                        const InteractionSet& train, std::size_t n, std::uint64_t seed,
                        std::size_t threads = 1);

// One run per seed, then mean and sample stddev across runs.
EvalReport evaluate(const Recommender& model, const RelevanceLabels& labels,
                    const InteractionSet& train, std::size_t n,
                    std::span<const std::uint64_t> seeds, std::size_t threads = 1);

EvalReport summarize_runs(std::size_t n, std::vector<RunMetrics> runs);

// CSV: model,train_frac,run,seed,recall@N,ndcg@N rows, then "mean" and
// "stddev" summary rows.
void write_report_csv(std::ostream& out, const std::string& model, double train_frac,
                      const EvalReport& report);
void write_report_json(std::ostream& out, const std::string& model, double train_frac,
                       const EvalReport& report);

}  // namespace nasrec
