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

#include "nasrec/eval/evaluate.hpp"

#include <cmath>
#include <ostream>

#include "nasrec/common/errors.hpp"
#include "nasrec/common/parallel.hpp"
#include "nasrec/data/interactions.hpp"
#include "nasrec/eval/metrics.hpp"
#include "nasrec/nn/ops.hpp"

namespace nasrec {

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value() / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean_of(values);
  CompensatedSum s;
  for (double v : values) s.add((v - mu) * (v - mu));
  return std::sqrt(s.value() / static_cast<double>(values.size() - 1));
}

RunMetrics evaluate_run(const Recommender& model, const RelevanceLabels& labels,
                        const InteractionSet& train, std::size_t n, std::uint64_t seed,
                        std::size_t threads) {
  const std::size_t users = labels.num_users();
  if (users != model.num_users() || train.num_users() != users) {
    throw EvalError("evaluate: model has " + std::to_string(model.num_users()) +
                    " users, labels " + std::to_string(users) + ", train " +
                    std::to_string(train.num_users()));
  }
  if (train.num_items() != model.num_items()) {
    throw EvalError("evaluate: model has " + std::to_string(model.num_items()) +
                    " items but train has " + std::to_string(train.num_items()));
  }
  std::vector<double> recall(users, 0.0);
  std::vector<double> ndcg(users, 0.0);
  std::vector<std::uint8_t> evaluated(users, 0);

  parallel_for(users, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<double> scores(model.num_items());
    for (std::size_t u = begin; u < end; ++u) {
      const auto uid = static_cast<UserId>(u);
      const auto& relevant = labels.relevant[u];
      if (relevant.empty()) continue;
      model.score_items(uid, seed, scores);
      const auto candidates = candidate_items(model.num_items(), train.user_items(uid));
      const auto top = top_n_items(scores, candidates, n);
      recall[u] = recall_at_n(top, relevant, n);
      ndcg[u] = ndcg_at_n(relevance_bits(top, relevant, n), relevant.size(), n);
      evaluated[u] = 1;
    }
  });

  RunMetrics out;
  out.seed = seed;
  CompensatedSum r, g;
  for (std::size_t u = 0; u < users; ++u) {
    if (!evaluated[u]) {
      ++out.skipped_users;
      continue;
    }
    ++out.evaluated_users;
    r.add(recall[u]);
    g.add(ndcg[u]);
  }
  if (out.evaluated_users == 0) throw EvalError("evaluate: no user has a relevant item");
  out.recall = r.value() / static_cast<double>(out.evaluated_users);
  out.ndcg = g.value() / static_cast<double>(out.evaluated_users);
  return out;
}

EvalReport summarize_runs(std::size_t n, std::vector<RunMetrics> runs) {
  EvalReport report;
  report.n = n;
  report.runs = std::move(runs);
  std::vector<double> rs, ns;
  for (const auto& run : report.runs) {
    rs.push_back(run.recall);
    ns.push_back(run.ndcg);
  }
  report.recall_mean = mean_of(rs);
  report.recall_std = sample_stddev(rs);
  report.ndcg_mean = mean_of(ns);
  report.ndcg_std = sample_stddev(ns);
  return report;
}

EvalReport evaluate(const Recommender& model, const RelevanceLabels& labels,
                    const InteractionSet& train, std::size_t n,
                    std::span<const std::uint64_t> seeds, std::size_t threads) {
  if (seeds.empty()) throw ContractViolation("evaluate: runs must be >= 1");
  std::vector<RunMetrics> runs;
  runs.reserve(seeds.size());
  for (std::uint64_t s : seeds) runs.push_back(evaluate_run(model, labels, train, n, s, threads));
  return summarize_runs(n, std::move(runs));
}

void write_report_csv(std::ostream& out, const std::string& model, double train_frac,
                      const EvalReport& report) {
  const std::string n = std::to_string(report.n);
  const std::string frac = format_double(train_frac);
  out << "model,train_frac,run,seed,recall@" << n << ",ndcg@" << n << "\n";
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    out << model << ',' << frac << ',' << i << ',' << r.seed << ',' << format_double(r.recall)
        << ',' << format_double(r.ndcg) << "\n";
  }
  out << model << ',' << frac << ",mean,," << format_double(report.recall_mean) << ','
      << format_double(report.ndcg_mean) << "\n";
  out << model << ',' << frac << ",stddev,," << format_double(report.recall_std) << ','
      << format_double(report.ndcg_std) << "\n";
}

void write_report_json(std::ostream& out, const std::string& model, double train_frac,
                       const EvalReport& report) {
  out << "{\n  \"model\": \"" << model << "\",\n  \"train_frac\": " << format_double(train_frac)
      << ",\n  \"n\": " << report.n << ",\n  \"runs\": [";
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    out << (i ? ",\n" : "\n") << "    {\"run\": " << i << ", \"seed\": " << r.seed
        << ", \"recall\": " << format_double(r.recall) << ", \"ndcg\": " << format_double(r.ndcg)
        << ", \"evaluated_users\": " << r.evaluated_users
        << ", \"skipped_users\": " << r.skipped_users << "}";
  }
  out << "\n  ],\n  \"recall_mean\": " << format_double(report.recall_mean)
      << ",\n  \"recall_stddev\": " << format_double(report.recall_std)
      << ",\n  \"ndcg_mean\": " << format_double(report.ndcg_mean)
      << ",\n  \"ndcg_stddev\": " << format_double(report.ndcg_std) << "\n}\n";
}

}  // namespace nasrec
