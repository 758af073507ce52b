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


#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "nasrec/cli/cli.hpp"
#include "nasrec/cli/run_config.hpp"
#include "nasrec/common/errors.hpp"
#include "nasrec/eval/metrics.hpp"
#include "nasrec/model/snapshot.hpp"
#include "temp_dir.hpp"

namespace nasrec::cli {
namespace {

using testing_support::slurp;
using testing_support::TempDir;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "nasrec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST(RunConfig, DefaultsResolve) {
  const RunConfig c = parse_run_config("{}");
  EXPECT_EQ(c.model, ModelKind::kNas);
  EXPECT_EQ(c.eval_n, 10u);
  EXPECT_EQ(c.eval_runs, 5u);
  EXPECT_EQ(c.relevance_mean, "test");
  EXPECT_EQ(c.train, TrainConfig{});
}

TEST(RunConfig, Presets) {
  const RunConfig e = parse_run_config(R"({"preset": "epinions"})");
  EXPECT_EQ(e.train.d, 50u);
  EXPECT_EQ(e.train.h, 3u);
  EXPECT_EQ(e.train.neg_per_pos, 9u);
  const RunConfig f = parse_run_config(R"({"preset": "flixster"})");
  EXPECT_EQ(f.train.d, 80u);
  EXPECT_EQ(f.train.h, 4u);
  EXPECT_EQ(f.train.neg_per_pos, 6u);
  // Explicit keys win over the preset.
  EXPECT_EQ(parse_run_config(R"({"d": 12, "preset": "flixster"})").train.d, 12u);
  EXPECT_THROW(parse_run_config(R"({"preset": "movielens"})"), ConfigError);
}

TEST(RunConfig, ResolvedJsonRoundTrips) {
  RunConfig c = parse_run_config(
      R"({"preset": "epinions", "model": "nas_star", "lr": 0.002, "nas_reg": 0.05,
          "deepen_init": "identity", "threads": 2, "relevance_mean": "all"})");
  EXPECT_EQ(parse_run_config(run_config_json(c)), c);
  c.model = ModelKind::kBprMf;
  c.train.finetune_embeddings = false;
  EXPECT_EQ(parse_run_config(run_config_json(c)), c);
}

TEST(RunConfig, EveryProblemIsListed) {
  try {
    parse_run_config(R"({"h": 0, "colour": "red", "lr": "fast", "eval_n": 0})");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("colour"), std::string::npos) << what;
    EXPECT_NE(what.find("lr"), std::string::npos) << what;
    EXPECT_NE(what.find("h must"), std::string::npos) << what;
    EXPECT_NE(what.find("eval_n"), std::string::npos) << what;
  }
  EXPECT_THROW(parse_run_config("[]"), ConfigError);
  EXPECT_THROW(parse_run_config("{"), ConfigError);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"frobnicate"}).code, kUsage);
  EXPECT_EQ(call({"prepare", "--ratings", "x"}).code, kUsage);
  EXPECT_EQ(call({"--help"}).code, kOk);
}

TEST(Cli, PrepareMissingFileNamesThePath) {
  TempDir dir;
  const auto graph = dir.write("graph.tsv", "a\tb\n");
  const auto missing = (dir / "nope.tsv").string();
  const Outcome o =
      call({"prepare", "--ratings", missing, "--graph", graph.string(), "--out", (dir / "p").string()});
  EXPECT_EQ(o.code, kDataFailure);
  EXPECT_NE(o.err.find(missing), std::string::npos) << o.err;
}

// 13000 users each rating one distinct item out of 13000: density 1/13000.
TEST(Cli, PrepareReportsDensity) {
  TempDir dir;
  std::ostringstream ratings, graph;
  for (int i = 0; i < 13000; ++i) {
    ratings << "u" << i << "\ti" << i << "\t" << 1 + i % 5 << "\n";
    graph << "u" << i << "\tu" << (i + 1) % 13000 << "\n";
  }
  const auto r = dir.write("ratings.tsv", ratings.str());
  const auto g = dir.write("graph.tsv", graph.str());
  const Outcome o =
      call({"prepare", "--ratings", r.string(), "--graph", g.string(), "--out", (dir / "p").string()});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_NE(o.out.find("density: 0.0077%"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("users: 13000"), std::string::npos) << o.out;
}

// A hand-made dataset over 30 items: users a..e form a ring, f rates items
// but has no friends.
class Pipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    std::ostringstream ratings;
    const char* users[] = {"a", "b", "c", "d", "e", "f"};
    for (int u = 0; u < 6; ++u) {
      for (int i = 0; i < 30; ++i) {
        if ((u + i) % 2 == 0 || i % 5 == u) {
          ratings << users[u] << "\titem" << i << "\t" << 1 + (u * 7 + i * 3) % 5 << "\n";
        }
      }
    }
    ratings_ = dir_.write("ratings.tsv", ratings.str());
    graph_ = dir_.write("graph.tsv", "a\tb\nb\tc\nc\td\nd\te\ne\ta\n");
    data_ = (dir_ / "prepared").string();
    ASSERT_EQ(call({"prepare", "--ratings", ratings_.string(), "--graph", graph_.string(), "--out",
                    data_, "--train-frac", "0.6", "--val-frac", "0.2", "--seed", "3"})
                  .code,
              kOk);
  }

  std::string write_config(const std::string& model, const std::string& out) {
    const std::string text = R"({"model": ")" + model + R"(", "data_dir": ")" + data_ +
                             R"(", "output_dir": ")" + out +
                             R"(", "d": 3, "h": 2, "k_max": 4, "neg_per_pos": 2,
                             "batch_size": 8, "lr": 0.01, "epochs": 3, "mf_epochs": 5})";
    return dir_.write(model + ".json", text).string();
  }

  std::string train(const std::string& model) {
    const std::string out = (dir_ / ("run_" + model)).string();
    const Outcome o = call({"train", "--config", write_config(model, out)});
    EXPECT_EQ(o.code, kOk) << o.err;
    return out;
  }

  TempDir dir_;
  std::filesystem::path ratings_, graph_;
  std::string data_;
};

TEST_F(Pipeline, PrepareIsDeterministic) {
  const std::string again = (dir_ / "again").string();
  ASSERT_EQ(call({"prepare", "--ratings", ratings_.string(), "--graph", graph_.string(), "--out",
                  again, "--train-frac", "0.6", "--val-frac", "0.2", "--seed", "3"})
                .code,
            kOk);
  for (const char* f : {"train.tsv", "val.tsv", "test.tsv", "graph.tsv", "users.map", "items.map"}) {
    EXPECT_EQ(slurp(std::filesystem::path(data_) / f), slurp(std::filesystem::path(again) / f)) << f;
  }
}

TEST_F(Pipeline, TrainWritesArtifactsAndResolvedConfig) {
  const std::string run = train("nas");
  for (const char* f : {"model.snap", "train_log.csv", "train_log.json", "mf_log.csv",
                        "resolved_config.json"}) {
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(run) / f)) << f;
  }
  const RunConfig resolved = load_run_config((std::filesystem::path(run) / "resolved_config.json").string());
  EXPECT_EQ(resolved.train.d, 3u);
  // h = 2: three shallow epochs, then three at full depth.
  EXPECT_EQ(count_lines(slurp(std::filesystem::path(run) / "train_log.csv")), 1u + 6u);
}

TEST_F(Pipeline, ZeroDepthConfigIsRejected) {
  const std::string cfg = dir_.write("bad.json", R"({"h": 0, "data_dir": "x"})").string();
  const Outcome o = call({"train", "--config", cfg});
  EXPECT_EQ(o.code, kUsage);
  EXPECT_NE(o.err.find("h must"), std::string::npos) << o.err;
}

TEST_F(Pipeline, EvalDeterministicModelHasZeroStddev) {
  for (const std::string model : {"nas", "nas_star", "bpr_mf"}) {
    const std::string run = train(model);
    const Outcome o = call({"eval", "--snapshot", run + "/model.snap", "--data", data_});
    ASSERT_EQ(o.code, kOk) << o.err;
    const std::string csv = slurp(std::filesystem::path(run) / "report.csv");
    EXPECT_NE(csv.find("recall@10,ndcg@10"), std::string::npos);
    EXPECT_NE(csv.find(model + ",0.6,stddev,,0,0"), std::string::npos) << csv;
    EXPECT_EQ(count_lines(csv), 1u + 5u + 2u);
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(run) / "report.json"));
  }
}

TEST_F(Pipeline, CorruptSnapshotFailsWithChecksum) {
  const std::string run = train("nas");
  const auto snap = std::filesystem::path(run) / "model.snap";
  std::string bytes = slurp(snap);
  bytes[bytes.size() / 2] ^= 0x5a;
  dir_.write("bad.snap", bytes);
  const Outcome o = call({"eval", "--snapshot", (dir_ / "bad.snap").string(), "--data", data_});
  EXPECT_EQ(o.code, kDataFailure);
  EXPECT_NE(o.err.find("checksum"), std::string::npos) << o.err;
  EXPECT_EQ(call({"eval", "--snapshot", (dir_ / "none.snap").string(), "--data", data_}).code,
            kDataFailure);
}

std::vector<std::string> recommended_items(const std::string& out) {
  std::istringstream in(out);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> items;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string rank, item;
    row >> rank >> item;
    items.push_back(item);
  }
  return items;
}

TEST_F(Pipeline, RecommendMatchesRankItems) {
  const std::string run = train("nas");
  const ModelSnapshot snap = load_snapshot(run + "/model.snap");
  const PreparedData data = load_prepared(data_);
  for (const std::string user : {"a", "c", "f"}) {
    const Outcome o =
        call({"recommend", "--snapshot", run + "/model.snap", "--data", data_, "--user", user, "--n", "3"});
    ASSERT_EQ(o.code, kOk) << o.err;
    const UserId uid = *data.users.find(user);
    std::vector<double> scores(snap.num_items());
    make_recommender(snap, data.graph)->score_items(uid, 1, scores);
    const auto ranked =
        rank_items(scores, candidate_items(snap.num_items(), data.split.train.user_items(uid)));
    const auto items = recommended_items(o.out);
    ASSERT_EQ(items.size(), std::min<std::size_t>(3, ranked.size()));
    for (std::size_t r = 0; r < items.size(); ++r) EXPECT_EQ(items[r], data.items.original(ranked[r]));
  }
}

TEST_F(Pipeline, RecommendReturnsAllCandidatesWhenNIsLarge) {
  const std::string run = train("nas");
  const PreparedData data = load_prepared(data_);
  const UserId f = *data.users.find("f");
  EXPECT_TRUE(data.graph.neighbors(f).empty());
  const Outcome o =
      call({"recommend", "--snapshot", run + "/model.snap", "--data", data_, "--user", "f", "--n", "100"});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(recommended_items(o.out).size(),
            data.split.train.num_items() - data.split.train.user_items(f).size());
}

TEST_F(Pipeline, RecommendUnknownUser) {
  const std::string run = train("bpr_mf");
  const Outcome o =
      call({"recommend", "--snapshot", run + "/model.snap", "--data", data_, "--user", "zed"});
  EXPECT_EQ(o.code, kDataFailure);
  EXPECT_NE(o.err.find("zed"), std::string::npos);
}

TEST_F(Pipeline, SweepWritesOneRowPerCell) {
  const std::string out = (dir_ / "sweep").string();
  const std::string cfg = write_config("nas", out);
  const Outcome o = call({"sweep", "--config", cfg, "--d", "2,3", "--h", "1", "--neg", "1,2"});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(count_lines(slurp(std::filesystem::path(out) / "sweep.csv")), 1u + 4u);
  EXPECT_EQ(call({"sweep", "--config", cfg, "--d", "2,x"}).code, kUsage);
}

TEST_F(Pipeline, SingleCellSweepEqualsTrainThenValidate) {
  const std::string out = (dir_ / "one").string();
  const Outcome o = call({"sweep", "--config", write_config("bpr_mf", out)});
  ASSERT_EQ(o.code, kOk) << o.err;
  const std::string csv = slurp(std::filesystem::path(out) / "sweep.csv");
  EXPECT_EQ(count_lines(csv), 2u);
  EXPECT_NE(csv.find(",ok,"), std::string::npos) << csv;
}

TEST(Cli, SynthWritesDatasetAndHonoursFlags) {
  TempDir dir;
  const std::string out = (dir / "syn").string();
  const Outcome o = call({"synth", "--out", out, "--n", "30", "--m", "40", "--ratings-per-user", "6"});
  ASSERT_EQ(o.code, kOk) << o.err;
  const std::string spec = slurp(std::filesystem::path(out) / "spec.json");
  EXPECT_NE(spec.find("\"n\": 30"), std::string::npos) << spec;
  EXPECT_EQ(count_lines(slurp(std::filesystem::path(out) / "ratings.tsv")), 30u * 6u);
  const Outcome again = call({"synth", "--out", (dir / "syn2").string(), "--spec",
                              out + "/spec.json"});
  ASSERT_EQ(again.code, kOk);
  EXPECT_EQ(slurp(std::filesystem::path(out) / "ratings.tsv"), slurp(dir / "syn2" / "ratings.tsv"));
  EXPECT_EQ(call({"synth", "--out", out, "--alpha", "2"}).code, kUsage);
}

}  // namespace
}  // namespace nasrec::cli
