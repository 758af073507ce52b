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

#include "nasrec/cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nasrec/baselines/bpr_mf.hpp"
#include "nasrec/baselines/nas_star.hpp"
#include "nasrec/cli/run_config.hpp"
#include "nasrec/common/errors.hpp"
#include "nasrec/data/relevance.hpp"
#include "nasrec/eval/evaluate.hpp"
#include "nasrec/eval/metrics.hpp"
#include "nasrec/model/snapshot.hpp"
#include "nasrec/synth/synthetic.hpp"
#include "nasrec/train/mf_pretrain.hpp"
#include "nasrec/train/trainer.hpp"

namespace nasrec::cli {
namespace fs = std::filesystem;
namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void require_file(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw DataError("file not found: " + path.string());
}

std::string density_percent(const InteractionSet& data) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << data.density() * 100.0 << '%';
  return s.str();
}

InteractionSet merge_partitions(const DatasetSplit& split) {
  std::vector<Interaction> all;
  for (const auto* part : {&split.train, &split.validation, &split.test}) {
    all.insert(all.end(), part->triples().begin(), part->triples().end());
  }
  return InteractionSet(split.train.num_users(), split.train.num_items(), std::move(all));
}

RelevanceLabels test_labels(const PreparedData& data, const std::string& mean_source) {
  if (mean_source == "test") return binarize_relevance(data.split.test);
  if (mean_source == "train") return binarize_relevance(data.split.test, data.split.train);
  if (mean_source == "all") return binarize_relevance(data.split.test, merge_partitions(data.split));
  throw ConfigError("relevance mean must be test, train or all");
}

void check_shapes(const ModelSnapshot& snap, const PreparedData& data) {
  if (snap.num_users() != data.split.train.num_users() ||
      snap.num_items() != data.split.train.num_items()) {
    throw DataError("snapshot shape mismatch: snapshot has n=" + std::to_string(snap.num_users()) +
                    ", m=" + std::to_string(snap.num_items()) + " but the dataset has n=" +
                    std::to_string(data.split.train.num_users()) +
                    ", m=" + std::to_string(data.split.train.num_items()));
  }
}

std::string train_log_csv(const std::vector<EpochLog>& log, std::size_t n) {
  std::ostringstream s;
  s << "epoch,mean_loss,val_recall@" << n << ",val_ndcg@" << n << ",seconds\n";
  for (const auto& e : log) {
    s << e.epoch << ',' << format_double(e.mean_loss) << ',' << format_double(e.val_recall) << ','
      << format_double(e.val_ndcg) << ',' << format_double(e.seconds) << '\n';
  }
  return s.str();
}

std::string train_log_json(const std::vector<EpochLog>& log, std::size_t best_epoch) {
  nlohmann::ordered_json j;
  j["best_epoch"] = best_epoch;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& e : log) {
    nlohmann::ordered_json r;
    r["epoch"] = e.epoch;
    r["mean_loss"] = e.mean_loss;
    r["val_recall"] = std::isfinite(e.val_recall) ? nlohmann::ordered_json(e.val_recall) : nullptr;
    r["val_ndcg"] = std::isfinite(e.val_ndcg) ? nlohmann::ordered_json(e.val_ndcg) : nullptr;
    r["seconds"] = e.seconds;
    rows.push_back(std::move(r));
  }
  j["epochs"] = std::move(rows);
  return j.dump(2) + "\n";
}

// Trains the configured model from the prepared data.
TrainResult train_model(const RunConfig& cfg, const PreparedData& data, std::ostream& out,
                        std::vector<double>* mf_rmse) {
  TrainCallbacks callbacks;
  callbacks.on_epoch = [&out](const EpochLog& e) {
    out << "epoch " << e.epoch << " loss " << format_double(e.mean_loss) << " val_recall "
        << format_double(e.val_recall) << " val_ndcg " << format_double(e.val_ndcg) << " ("
        << format_double(e.seconds) << " s)\n";
  };
  const TrainConfig& t = cfg.train;
  if (cfg.model == ModelKind::kBprMf) return train_bpr_mf(t, data.split, std::nullopt, callbacks);

  MfResult mf = mf_pretrain(data.split.train, t.d, t.mf_epochs, t.mf_lr, t.mf_reg, t.seed);
  out << "mf pretraining: train RMSE " << format_double(mf.rmse.front()) << " -> "
      << format_double(mf.rmse.back()) << "\n";
  if (mf_rmse != nullptr) *mf_rmse = mf.rmse;
  if (cfg.model == ModelKind::kNasStar) {
    return build_nas_star(t, data.split, data.graph, mf.factors, cfg.nas_star_mean, callbacks);
  }
  return pretrain_shallow_then_deepen(t, AttentionMode::kSoftmax, data.split, data.graph,
                                      mf.factors, callbacks);
}

std::vector<std::size_t> parse_list(const std::string& text, const char* name) {
  std::vector<std::size_t> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    const auto v = detail::parse_index(item);
    if (!v || *v == 0) {
      throw ConfigError(std::string("--") + name + ": expected positive integers, got '" + item + "'");
    }
    out.push_back(static_cast<std::size_t>(*v));
  }
  if (out.empty()) throw ConfigError(std::string("--") + name + ": empty list");
  return out;
}

struct PrepareArgs {
  std::string ratings, graph, out, format = "tsv";
  double train_frac = 0.5, val_frac = 0.1;
  std::uint64_t seed = 1;
};

int cmd_prepare(const PrepareArgs& a, std::ostream& out) {
  const Delimiter delim = parse_delimiter(a.format);
  require_file(a.ratings);
  require_file(a.graph);
  LoadedInteractions loaded = load_interactions(a.ratings, delim);
  LoadedGraph graph = load_social_graph(a.graph, loaded.users, delim);

  PreparedData prepared;
  prepared.split = split(loaded.data, a.train_frac, a.val_frac, a.seed);
  prepared.graph = std::move(graph.graph);
  prepared.users = std::move(loaded.users);
  prepared.items = std::move(loaded.items);
  prepared.train_frac = a.train_frac;
  prepared.val_frac = a.val_frac;
  const fs::path dir = resolve_output(a.out);
  write_prepared(dir, prepared);

  out << "users: " << loaded.data.num_users() << "\n"
      << "items: " << loaded.data.num_items() << "\n"
      << "ratings: " << loaded.data.size() << "\n"
      << "edges: " << prepared.graph.num_edges() << "\n"
      << "density: " << density_percent(loaded.data) << "\n"
      << "split train/val/test: " << prepared.split.train.size() << "/"
      << prepared.split.validation.size() << "/" << prepared.split.test.size() << "\n";
  if (graph.dropped_unresolved > 0) {
    out << "social rows dropped (user without ratings): " << graph.dropped_unresolved << "\n";
  }
  if (graph.self_loops > 0) out << "self-loops dropped: " << graph.self_loops << "\n";
  out << "wrote " << dir.string() << "\n";
  return kOk;
}

struct TrainArgs {
  std::string config, output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> epochs, threads;
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  RunConfig cfg = load_run_config(a.config);
  if (a.seed) cfg.train.seed = *a.seed;
  if (a.epochs) cfg.train.epochs = *a.epochs;
  if (a.threads) cfg.train.threads = *a.threads;
  if (!a.output.empty()) cfg.output_dir = a.output;
  cfg.validate();
  if (cfg.data_dir.empty()) throw ConfigError("data_dir is required for train");
  const PreparedData data = load_prepared(cfg.data_dir);

  const fs::path dir = resolve_output(cfg.output_dir);
  fs::create_directories(dir);
  write_text(dir / "resolved_config.json", run_config_json(cfg));

  std::vector<double> mf_rmse;
  const TrainResult result = train_model(cfg, data, out, &mf_rmse);
  if (!mf_rmse.empty()) {
    std::ostringstream s;
    s << "epoch,train_rmse\n";
    for (std::size_t e = 0; e < mf_rmse.size(); ++e) s << e << ',' << format_double(mf_rmse[e]) << '\n';
    write_text(dir / "mf_log.csv", s.str());
  }
  write_text(dir / "train_log.csv", train_log_csv(result.log, cfg.train.val_n));
  write_text(dir / "train_log.json", train_log_json(result.log, result.best_epoch));
  save_snapshot(dir / "model.snap", result.best);
  if (result.skipped_users > 0) {
    out << "warning: " << result.skipped_users << " users rated every item and were skipped\n";
  }
  out << "best epoch " << result.best_epoch << "; snapshot " << (dir / "model.snap").string()
      << "\n";
  return kOk;
}

struct EvalArgs {
  std::string snapshot, data, out, relevance_mean = "test";
  std::size_t n = 10, runs = 5, threads = 1;
  std::uint64_t seed = 1;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  require_file(a.snapshot);
  const ModelSnapshot snap = load_snapshot(a.snapshot);
  const PreparedData data = load_prepared(a.data);
  check_shapes(snap, data);
  if (a.n == 0 || a.runs == 0) throw ConfigError("--n and --runs must be >= 1");
  const auto scorer = make_recommender(snap, data.graph);
  const RelevanceLabels labels = test_labels(data, a.relevance_mean);
  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < a.runs; ++r) seeds.push_back(a.seed + r);
  const EvalReport report = evaluate(*scorer, labels, data.split.train, a.n, seeds, a.threads);

  const fs::path dir = a.out.empty() ? fs::path(a.snapshot).parent_path() : resolve_output(a.out);
  if (!dir.empty()) fs::create_directories(dir);
  const std::string tag(model_kind_name(snap.kind));
  std::ostringstream csv, js;
  write_report_csv(csv, tag, data.train_frac, report);
  write_report_json(js, tag, data.train_frac, report);
  write_text(dir / "report.csv", csv.str());
  write_text(dir / "report.json", js.str());
  out << csv.str();
  out << "users evaluated " << report.runs.front().evaluated_users << ", skipped (no relevant item) "
      << report.runs.front().skipped_users << "\n";
  return kOk;
}

struct RecommendArgs {
  std::string snapshot, data, user;
  std::size_t n = 10;
  std::uint64_t seed = 1;
};

int cmd_recommend(const RecommendArgs& a, std::ostream& out) {
  require_file(a.snapshot);
  const ModelSnapshot snap = load_snapshot(a.snapshot);
  const PreparedData data = load_prepared(a.data);
  check_shapes(snap, data);
  const auto uid = data.users.find(a.user);
  if (!uid) throw DataError("unknown user '" + a.user + "'");
  const auto scorer = make_recommender(snap, data.graph);
  std::vector<double> scores(snap.num_items());
  scorer->score_items(*uid, a.seed, scores);
  const auto candidates = candidate_items(snap.num_items(), data.split.train.user_items(*uid));
  const auto top = top_n_items(scores, candidates, a.n);
  out << "rank\titem\tscore\n";
  for (std::size_t r = 0; r < top.size(); ++r) {
    out << r + 1 << '\t' << data.items.original(top[r]) << '\t' << format_double(scores[top[r]])
        << '\n';
  }
  return kOk;
}

struct SweepArgs {
  std::string config, out, d, h, neg;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig base = load_run_config(a.config);
  if (base.data_dir.empty()) throw ConfigError("data_dir is required for sweep");
  const auto ds = a.d.empty() ? std::vector<std::size_t>{base.train.d} : parse_list(a.d, "d");
  const auto hs = a.h.empty() ? std::vector<std::size_t>{base.train.h} : parse_list(a.h, "h");
  const auto negs = a.neg.empty() ? std::vector<std::size_t>{base.train.neg_per_pos}
                                  : parse_list(a.neg, "neg");
  const PreparedData data = load_prepared(base.data_dir);
  const RelevanceLabels labels = binarize_relevance(data.split.validation);
  const fs::path dir = resolve_output(a.out.empty() ? base.output_dir : a.out);
  fs::create_directories(dir);

  std::ostringstream csv;
  const std::string n = std::to_string(base.eval_n);
  csv << "d,h,neg_per_pos,status,val_recall@" << n << ",val_ndcg@" << n << ",seconds\n";
  auto rows = nlohmann::ordered_json::array();
  std::ostringstream sink;
  for (std::size_t d : ds) {
    for (std::size_t h : hs) {
      for (std::size_t neg : negs) {
        RunConfig cfg = base;
        cfg.train.d = d;
        cfg.train.h = h;
        cfg.train.neg_per_pos = neg;
        const auto start = std::chrono::steady_clock::now();
        std::string status = "ok";
        double recall = std::nan(""), ndcg = std::nan("");
        try {
          cfg.validate();
          const TrainResult result = train_model(cfg, data, sink, nullptr);
          const auto scorer = make_recommender(result.best, data.graph);
          const RunMetrics m = evaluate_run(*scorer, labels, data.split.train, cfg.eval_n,
                                            cfg.eval_seed, cfg.train.threads);
          recall = m.recall;
          ndcg = m.ndcg;
        } catch (const std::exception& e) {
          status = "error";
          err << "sweep cell d=" << d << " h=" << h << " neg=" << neg << " failed: " << e.what()
              << "\n";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        csv << d << ',' << h << ',' << neg << ',' << status << ',' << format_double(recall) << ','
            << format_double(ndcg) << ',' << format_double(secs) << '\n';
        nlohmann::ordered_json r;
        r["d"] = d;
        r["h"] = h;
        r["neg_per_pos"] = neg;
        r["status"] = status;
        r["val_recall"] = std::isfinite(recall) ? nlohmann::ordered_json(recall) : nullptr;
        r["val_ndcg"] = std::isfinite(ndcg) ? nlohmann::ordered_json(ndcg) : nullptr;
        r["seconds"] = secs;
        rows.push_back(std::move(r));
        out << "d=" << d << " h=" << h << " neg=" << neg << " " << status << " val_ndcg "
            << format_double(ndcg) << "\n";
      }
    }
  }
  write_text(dir / "sweep.csv", csv.str());
  write_text(dir / "sweep.json", rows.dump(2) + "\n");
  return kOk;
}

struct SynthArgs {
  std::string spec, out;
  SyntheticSpec values;
};

int cmd_synth(const SynthArgs& a, const CLI::App& app, std::ostream& out) {
  SyntheticSpec spec = a.spec.empty() ? SyntheticSpec{} : parse_synthetic_spec_json(read_text(a.spec));
  // Flags given explicitly override the spec file.
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--n")) spec.n = a.values.n;
  if (given("--m")) spec.m = a.values.m;
  if (given("--d-true")) spec.d_true = a.values.d_true;
  if (given("--friends")) spec.friends_per_user = a.values.friends_per_user;
  if (given("--influential")) spec.influential_per_user = a.values.influential_per_user;
  if (given("--ratings-per-user")) spec.ratings_per_user = a.values.ratings_per_user;
  if (given("--alpha")) spec.alpha = a.values.alpha;
  if (given("--noise")) spec.noise = a.values.noise;
  if (given("--selectivity")) spec.selectivity = a.values.selectivity;
  if (given("--seed")) spec.seed = a.values.seed;
  const SyntheticData data = generate_synthetic(spec);
  const fs::path dir = resolve_output(a.out);
  write_synthetic(dir, spec, data);
  out << "users " << spec.n << ", items " << spec.m << ", ratings " << data.ratings.size()
      << ", edges " << data.graph.num_edges() << "\nwrote " << dir.string() << "\n";
  return kOk;
}

}  // namespace

fs::path resolve_output(const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv("NASREC_OUTPUT_ROOT"); root != nullptr && *root != '\0') {
    return fs::path(root) / p;
  }
  return p;
}

void write_prepared(const fs::path& dir, const PreparedData& data) {
  fs::create_directories(dir);
  save_interactions(dir / "train.tsv", data.split.train);
  save_interactions(dir / "val.tsv", data.split.validation);
  save_interactions(dir / "test.tsv", data.split.test);
  save_graph(dir / "graph.tsv", data.graph);
  data.users.save(dir / "users.map");
  data.items.save(dir / "items.map");
  nlohmann::ordered_json meta;
  meta["num_users"] = data.split.train.num_users();
  meta["num_items"] = data.split.train.num_items();
  meta["train_frac"] = data.train_frac;
  meta["val_frac"] = data.val_frac;
  meta["seed"] = data.split.seed;
  write_text(dir / "meta.json", meta.dump(2) + "\n");
}

PreparedData load_prepared(const fs::path& dir) {
  for (const char* name :
       {"meta.json", "train.tsv", "val.tsv", "test.tsv", "graph.tsv", "users.map", "items.map"}) {
    require_file(dir / name);
  }
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(read_text(dir / "meta.json"));
  } catch (const nlohmann::json::exception& e) {
    throw DataError((dir / "meta.json").string() + ": " + e.what());
  }
  PreparedData out;
  std::size_t n = 0, m = 0;
  try {
    n = meta.at("num_users").get<std::size_t>();
    m = meta.at("num_items").get<std::size_t>();
    out.train_frac = meta.at("train_frac").get<double>();
    out.val_frac = meta.at("val_frac").get<double>();
    out.split.seed = meta.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError((dir / "meta.json").string() + ": " + e.what());
  }
  out.split.train = load_indexed_interactions(dir / "train.tsv", n, m);
  out.split.validation = load_indexed_interactions(dir / "val.tsv", n, m);
  out.split.test = load_indexed_interactions(dir / "test.tsv", n, m);
  out.graph = load_indexed_graph(dir / "graph.tsv", n);
  out.users = IdMap::load(dir / "users.map");
  out.items = IdMap::load(dir / "items.map");
  if (out.users.size() != n || out.items.size() != m) {
    throw DataError("id maps in " + dir.string() + " do not match meta.json");
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"nasrec: social attention recommender"};
  app.require_subcommand(1);

  PrepareArgs prep;
  auto* prepare = app.add_subcommand("prepare", "Split ratings and write indexed partitions");
  prepare->add_option("--ratings", prep.ratings, "user item rating file")->required();
  prepare->add_option("--graph", prep.graph, "user friend file")->required();
  prepare->add_option("--out", prep.out, "output directory")->required();
  prepare->add_option("--train-frac", prep.train_frac, "train fraction per user")->capture_default_str();
  prepare->add_option("--val-frac", prep.val_frac, "validation fraction per user")->capture_default_str();
  prepare->add_option("--seed", prep.seed)->capture_default_str();
  prepare->add_option("--format", prep.format, "tsv or csv")->capture_default_str();

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "MF pretraining then model training");
  train->add_option("--config", tr.config, "run configuration (JSON)")->required();
  train->add_option("--seed", tr.seed);
  train->add_option("--epochs", tr.epochs);
  train->add_option("--threads", tr.threads);
  train->add_option("--output", tr.output, "overrides output_dir");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Top-N evaluation on the test partition");
  eval->add_option("--snapshot", ev.snapshot)->required();
  eval->add_option("--data", ev.data, "prepared data directory")->required();
  eval->add_option("--n", ev.n)->capture_default_str();
  eval->add_option("--runs", ev.runs)->capture_default_str();
  eval->add_option("--seed", ev.seed, "run r uses seed + r")->capture_default_str();
  eval->add_option("--relevance-mean", ev.relevance_mean, "test, train or all")->capture_default_str();
  eval->add_option("--threads", ev.threads)->capture_default_str();
  eval->add_option("--out", ev.out, "report directory (default: next to the snapshot)");

  RecommendArgs rec;
  auto* recommend = app.add_subcommand("recommend", "Top-N items for one user");
  recommend->add_option("--snapshot", rec.snapshot)->required();
  recommend->add_option("--data", rec.data, "prepared data directory")->required();
  recommend->add_option("--user", rec.user, "original user id")->required();
  recommend->add_option("--n", rec.n)->capture_default_str();
  recommend->add_option("--seed", rec.seed)->capture_default_str();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Grid over d, h and negatives per positive");
  sweep->set_help_flag("--help", "Print this help message and exit");
  sweep->add_option("--config", sw.config)->required();
  sweep->add_option("--d", sw.d, "comma-separated list");
  sweep->add_option("--h", sw.h, "comma-separated list");
  sweep->add_option("--neg", sw.neg, "comma-separated list");
  sweep->add_option("--out", sw.out, "overrides output_dir");

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Generate a planted-influence dataset");
  synth->add_option("--spec", sy.spec, "spec JSON; flags override it");
  synth->add_option("--out", sy.out)->required();
  synth->add_option("--n", sy.values.n);
  synth->add_option("--m", sy.values.m);
  synth->add_option("--d-true", sy.values.d_true);
  synth->add_option("--friends", sy.values.friends_per_user);
  synth->add_option("--influential", sy.values.influential_per_user);
  synth->add_option("--ratings-per-user", sy.values.ratings_per_user);
  synth->add_option("--alpha", sy.values.alpha);
  synth->add_option("--noise", sy.values.noise);
  synth->add_option("--selectivity", sy.values.selectivity);
  synth->add_option("--seed", sy.values.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*prepare) return cmd_prepare(prep, out);
    if (*train) return cmd_train(tr, out);
    if (*eval) return cmd_eval(ev, out);
    if (*recommend) return cmd_recommend(rec, out);
    if (*sweep) return cmd_sweep(sw, out, err);
    if (*synth) return cmd_synth(sy, *synth, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const TrainingError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataFailure;
  } catch (const EvalError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return kDataFailure;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kDataFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace nasrec::cli
