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

#include "nasrec/cli/run_config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "nasrec/common/errors.hpp"

namespace nasrec::cli {
namespace {

using Json = nlohmann::json;
using Setter = std::function<void(RunConfig&, const Json&)>;

template <typename T, typename Field>
Setter set(Field field) {
  return [field](RunConfig& c, const Json& v) { field(c) = v.get<T>(); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"preset", set<std::string>([](RunConfig& c) -> auto& { return c.preset; })},
      {"model",
       [](RunConfig& c, const Json& v) { c.model = parse_model_kind(v.get<std::string>()); }},
      {"nas_star_mean", set<bool>([](RunConfig& c) -> auto& { return c.nas_star_mean; })},
      {"data_dir", set<std::string>([](RunConfig& c) -> auto& { return c.data_dir; })},
      {"output_dir", set<std::string>([](RunConfig& c) -> auto& { return c.output_dir; })},
      {"eval_n", set<std::size_t>([](RunConfig& c) -> auto& { return c.eval_n; })},
      {"eval_runs", set<std::size_t>([](RunConfig& c) -> auto& { return c.eval_runs; })},
      {"eval_seed", set<std::uint64_t>([](RunConfig& c) -> auto& { return c.eval_seed; })},
      {"relevance_mean",
       set<std::string>([](RunConfig& c) -> auto& { return c.relevance_mean; })},
      {"d", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.d; })},
      {"h", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.h; })},
      {"k_max", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.k_max; })},
      {"neg_per_pos", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.neg_per_pos; })},
      {"batch_size", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.batch_size; })},
      {"lr", set<double>([](RunConfig& c) -> auto& { return c.train.lr; })},
      {"epochs", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.epochs; })},
      {"seed", set<std::uint64_t>([](RunConfig& c) -> auto& { return c.train.seed; })},
      {"mf_epochs", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.mf_epochs; })},
      {"mf_lr", set<double>([](RunConfig& c) -> auto& { return c.train.mf_lr; })},
      {"mf_reg", set<double>([](RunConfig& c) -> auto& { return c.train.mf_reg; })},
      {"finetune_embeddings",
       set<bool>([](RunConfig& c) -> auto& { return c.train.finetune_embeddings; })},
      {"pretrain_epochs",
       set<std::size_t>([](RunConfig& c) -> auto& { return c.train.pretrain_epochs; })},
      {"deepen_init",
       [](RunConfig& c, const Json& v) {
         c.train.deepen_init = parse_deepen_init(v.get<std::string>());
       }},
      {"bpr_reg", set<double>([](RunConfig& c) -> auto& { return c.train.bpr_reg; })},
      {"nas_reg", set<double>([](RunConfig& c) -> auto& { return c.train.nas_reg; })},
      {"val_n", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.val_n; })},
      {"threads", set<std::size_t>([](RunConfig& c) -> auto& { return c.train.threads; })},
  };
  return table;
}

}  // namespace

std::vector<std::uint64_t> RunConfig::eval_seeds() const {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 0; r < eval_runs; ++r) out.push_back(eval_seed + r);
  return out;
}

std::vector<std::string> RunConfig::problems() const {
  std::vector<std::string> out;
  if (!preset.empty() && preset != "epinions" && preset != "flixster") {
    out.push_back("preset must be epinions or flixster");
  }
  if (eval_n == 0) out.push_back("eval_n must be >= 1");
  if (eval_runs == 0) out.push_back("eval_runs must be >= 1");
  if (relevance_mean != "test" && relevance_mean != "train" && relevance_mean != "all") {
    out.push_back("relevance_mean must be test, train or all");
  }
  if (output_dir.empty()) out.push_back("output_dir must not be empty");
  for (auto& p : train.problems()) out.push_back(std::move(p));
  return out;
}

void RunConfig::validate() const {
  const auto list = problems();
  if (list.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& p : list) msg += "\n  - " + p;
  throw ConfigError(msg);
}

void apply_preset(std::string_view preset, TrainConfig& train) {
  if (preset == "epinions") {
    train.d = 50;
    train.h = 3;
    train.neg_per_pos = 9;
  } else if (preset == "flixster") {
    train.d = 80;
    train.h = 4;
    train.neg_per_pos = 6;
  } else if (!preset.empty()) {
    throw ConfigError("unknown preset '" + std::string(preset) + "' (epinions|flixster)");
  }
}

RunConfig parse_run_config(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

  RunConfig config;
  std::vector<std::string> errors;
  if (auto it = doc.find("preset"); it != doc.end()) {
    try {
      config.preset = it->get<std::string>();
      apply_preset(config.preset, config.train);
    } catch (const std::exception& e) {
      errors.push_back(std::string("preset: ") + e.what());
    }
  }
  const auto& table = setters();
  for (const auto& [key, value] : doc.items()) {
    if (key == "preset") continue;
    const auto it = table.find(key);
    if (it == table.end()) {
      errors.push_back("unknown key '" + key + "'");
      continue;
    }
    try {
      it->second(config, value);
    } catch (const std::exception& e) {
      errors.push_back(key + ": " + e.what());
    }
  }
  for (auto& p : config.problems()) errors.push_back(std::move(p));
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string run_config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["preset"] = c.preset;
  j["model"] = std::string(model_kind_name(c.model));
  j["nas_star_mean"] = c.nas_star_mean;
  j["data_dir"] = c.data_dir;
  j["output_dir"] = c.output_dir;
  j["eval_n"] = c.eval_n;
  j["eval_runs"] = c.eval_runs;
  j["eval_seed"] = c.eval_seed;
  j["relevance_mean"] = c.relevance_mean;
  const TrainConfig& t = c.train;
  j["d"] = t.d;
  j["h"] = t.h;
  j["k_max"] = t.k_max;
  j["neg_per_pos"] = t.neg_per_pos;
  j["batch_size"] = t.batch_size;
  j["lr"] = t.lr;
  j["epochs"] = t.epochs;
  j["seed"] = t.seed;
  j["mf_epochs"] = t.mf_epochs;
  j["mf_lr"] = t.mf_lr;
  j["mf_reg"] = t.mf_reg;
  j["finetune_embeddings"] = t.finetune_embeddings;
  j["pretrain_epochs"] = t.pretrain_epochs;
  j["deepen_init"] = std::string(deepen_init_name(t.deepen_init));
  j["bpr_reg"] = t.bpr_reg;
  j["nas_reg"] = t.nas_reg;
  j["val_n"] = t.val_n;
  j["threads"] = t.threads;
  return j.dump(2) + "\n";
}

}  // namespace nasrec::cli
