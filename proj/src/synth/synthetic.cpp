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

#include "nasrec/synth/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "json.hpp"
#include "nasrec/common/errors.hpp"
#include "nasrec/common/rng.hpp"
#include "nasrec/model/recommender.hpp"
#include "nasrec/nn/ops.hpp"

namespace nasrec {
namespace {

constexpr std::uint64_t kVectorStream = 0x5359'0001;
constexpr std::uint64_t kGraphStream = 0x5359'0002;
constexpr std::uint64_t kInfluenceStream = 0x5359'0003;
constexpr std::uint64_t kSelectStream = 0x5359'0004;
constexpr std::size_t kFixedPointRounds = 200;

SocialGraph build_graph(const SyntheticSpec& spec) {
  std::vector<UserId> stubs;
  stubs.reserve(spec.n * spec.friends_per_user);
  for (UserId u = 0; u < spec.n; ++u) {
    for (std::size_t s = 0; s < spec.friends_per_user; ++s) stubs.push_back(u);
  }
  Rng rng = make_rng(spec.seed, {kGraphStream});
  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);
  return SocialGraph(spec.n, std::move(edges));
}

}  // namespace

std::vector<std::string> SyntheticSpec::problems() const {
  std::vector<std::string> out;
  if (n < 2) out.push_back("n must be >= 2");
  if (m < 2) out.push_back("m must be >= 2");
  if (d_true == 0) out.push_back("d_true must be >= 1");
  if (friends_per_user == 0) out.push_back("friends_per_user must be >= 1");
  if (influential_per_user == 0) out.push_back("influential_per_user must be >= 1");
  if (ratings_per_user == 0 || ratings_per_user > m) {
    out.push_back("ratings_per_user must be in [1, m]");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) out.push_back("alpha must be in [0, 1]");
  if (!(noise >= 0.0) || !std::isfinite(noise)) out.push_back("noise must be finite and >= 0");
  if (!(selectivity >= 0.0) || !std::isfinite(selectivity)) {
    out.push_back("selectivity must be finite and >= 0");
  }
  return out;
}

void SyntheticSpec::validate() const {
  const auto list = problems();
  if (list.empty()) return;
  std::string msg = "invalid synthetic spec:";
  for (const auto& p : list) msg += "\n  - " + p;
  throw ConfigError(msg);
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n, m = spec.m, d = spec.d_true;
  SyntheticData out;
  out.own = DenseMatrix(n, d);
  out.items = DenseMatrix(m, d);
  {
    Rng rng = make_rng(spec.seed, {kVectorStream});
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& x : out.own.flat()) x = normal(rng);
    for (double& x : out.items.flat()) x = normal(rng);
  }

  out.graph = build_graph(spec);
  out.influential.resize(n);
  for (UserId u = 0; u < n; ++u) {
    const auto nb = out.graph.neighbors(u);
    std::vector<UserId> pool(nb.begin(), nb.end());
    Rng rng = make_rng(spec.seed, {kInfluenceStream, u});
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min(pool.size(), spec.influential_per_user));
    std::sort(pool.begin(), pool.end());
    out.influential[u] = std::move(pool);
  }

  // e <- (1 - alpha) w + alpha * std(s), s_u = mean over A(u) of e, starting
  // from e = w; std() removes the cross-user mean and scales to unit RMS.
  // Without the rescaling, averaging weakly correlated vectors shrinks the
  // social term by about sqrt(|A(u)|) and the own vector dominates; without
  // the centering the iteration collapses onto one shared consensus vector.
  out.effective = out.own;
  DenseMatrix social(n, d);
  std::vector<double> centre(d);
  for (std::size_t round = 0; round < kFixedPointRounds; ++round) {
    std::fill(centre.begin(), centre.end(), 0.0);
    std::size_t members = 0;
    for (UserId u = 0; u < n; ++u) {
      const auto& infl = out.influential[u];
      auto s = social.row(u);
      std::fill(s.begin(), s.end(), 0.0);
      if (infl.empty()) continue;
      for (UserId p : infl) {
        for (std::size_t j = 0; j < d; ++j) s[j] += out.effective(p, j);
      }
      for (std::size_t j = 0; j < d; ++j) {
        s[j] /= static_cast<double>(infl.size());
        centre[j] += s[j];
      }
      ++members;
    }
    CompensatedSum energy;
    for (double& c : centre) c = members > 0 ? c / static_cast<double>(members) : 0.0;
    for (UserId u = 0; u < n; ++u) {
      if (out.influential[u].empty()) continue;
      auto s = social.row(u);
      for (std::size_t j = 0; j < d; ++j) {
        s[j] -= centre[j];
        energy.add(s[j] * s[j]);
      }
    }
    const double rms =
        members > 0 ? std::sqrt(energy.value() / static_cast<double>(members * d)) : 0.0;
    double change = 0.0;
    for (UserId u = 0; u < n; ++u) {
      const auto own = out.own.row(u);
      const auto s = social.row(u);
      const bool social_term = !out.influential[u].empty() && rms > 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double e =
            social_term ? (1.0 - spec.alpha) * own[j] + spec.alpha * s[j] / rms : own[j];
        change = std::max(change, std::fabs(e - out.effective(u, j)));
        out.effective(u, j) = e;
      }
    }
    if (change < 1e-12) break;
  }

  DenseMatrix pref(n, m);
  CompensatedSum sum, sq;
  for (UserId u = 0; u < n; ++u) {
    for (ItemId i = 0; i < m; ++i) {
      const double p = dot(out.effective.row(u), out.items.row(i));
      pref(u, i) = p;
      sum.add(p);
    }
  }
  const double mean = sum.value() / static_cast<double>(n * m);
  for (double p : pref.flat()) sq.add((p - mean) * (p - mean));
  const double sd = std::sqrt(sq.value() / static_cast<double>(n * m));
  for (double& p : pref.flat()) p = sd > 0.0 ? (p - mean) / sd : 0.0;

  std::vector<Interaction> triples;
  triples.reserve(n * spec.ratings_per_user);
  std::vector<std::pair<double, ItemId>> keys(m);
  for (UserId u = 0; u < n; ++u) {
    Rng rng = make_rng(spec.seed, {kSelectStream, u});
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    // Gumbel top-k: sampling without replacement proportional to exp(logit).
    for (ItemId i = 0; i < m; ++i) {
      const double g = -std::log(-std::log(std::max(unit(rng), 1e-300)));
      keys[i] = {spec.selectivity * pref(u, i) + g, i};
    }
    std::partial_sort(keys.begin(), keys.begin() + static_cast<long>(spec.ratings_per_user),
                      keys.end(), [](const auto& a, const auto& b) {
                        return a.first != b.first ? a.first > b.first : a.second < b.second;
                      });
    for (std::size_t r = 0; r < spec.ratings_per_user; ++r) {
      const ItemId i = keys[r].second;
      const double raw = 3.0 + pref(u, i) + spec.noise * normal(rng);
      triples.push_back({u, i, std::clamp(std::round(raw), 1.0, 5.0)});
    }
  }
  out.ratings = InteractionSet(n, m, std::move(triples));
  return out;
}

std::string synthetic_spec_json(const SyntheticSpec& spec) {
  nlohmann::ordered_json j;
  j["n"] = spec.n;
  j["m"] = spec.m;
  j["d_true"] = spec.d_true;
  j["friends_per_user"] = spec.friends_per_user;
  j["influential_per_user"] = spec.influential_per_user;
  j["ratings_per_user"] = spec.ratings_per_user;
  j["alpha"] = spec.alpha;
  j["noise"] = spec.noise;
  j["selectivity"] = spec.selectivity;
  j["seed"] = spec.seed;
  return j.dump(2) + "\n";
}

SyntheticSpec parse_synthetic_spec_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synthetic spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("synthetic spec must be a JSON object");
  SyntheticSpec spec;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "n") spec.n = value.get<std::size_t>();
      else if (key == "m") spec.m = value.get<std::size_t>();
      else if (key == "d_true") spec.d_true = value.get<std::size_t>();
      else if (key == "friends_per_user") spec.friends_per_user = value.get<std::size_t>();
      else if (key == "influential_per_user") spec.influential_per_user = value.get<std::size_t>();
      else if (key == "ratings_per_user") spec.ratings_per_user = value.get<std::size_t>();
      else if (key == "alpha") spec.alpha = value.get<double>();
      else if (key == "noise") spec.noise = value.get<double>();
      else if (key == "selectivity") spec.selectivity = value.get<double>();
      else if (key == "seed") spec.seed = value.get<std::uint64_t>();
      else throw ConfigError("unknown synthetic spec key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("synthetic spec key '" + key + "': " + e.what());
    }
  }
  return spec;
}

void write_synthetic(const std::filesystem::path& dir, const SyntheticSpec& spec,
                     const SyntheticData& data) {
  std::filesystem::create_directories(dir);
  save_interactions(dir / "ratings.tsv", data.ratings);
  save_graph(dir / "graph.tsv", data.graph);
  std::ofstream infl(dir / "influential.tsv");
  if (!infl) throw DataError("cannot write " + (dir / "influential.tsv").string());
  for (UserId u = 0; u < data.influential.size(); ++u) {
    for (UserId p : data.influential[u]) infl << u << '\t' << p << '\n';
  }
  std::ofstream js(dir / "spec.json");
  if (!js) throw DataError("cannot write " + (dir / "spec.json").string());
  js << synthetic_spec_json(spec);
}

AttentionDiagnostics attention_diagnostics(const ModelSnapshot& snapshot,
                                           const SocialGraph& graph,
                                           const std::vector<std::vector<UserId>>& influential,
                                           std::uint64_t seed) {
  if (!snapshot.params || snapshot.mode != AttentionMode::kSoftmax) {
    throw ContractViolation("attention_diagnostics: model has no softmax attention");
  }
  if (influential.size() != snapshot.num_users()) {
    throw ContractViolation("attention_diagnostics: influential sets do not match the model");
  }
  NasRecommender model(snapshot.factors, *snapshot.params, snapshot.mode, snapshot.k_max, graph);
  CompensatedSum infl_sum, other_sum;
  AttentionDiagnostics out;
  ForwardCache cache;
  FriendContext friends;
  for (UserId u = 0; u < snapshot.num_users(); ++u) {
    model.user_forward(u, seed, cache, &friends);
    double gi = 0.0, go = 0.0;
    std::size_t ni = 0, no = 0;
    const auto& set = influential[u];
    for (std::size_t p = 0; p < friends.k(); ++p) {
      if (std::binary_search(set.begin(), set.end(), friends.friends[p])) {
        gi += cache.gamma[p];
        ++ni;
      } else {
        go += cache.gamma[p];
        ++no;
      }
    }
    if (ni == 0 || no == 0) continue;
    infl_sum.add(gi / static_cast<double>(ni));
    other_sum.add(go / static_cast<double>(no));
    ++out.users;
  }
  if (out.users > 0) {
    out.mean_gamma_influential = infl_sum.value() / static_cast<double>(out.users);
    out.mean_gamma_other = other_sum.value() / static_cast<double>(out.users);
  }
  return out;
}

}  // namespace nasrec
