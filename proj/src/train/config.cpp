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

#include "nasrec/train/config.hpp"

#include <cmath>

#include "nasrec/common/errors.hpp"

namespace nasrec {

std::string_view deepen_init_name(DeepenInit init) {
  return init == DeepenInit::kIdentity ? "identity" : "xavier";
}

DeepenInit parse_deepen_init(std::string_view name) {
  if (name == "xavier") return DeepenInit::kXavier;
  if (name == "identity") return DeepenInit::kIdentity;
  throw ConfigError("unknown deepen_init '" + std::string(name) + "' (xavier|identity)");
}

std::vector<std::string> TrainConfig::problems() const {
  std::vector<std::string> out;
  auto positive = [&](std::size_t v, const char* name) {
    if (v == 0) out.push_back(std::string(name) + " must be >= 1");
  };
  positive(d, "d");
  positive(h, "h");
  positive(k_max, "k_max");
  positive(neg_per_pos, "neg_per_pos");
  positive(batch_size, "batch_size");
  if (!std::isfinite(lr) || lr < 0.0) out.push_back("lr must be finite and >= 0");
  positive(epochs, "epochs");
  positive(mf_epochs, "mf_epochs");
  if (!std::isfinite(mf_lr) || mf_lr <= 0.0) out.push_back("mf_lr must be finite and > 0");
  if (!std::isfinite(mf_reg) || mf_reg < 0.0) out.push_back("mf_reg must be finite and >= 0");
  if (!std::isfinite(bpr_reg) || bpr_reg < 0.0) out.push_back("bpr_reg must be finite and >= 0");
  if (!std::isfinite(nas_reg) || nas_reg < 0.0) out.push_back("nas_reg must be finite and >= 0");
  positive(val_n, "val_n");
  positive(threads, "threads");
  return out;
}

void TrainConfig::validate() const {
  const auto list = problems();
  if (list.empty()) return;
  std::string msg = "invalid training configuration:";
  for (const auto& p : list) msg += "\n  - " + p;
  throw ConfigError(msg);
}

}  // namespace nasrec
