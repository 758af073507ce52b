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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nasrec/data/interactions.hpp"
#include "nasrec/data/social_graph.hpp"
#include "nasrec/data/split.hpp"

namespace nasrec::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataFailure = 2, kNumericalFailure = 3 };

// Output of `prepare`: dense-indexed partitions plus id mappings.
//   train.tsv val.tsv test.tsv graph.tsv users.map items.map meta.json
struct PreparedData {
  DatasetSplit split;
  SocialGraph graph;
  IdMap users;
  IdMap items;
  double train_frac = 0.0;
  double val_frac = 0.0;
};

void write_prepared(const std::filesystem::path& dir, const PreparedData& data);
// Throws DataError naming the missing or malformed file.
PreparedData load_prepared(const std::filesystem::path& dir);

// Relative paths resolve under $NASREC_OUTPUT_ROOT when it is set.
std::filesystem::path resolve_output(const std::string& path);

// Entry point behind the `nasrec` binary. Never throws; maps failures to
// ExitCode values after printing a message to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nasrec::cli
