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

#include "nasrec/data/friend_context.hpp"

#include <algorithm>
#include <string>

#include "nasrec/common/errors.hpp"
#include "nasrec/common/rng.hpp"

namespace nasrec {

FriendContext friend_context(const SocialGraph& graph, UserId user, std::size_t k_max,
                             std::uint64_t seed) {
  if (user >= graph.num_users()) {
    throw ContractViolation("friend_context: user " + std::to_string(user) + " out of range");
  }
  const auto nb = graph.neighbors(user);
  FriendContext ctx{user, std::vector<UserId>(nb.begin(), nb.end())};
  if (ctx.friends.size() <= k_max) return ctx;
  Rng rng = make_rng(seed, {user});
  // Partial Fisher-Yates: the first k_max slots become the sample.
  for (std::size_t i = 0; i < k_max; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, ctx.friends.size() - 1);
    std::swap(ctx.friends[i], ctx.friends[pick(rng)]);
  }
  ctx.friends.resize(k_max);
  std::sort(ctx.friends.begin(), ctx.friends.end());
  return ctx;
}

}  // namespace nasrec
