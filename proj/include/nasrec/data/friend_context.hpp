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
#include <vector>

#include "nasrec/data/social_graph.hpp"

namespace nasrec {

struct FriendContext {
  UserId user = 0;
  // Sorted subset of the user's neighbors.
  std::vector<UserId> friends;

  std::size_t k() const { return friends.size(); }
};

// All neighbors when degree <= k_max, otherwise a uniform k_max-subset drawn
// from a stream derived from (seed, user).
FriendContext friend_context(const SocialGraph& graph, UserId user, std::size_t k_max,
                             std::uint64_t seed);

}  // namespace nasrec
