/*
 * Copyright 2026 The spe-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>

#include "spelab/game.hpp"
#include "spelab/strategy.hpp"

namespace spelab {

struct GenParams
{
    std::size_t vertices = 4;
    std::size_t players = 2;
    CostKind kind = CostKind::Reachability;
    /// Out-degrees are drawn from 1..max_degree, skewed towards 1 and 2.
    std::size_t max_degree = 2;
    /// Prefix-independent weights are integers in [0, max_weight].
    std::int64_t max_weight = 2;
    /// Reachability: each vertex joins each player's target with probability 1/target_odds.
    std::size_t target_odds = 4;
};

inline constexpr std::size_t kMaxGenVertices = 26;
inline constexpr std::size_t kMaxGenPlayers = 8;

/// Reproducible from the seed; vertex ids are v0, v1, ..., players P1, P2, ...
Game random_game(std::uint64_t seed, const GenParams& params);

/// Random Moore profile with at most `max_memory` states per player.
Profile random_profile(const Game& game, std::uint64_t seed, std::size_t max_memory);

} // namespace spelab
