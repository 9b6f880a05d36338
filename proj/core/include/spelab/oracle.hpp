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

#include <optional>
#include <vector>

#include "spelab/eq_check.hpp"
#include "spelab/fixpoint.hpp"
#include "spelab/game.hpp"
#include "spelab/strategy.hpp"

namespace spelab {

/// Every canonical lasso with |stem| <= stem_max and |cycle| <= cycle_max,
/// grouped by first vertex.
struct LassoUniverse
{
    std::size_t stem_max = 0;
    std::size_t cycle_max = 0;
    std::vector<std::vector<Lasso>> members;
    /// Cost vectors, parallel to `members`.
    std::vector<std::vector<std::vector<Value>>> costs;

    std::size_t size() const;
};

LassoUniverse build_universe(const Game& game, std::size_t stem_max, std::size_t cycle_max);

struct OracleIteration
{
    BoundTable table;
    /// Per stratum (table order), per member of the stratum vertex: still in the set.
    std::vector<std::vector<char>> alive;
};

struct OracleResult
{
    Mode mode = Mode::Reach;
    std::size_t alpha_star = 0;
    /// Iterations 0..alpha_star.
    std::vector<OracleIteration> iterations;
};

/// Literal erase rounds over the universe until no lasso is removed.
OracleResult oracle_fixpoint(const Game& game, const LassoUniverse& universe, Mode mode);

/// Oracle verdict for constrained existence: a surviving lasso at the root
/// with cost <= bounds.
std::optional<Lasso> oracle_constrained(const Game& game, const LassoUniverse& universe, const OracleResult& result,
                                        const std::vector<Value>& bounds);

struct Disagreement
{
    std::string what;
};

/// Compares per-iteration tables and per-lasso membership of the engine
/// report against the oracle. Empty when they agree.
std::vector<Disagreement> compare_with_oracle(const Game& game, const FixpointReport& report,
                                              const LassoUniverse& universe, const OracleResult& oracle);

/// Exhaustive search for a profitable deviation with at most `budget`
/// deviation steps, in every subgame whose history has at most `depth` edges.
/// Deviations are placed within the first `horizon` positions of the
/// subgame (0: a horizon derived from the product size).
std::optional<Witness> oracle_deviation_search(const Game& game, const Profile& profile, std::size_t depth,
                                               std::size_t budget, std::size_t horizon = 0);

} // namespace spelab
