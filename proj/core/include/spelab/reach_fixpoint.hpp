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

#include "spelab/fixpoint.hpp"
#include "spelab/game.hpp"

namespace spelab {

/// Strata reachable from (all players, initial vertex): (I, v) leads to
/// (I minus the players targeting v, w) for every successor w. Sorted.
std::vector<Stratum> reach_strata(const Game& game);

/// Iteration 0: every play.
BoundTable initial_table(const Game& game);

/// One erase round against the guards of `table`.
BoundTable step(const Game& game, const BoundTable& table);

FixpointReport run_fixpoint(const Game& game);

/// A play from the initial vertex in the fixpoint set with every player
/// reaching its target within `bounds` edges (+inf: unconstrained).
std::optional<Lasso> constrained_existence_reach(const Game& game, const FixpointReport& report,
                                                 const std::vector<Value>& bounds);

/// Membership of `play` (starting at the stratum's vertex) in the play set
/// constrained by the guards of `guards` (nullptr: no constraint, iteration 0).
bool reach_member(const Game& game, const BoundTable* guards, const Stratum& stratum, const Lasso& play);

/// Number of deadline-product states reachable from the stratum starts.
std::size_t reach_product_size(const Game& game, const BoundTable* guards);

} // namespace spelab
