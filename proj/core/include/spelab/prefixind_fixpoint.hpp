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

/// Iteration 0 for liminf/limsup games: every play.
BoundTable initial_table_pi(const Game& game);

/// One erase round against the guards of `table`.
BoundTable step_pi(const Game& game, const BoundTable& table);

FixpointReport run_fixpoint_pi(const Game& game);

/// A play from the initial vertex in the fixpoint set with cost at most
/// `bounds` componentwise.
std::optional<Lasso> constrained_existence_pi(const Game& game, const FixpointReport& report,
                                              const std::vector<Value>& bounds);

/// Membership of `play` (starting at `vertex`) in the play set constrained
/// by the guards of `guards` (nullptr: iteration 0).
bool pi_member(const Game& game, const BoundTable* guards, VertexId vertex, const Lasso& play);

/// Checks that every cycle of the bound-vector product built from `guards`
/// keeps a constant bound vector.
bool cycle_constant_bounds(const Game& game, const BoundTable* guards);

} // namespace spelab
