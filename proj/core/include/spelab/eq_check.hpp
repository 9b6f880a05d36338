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
#include <string>
#include <vector>

#include "spelab/game.hpp"
#include "spelab/strategy.hpp"

namespace spelab {

enum class CheckKind { NE, VeryWeakNE, WeakNEBounded, VeryWeakSPE };
std::string to_string(CheckKind kind);

/// A profitable deviation. `history` ends at the vertex where the deviator
/// leaves the profile; both plays start at the initial vertex and can be
/// replayed against the profile.
struct Witness
{
    History history;
    PlayerId player = 0;
    VertexId prescribed = 0;
    VertexId alternative = 0;
    /// Outcome of the profile after `history`, prefixed by it.
    Lasso prescribed_play;
    /// The deviating play (deviator's moves, everyone else on the profile).
    Lasso deviating_play;
    std::vector<Value> prescribed_cost;
    std::vector<Value> deviating_cost;
    /// Deviation steps used along `deviating_play` after `history`.
    std::size_t steps = 0;
};

struct Verdict
{
    CheckKind kind = CheckKind::NE;
    bool holds = true;
    std::optional<Witness> witness;
};

/// One-shot deviations in every subgame, reachable under arbitrary moves.
/// Equivalent to weak SPE, and to SPE for reachability costs.
Verdict check_very_weak_spe(const Game& game, const Profile& profile);

/// Unrestricted deviations from the initial vertex (best response in the
/// product with the other players' machines).
Verdict check_ne(const Game& game, const Profile& profile);

/// One-shot deviations at the initial vertex only.
Verdict check_very_weak_ne(const Game& game, const Profile& profile);

/// Deviating strategies with at most k deviation steps, from the initial
/// vertex. Bounded refutation, not a decision procedure for weak NE.
Verdict check_weak_ne_bounded(const Game& game, const Profile& profile, std::size_t k);

/// Same, in the subgame after `history` (nonempty, starting at the initial vertex).
Verdict check_weak_ne_bounded_at(const Game& game, const Profile& profile, std::size_t k, const History& history);

/// Histories of length at most `depth` (in vertices) from the initial vertex,
/// in lexicographic order; used to sample subgames.
std::vector<History> subgame_histories(const Game& game, std::size_t depth);

/// True iff the witness replays: the prescribed play is the profile outcome
/// after the history, the deviating play agrees with the profile at every
/// vertex not owned by the deviator, and the deviator strictly gains.
bool replay_witness(const Game& game, const Profile& profile, const Witness& witness);

} // namespace spelab
