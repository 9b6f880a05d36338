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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spelab/game.hpp"

namespace spelab {

using MemoryState = std::uint32_t;
/// One memory state per player, indexed by PlayerId.
using MemoryVector = std::vector<MemoryState>;

inline constexpr VertexId kNoVertex = ~VertexId{0};

/// Finite-memory strategy. The memory is updated on every visited vertex
/// (including the first one) before the output is read.
class MooreStrategy
{
public:
    MooreStrategy() = default;
    /// Memoryless strategy; `choice[v]` is ignored for vertices the player does not own.
    static MooreStrategy positional(const Game& game, PlayerId player, const std::vector<VertexId>& choice);

    MooreStrategy(PlayerId player, std::size_t num_vertices, MemoryState memory_states, MemoryState initial);

    PlayerId player() const { return player_; }
    MemoryState memory_states() const { return memory_states_; }
    MemoryState initial() const { return initial_; }
    std::size_t num_vertices() const { return num_vertices_; }

    MemoryState update(MemoryState m, VertexId v) const { return update_[slot(m, v)]; }
    /// kNoVertex when unset (vertices not owned by the player).
    VertexId output(MemoryState m, VertexId v) const { return output_[slot(m, v)]; }

    void set_update(MemoryState m, VertexId v, MemoryState next) { update_[slot(m, v)] = next; }
    void set_output(MemoryState m, VertexId v, VertexId succ) { output_[slot(m, v)] = succ; }

    /// Throws StructureError unless every output on an owned vertex is a successor.
    void validate(const Game& game) const;

    friend bool operator==(const MooreStrategy&, const MooreStrategy&) = default;

private:
    std::size_t slot(MemoryState m, VertexId v) const { return static_cast<std::size_t>(m) * num_vertices_ + v; }

    PlayerId player_ = 0;
    std::size_t num_vertices_ = 0;
    MemoryState memory_states_ = 1;
    MemoryState initial_ = 0;
    std::vector<MemoryState> update_;
    std::vector<VertexId> output_;
};

struct Profile
{
    std::vector<MooreStrategy> strategies;

    const MooreStrategy& operator[](PlayerId p) const { return strategies[p]; }
    std::size_t size() const { return strategies.size(); }
    /// Checks that strategy p belongs to player p for every player and validates each one.
    void validate(const Game& game) const;

    friend bool operator==(const Profile&, const Profile&) = default;
};

Profile positional_profile(const Game& game, const std::vector<VertexId>& choice);

MemoryVector initial_memory(const Profile& profile);
/// Memory after every strategy reads vertex v.
MemoryVector advance(const Profile& profile, const MemoryVector& mem, VertexId v);
/// Successor chosen by the owner of v under memory `mem` (already updated with v).
VertexId choice(const Game& game, const Profile& profile, const MemoryVector& mem, VertexId v);

/// Outcome from v when every memory has already read v.
Lasso outcome_from(const Game& game, const Profile& profile, VertexId v, MemoryVector mem);

/// Outcome of the profile from `start`. With a prior history (which must end
/// at `start`) the memories first read the whole prior; the result is the
/// play from `start` on, in canonical form.
Lasso outcome(const Game& game, const Profile& profile, VertexId start,
              const std::optional<History>& prior = std::nullopt);

struct DeviationStep
{
    /// hv, ending at the deviator's vertex.
    History prefix;
    VertexId prescribed = 0;
    VertexId taken = 0;
};

enum class DeviationClass { None, OneShot, Finite, Infinite };
std::string to_string(DeviationClass c);

struct DeviationReport
{
    std::vector<DeviationStep> steps;
    /// Exact, from the joint outcome of profile and deviant.
    DeviationClass kind = DeviationClass::None;
    Lasso play;
};

/// Deviation steps of `deviant` (for its player) from the profile, within
/// the first `horizon` positions of the outcome from `start`.
DeviationReport deviation_steps(const Game& game, const Profile& profile, const MooreStrategy& deviant,
                                VertexId start, std::size_t horizon);

/// Plays `alternative` at the first position if it is `at_vertex`, and
/// copies the player's strategy afterwards.
MooreStrategy one_shot_variant(const Game& game, const Profile& profile, PlayerId player, VertexId at_vertex,
                               VertexId alternative);

/// Replaces the strategy of `deviant.player()`.
Profile with_strategy(Profile profile, MooreStrategy deviant);

/// Product of all memories with the arena: the total count of product states
/// reachable from v0 under arbitrary moves.
std::size_t reachable_product_size(const Game& game, const Profile& profile);

} // namespace spelab
