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

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spelab/rational.hpp"

namespace spelab {

using VertexId = std::uint32_t;
using PlayerId = std::uint32_t;

/// A set of players, at most 64.
class PlayerSet
{
public:
    constexpr PlayerSet() = default;
    constexpr explicit PlayerSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr PlayerSet all(std::size_t count)
    {
        return PlayerSet(count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
    }

    constexpr bool contains(PlayerId p) const { return (bits_ >> p) & 1U; }
    constexpr void insert(PlayerId p) { bits_ |= std::uint64_t{1} << p; }
    constexpr void erase(PlayerId p) { bits_ &= ~(std::uint64_t{1} << p); }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr PlayerSet operator&(PlayerSet o) const { return PlayerSet(bits_ & o.bits_); }
    constexpr PlayerSet operator|(PlayerSet o) const { return PlayerSet(bits_ | o.bits_); }
    constexpr PlayerSet without(PlayerSet o) const { return PlayerSet(bits_ & ~o.bits_); }

    /// Members in increasing order.
    std::vector<PlayerId> members() const;

    friend constexpr bool operator==(PlayerSet, PlayerSet) = default;
    friend constexpr auto operator<=>(PlayerSet, PlayerSet) = default;

private:
    std::uint64_t bits_ = 0;
};

enum class CostKind { Reachability, LimInf, LimSup };

std::string to_string(CostKind kind);

struct Edge
{
    VertexId from = 0;
    VertexId to = 0;
    /// One weight per player; empty for reachability games.
    std::vector<Rational> weights;
};

/// Finite arena plus cost specification. Immutable once constructed; all
/// vertex and player references are dense indices into the name tables.
class Game
{
public:
    struct Spec
    {
        std::vector<std::string> players;
        std::vector<std::string> vertices;
        std::vector<PlayerId> owners;
        std::vector<Edge> edges;
        CostKind kind = CostKind::Reachability;
        /// Reachability mode: per player, the target vertices.
        std::vector<std::vector<VertexId>> targets;
        VertexId initial = 0;
    };

    /// Validates the arena (ownership, dead ends, duplicate edges, weight
    /// arity) and throws InputError with a diagnostic naming the culprit.
    explicit Game(Spec spec);

    std::size_t num_players() const { return players_.size(); }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::string& player_name(PlayerId p) const { return players_[p]; }
    const std::string& vertex_name(VertexId v) const { return vertices_[v]; }
    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<PlayerId> find_player(const std::string& name) const;
    const std::vector<std::string>& player_names() const { return players_; }
    const std::vector<std::string>& vertex_names() const { return vertices_; }

    PlayerId owner(VertexId v) const { return owners_[v]; }
    VertexId initial() const { return initial_; }
    CostKind cost_kind() const { return kind_; }
    bool is_reachability() const { return kind_ == CostKind::Reachability; }
    PlayerSet all_players() const { return PlayerSet::all(players_.size()); }

    /// Successors in increasing index order.
    std::span<const VertexId> successors(VertexId v) const { return succ_[v]; }
    bool has_edge(VertexId from, VertexId to) const { return edge_index(from, to).has_value(); }
    std::optional<std::size_t> edge_index(VertexId from, VertexId to) const;
    const Edge& edge(std::size_t index) const { return edges_[index]; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Players whose target set contains v (empty outside reachability mode).
    PlayerSet targets_at(VertexId v) const { return targets_at_[v]; }
    bool is_target(PlayerId p, VertexId v) const { return targets_at_[v].contains(p); }
    const std::vector<std::vector<VertexId>>& targets() const { return targets_; }

    const Rational& weight(std::size_t edge, PlayerId p) const { return edges_[edge].weights[p]; }
    /// The finite range C_i of player p: the distinct weights on p's edges, ascending.
    const std::vector<Rational>& value_range(PlayerId p) const { return ranges_[p]; }

    /// Vertices reachable from `from` (including it), ascending.
    std::vector<VertexId> reachable_from(VertexId from) const;

    /// Same arena with a different initial vertex.
    Game with_initial(VertexId v) const;
    const Spec& spec() const { return spec_; }

private:
    Spec spec_;
    std::vector<std::string> players_;
    std::vector<std::string> vertices_;
    std::unordered_map<std::string, VertexId> vertex_lookup_;
    std::vector<PlayerId> owners_;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> succ_;
    std::vector<std::vector<std::size_t>> succ_edge_;
    CostKind kind_;
    std::vector<std::vector<VertexId>> targets_;
    std::vector<PlayerSet> targets_at_;
    std::vector<std::vector<Rational>> ranges_;
    VertexId initial_;
};

/// Finite vertex sequence; consecutive vertices are edges.
using History = std::vector<VertexId>;

/// Ultimately periodic play stem . cycle^omega.
struct Lasso
{
    std::vector<VertexId> stem;
    std::vector<VertexId> cycle;

    VertexId first() const { return stem.empty() ? cycle.front() : stem.front(); }
    std::size_t length() const { return stem.size() + cycle.size(); }
    /// Vertex at position n of the infinite play.
    VertexId at(std::size_t n) const;

    friend bool operator==(const Lasso&, const Lasso&) = default;
    friend auto operator<=>(const Lasso&, const Lasso&) = default;
};

/// Shortest stem and primitive cycle: two lassos denote the same play iff
/// their canonical forms are equal.
Lasso canonical(Lasso lasso);
bool is_canonical(const Lasso& lasso);

/// Throws StructureError on a non-edge step or an empty cycle.
void validate(const Game& game, const Lasso& lasso);
void validate(const Game& game, const History& history);

/// h . rho as a lasso (not canonicalized). Throws if the junction is not an edge.
Lasso prepend(const Game& game, const History& h, const Lasso& rho);

/// Cost of one player: first target index (+inf if never) in reachability
/// mode, min/max player weight over the cycle edges for liminf/limsup.
Value player_cost(const Game& game, const Lasso& play, PlayerId player);
std::vector<Value> cost(const Game& game, const Lasso& play);

/// Players whose target set is disjoint from the history (reachability only).
PlayerSet survivor_set(const Game& game, const History& history);

/// Shift law: for every player that survives h, cost(h.rho) = cost(rho) + |h|
/// where |h| counts the vertices of h (edges of h plus the junction edge).
bool shift_cost_identity_check(const Game& game, const History& h, const Lasso& rho);

std::string format_lasso(const Game& game, const Lasso& lasso);
std::string format_history(const Game& game, const History& history);

} // namespace spelab
