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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spelab/game.hpp"

namespace spelab {

enum class Mode { Reach, PrefixInd };
std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);
/// Mode matching the game's cost kind.
Mode mode_of(const Game& game);

/// (survivors, vertex). In prefix-independent mode the survivor set is
/// always the full player set.
struct Stratum
{
    PlayerSet survivors;
    VertexId vertex = 0;

    friend bool operator==(const Stratum&, const Stratum&) = default;
    friend auto operator<=>(const Stratum&, const Stratum&) = default;
};

struct Cell
{
    bool nonempty = false;
    /// One value per player: -1 marks an empty set or a player outside the
    /// survivor set (reachability), -inf an empty set (prefix-independent).
    std::vector<Value> values;

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Cost bounds of one iteration: per stratum, per outgoing edge (in
/// successor order), the maximal cost of each player over the play set.
struct BoundTable
{
    Mode mode = Mode::Reach;
    std::vector<Stratum> strata;
    std::vector<std::vector<Cell>> cells;
    /// Per stratum and player: the maximum over the last nonempty version of
    /// the stratum's play set. Constraints for the next iteration are read
    /// from here, so a set that becomes empty keeps constraining.
    std::vector<std::vector<Value>> guards;

    std::optional<std::size_t> find(const Stratum& s) const;
    bool nonempty(std::size_t s) const;
    /// Max over nonempty cells; the empty marker when none.
    std::vector<Value> aggregated(std::size_t s) const;
    Value empty_marker() const { return mode == Mode::Reach ? Value(-1) : Value::neg_inf(); }
    /// Cells only (guards excluded).
    bool same_entries(const BoundTable& other) const;

    /// Derives guards from the cells, falling back to `previous` guards for
    /// empty strata.
    void refresh_guards(const BoundTable* previous);

private:
    std::map<Stratum, std::size_t> lookup_;
    friend void index_strata(BoundTable& table);
};

/// Rebuilds the stratum lookup after `strata` changes.
void index_strata(BoundTable& table);

struct StratumWitness
{
    PlayerId player = 0;
    Stratum stratum;
    Lasso play;
    std::vector<Value> cost;
};

struct FixpointReport
{
    Mode mode = Mode::Reach;
    std::size_t alpha_star = 0;
    /// Tables 0..alpha_star.
    std::vector<BoundTable> iterations;
    /// Whether every stratum reachable from the initial vertex is nonempty
    /// at the fixpoint, i.e. a (weak) SPE exists.
    bool exists = false;
    /// Maximal-cost plays per (player, stratum), for surviving players of
    /// nonempty strata.
    std::vector<StratumWitness> witnesses;

    const BoundTable& final_table() const { return iterations.back(); }
    const StratumWitness* find_witness(PlayerId player, const Stratum& stratum) const;
};

/// Runs the engine matching the game's cost kind.
FixpointReport solve(const Game& game);

/// Constrained existence on a finished report: a play of the root fixpoint
/// set with cost at most `bounds` componentwise.
std::optional<Lasso> constrained_existence(const Game& game, const FixpointReport& report,
                                           const std::vector<Value>& bounds);

/// Whether `play` belongs to the play set of `stratum` at iteration alpha
/// (alpha <= alpha_star; alpha_star is the fixpoint).
bool is_member(const Game& game, const FixpointReport& report, std::size_t alpha, const Stratum& stratum,
               const Lasso& play);

/// The stratum of the initial vertex.
Stratum root_stratum(const Game& game);

} // namespace spelab
