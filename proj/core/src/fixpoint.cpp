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

#include "spelab/fixpoint.hpp"

#include "spelab/errors.hpp"
#include "spelab/prefixind_fixpoint.hpp"
#include "spelab/reach_fixpoint.hpp"

namespace spelab {

std::string to_string(Mode mode) { return mode == Mode::Reach ? "reach" : "prefix-ind"; }

Mode parse_mode(const std::string& text)
{
    if (text == "reach") return Mode::Reach;
    if (text == "prefix-ind") return Mode::PrefixInd;
    throw InputError("unknown mode '" + text + "' (expected reach or prefix-ind)");
}

Mode mode_of(const Game& game) { return game.is_reachability() ? Mode::Reach : Mode::PrefixInd; }

void index_strata(BoundTable& table)
{
    table.lookup_.clear();
    for (std::size_t s = 0; s < table.strata.size(); ++s) table.lookup_.emplace(table.strata[s], s);
}

std::optional<std::size_t> BoundTable::find(const Stratum& s) const
{
    auto it = lookup_.find(s);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

bool BoundTable::nonempty(std::size_t s) const
{
    for (const auto& c : cells[s]) {
        if (c.nonempty) return true;
    }
    return false;
}

std::vector<Value> BoundTable::aggregated(std::size_t s) const
{
    const auto players = cells[s].front().values.size();
    std::vector<Value> out(players, empty_marker());
    for (const auto& c : cells[s]) {
        if (!c.nonempty) continue;
        for (std::size_t i = 0; i < players; ++i) out[i] = max(out[i], c.values[i]);
    }
    return out;
}

bool BoundTable::same_entries(const BoundTable& other) const
{
    return mode == other.mode && strata == other.strata && cells == other.cells;
}

void BoundTable::refresh_guards(const BoundTable* previous)
{
    guards.assign(strata.size(), {});
    for (std::size_t s = 0; s < strata.size(); ++s) {
        if (!nonempty(s) && previous) {
            if (auto p = previous->find(strata[s])) {
                guards[s] = previous->guards[*p];
                continue;
            }
        }
        guards[s] = aggregated(s);
    }
}

const StratumWitness* FixpointReport::find_witness(PlayerId player, const Stratum& stratum) const
{
    for (const auto& w : witnesses) {
        if (w.player == player && w.stratum == stratum) return &w;
    }
    return nullptr;
}

FixpointReport solve(const Game& game)
{
    return game.is_reachability() ? run_fixpoint(game) : run_fixpoint_pi(game);
}

std::optional<Lasso> constrained_existence(const Game& game, const FixpointReport& report,
                                           const std::vector<Value>& bounds)
{
    if (bounds.size() != game.num_players()) {
        throw InputError("bounds need one value per player (" + std::to_string(game.num_players()) + ")");
    }
    return report.mode == Mode::Reach ? constrained_existence_reach(game, report, bounds)
                                      : constrained_existence_pi(game, report, bounds);
}

bool is_member(const Game& game, const FixpointReport& report, std::size_t alpha, const Stratum& stratum,
               const Lasso& play)
{
    if (alpha > report.alpha_star) alpha = report.alpha_star;
    validate(game, play);
    if (play.first() != stratum.vertex) return false;
    const BoundTable* guards = alpha == 0 ? nullptr : &report.iterations[alpha - 1];
    if (report.mode == Mode::Reach) {
        if (!report.final_table().find(stratum)) {
            throw InputError("stratum at " + game.vertex_name(stratum.vertex)
                             + " is not reachable from the initial vertex");
        }
        return reach_member(game, guards, stratum, play);
    }
    return pi_member(game, guards, stratum.vertex, play);
}

Stratum root_stratum(const Game& game) { return Stratum{game.all_players(), game.initial()}; }

} // namespace spelab
