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

#include "spelab/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "spelab/errors.hpp"

namespace spelab {

std::size_t LassoUniverse::size() const
{
    std::size_t n = 0;
    for (const auto& m : members) n += m.size();
    return n;
}

LassoUniverse build_universe(const Game& game, std::size_t stem_max, std::size_t cycle_max)
{
    if (cycle_max == 0) throw InputError("cycle bound must be at least 1");
    LassoUniverse u;
    u.stem_max = stem_max;
    u.cycle_max = cycle_max;
    u.members.resize(game.num_vertices());
    u.costs.resize(game.num_vertices());
    const auto max_len = stem_max + cycle_max;
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        History walk{v};
        std::vector<std::size_t> next{0};
        std::vector<Lasso> found;
        auto harvest = [&] {
            const auto m = walk.size();
            const auto lo = m > cycle_max ? m - cycle_max : 0;
            for (auto s = lo; s <= std::min(stem_max, m - 1); ++s) {
                if (!game.has_edge(walk.back(), walk[s])) continue;
                Lasso l{History(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(s)),
                        History(walk.begin() + static_cast<std::ptrdiff_t>(s), walk.end())};
                if (is_canonical(l)) found.push_back(std::move(l));
            }
        };
        harvest();
        while (!walk.empty()) {
            auto succ = game.successors(walk.back());
            if (walk.size() < max_len && next.back() < succ.size()) {
                walk.push_back(succ[next.back()++]);
                next.push_back(0);
                harvest();
            } else {
                walk.pop_back();
                next.pop_back();
            }
        }
        std::sort(found.begin(), found.end());
        for (const auto& l : found) u.costs[v].push_back(cost(game, l));
        u.members[v] = std::move(found);
    }
    return u;
}

namespace {

std::vector<Stratum> oracle_strata(const Game& game, Mode mode)
{
    std::set<Stratum> seen;
    if (mode == Mode::PrefixInd) {
        for (VertexId v = 0; v < game.num_vertices(); ++v) seen.insert(Stratum{game.all_players(), v});
        return {seen.begin(), seen.end()};
    }
    std::vector<Stratum> stack{Stratum{game.all_players(), game.initial()}};
    seen.insert(stack.back());
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (auto w : game.successors(s.vertex)) {
            Stratum t{s.survivors.without(game.targets_at(s.vertex)), w};
            if (seen.insert(t).second) stack.push_back(t);
        }
    }
    return {seen.begin(), seen.end()};
}

BoundTable tabulate(const Game& game, const LassoUniverse& u, Mode mode, const std::vector<Stratum>& strata,
                    const std::vector<std::vector<char>>& alive)
{
    BoundTable t;
    t.mode = mode;
    t.strata = strata;
    index_strata(t);
    const auto empty = t.empty_marker();
    for (std::size_t s = 0; s < strata.size(); ++s) {
        const auto v = strata[s].vertex;
        std::vector<Cell> row;
        for (auto succ : game.successors(v)) {
            Cell c;
            c.values.assign(game.num_players(), empty);
            for (std::size_t k = 0; k < u.members[v].size(); ++k) {
                if (!alive[s][k] || u.members[v][k].at(1) != succ) continue;
                c.nonempty = true;
                for (PlayerId i = 0; i < game.num_players(); ++i) {
                    if (mode == Mode::Reach && !strata[s].survivors.contains(i)) continue;
                    c.values[i] = max(c.values[i], u.costs[v][k][i]);
                }
            }
            row.push_back(std::move(c));
        }
        t.cells.push_back(std::move(row));
    }
    return t;
}

} // namespace

OracleResult oracle_fixpoint(const Game& game, const LassoUniverse& universe, Mode mode)
{
    if ((mode == Mode::Reach) != game.is_reachability()) throw InputError("mode does not match the game's cost kind");
    OracleResult result;
    result.mode = mode;
    const auto strata = oracle_strata(game, mode);
    std::map<Stratum, std::size_t> index;
    for (std::size_t s = 0; s < strata.size(); ++s) index.emplace(strata[s], s);

    std::vector<std::vector<char>> alive;
    for (const auto& s : strata) alive.emplace_back(universe.members[s.vertex].size(), 1);

    while (true) {
        auto table = tabulate(game, universe, mode, strata, alive);
        std::vector<std::vector<Value>> agg;
        for (std::size_t s = 0; s < strata.size(); ++s) agg.push_back(table.aggregated(s));

        auto next = alive;
        bool erased = false;
        for (std::size_t s = 0; s < strata.size(); ++s) {
            const auto v = strata[s].vertex;
            for (std::size_t k = 0; k < universe.members[v].size(); ++k) {
                if (!alive[s][k]) continue;
                const auto& rho = universe.members[v][k];
                const auto& lambda = universe.costs[v][k];
                // Deviation positions: the stem, then one cycle turn (prefix-independent)
                // or two (reachability). A prefix-independent position repeats its
                // vertex and cost context after one turn. Under reachability the
                // survivor set is settled once a full turn has passed, and a player
                // still surviving then never reaches its target: its remaining cost
                // stays +inf and later turns repeat the second one.
                const auto limit = rho.stem.size() + (mode == Mode::Reach ? 2 : 1) * rho.cycle.size();
                auto survivors = strata[s].survivors;
                bool erase = false;
                for (std::size_t n = 0; n < limit && !erase; ++n) {
                    const auto u = rho.at(n);
                    const auto i = game.owner(u);
                    if (mode == Mode::Reach) survivors = survivors.without(game.targets_at(u));
                    if (!survivors.contains(i)) continue;
                    // Remaining cost of i from position n.
                    Value here = lambda[i];
                    if (mode == Mode::Reach && here.is_finite()) here = Value(here.as_integer() - static_cast<std::int64_t>(n));
                    for (auto w : game.successors(u)) {
                        if (w == rho.at(n + 1)) continue;
                        const auto t = index.at(Stratum{mode == Mode::Reach ? survivors : game.all_players(), w});
                        if (!table.nonempty(t)) continue;
                        Value best = agg[t][i];
                        if (mode == Mode::Reach && best.is_finite()) best = Value(best.as_integer() + 1);
                        if (best < here) {
                            erase = true;
                            break;
                        }
                    }
                }
                if (erase) {
                    next[s][k] = 0;
                    erased = true;
                }
            }
        }
        result.iterations.push_back(OracleIteration{std::move(table), alive});
        if (!erased) break;
        alive = std::move(next);
    }
    result.alpha_star = result.iterations.size() - 1;
    return result;
}

std::optional<Lasso> oracle_constrained(const Game& game, const LassoUniverse& universe, const OracleResult& result,
                                        const std::vector<Value>& bounds)
{
    const auto& last = result.iterations.back();
    const auto s = last.table.find(root_stratum(game));
    if (!s) return std::nullopt;
    const auto v = game.initial();
    for (std::size_t k = 0; k < universe.members[v].size(); ++k) {
        if (!last.alive[*s][k]) continue;
        const auto& c = universe.costs[v][k];
        bool ok = true;
        for (PlayerId i = 0; i < game.num_players() && ok; ++i) ok = !(bounds[i] < c[i]);
        if (ok) return universe.members[v][k];
    }
    return std::nullopt;
}

std::vector<Disagreement> compare_with_oracle(const Game& game, const FixpointReport& report,
                                              const LassoUniverse& universe, const OracleResult& oracle)
{
    std::vector<Disagreement> out;
    if (report.alpha_star != oracle.alpha_star) {
        out.push_back({"fixpoint index: engine " + std::to_string(report.alpha_star) + ", oracle "
                       + std::to_string(oracle.alpha_star)});
    }
    const auto rounds = std::max(report.alpha_star, oracle.alpha_star);
    for (std::size_t a = 0; a <= rounds; ++a) {
        const auto& e = report.iterations[std::min(a, report.alpha_star)];
        const auto& o = oracle.iterations[std::min(a, oracle.alpha_star)].table;
        if (e.strata != o.strata) {
            out.push_back({"strata differ at iteration " + std::to_string(a)});
            return out;
        }
        for (std::size_t s = 0; s < e.strata.size(); ++s) {
            for (std::size_t k = 0; k < e.cells[s].size(); ++k) {
                if (e.cells[s][k] == o.cells[s][k]) continue;
                auto v = e.strata[s].vertex;
                std::string vals;
                for (PlayerId i = 0; i < game.num_players(); ++i) {
                    vals += " " + e.cells[s][k].values[i].to_string() + "/" + o.cells[s][k].values[i].to_string();
                }
                out.push_back({"iteration " + std::to_string(a) + " cell " + game.vertex_name(v) + "->"
                               + game.vertex_name(game.successors(v)[k]) + " survivors "
                               + std::to_string(e.strata[s].survivors.bits()) + " (engine/oracle):" + vals});
            }
        }
    }
    const auto& last = oracle.iterations.back();
    for (std::size_t s = 0; s < last.table.strata.size(); ++s) {
        const auto& stratum = last.table.strata[s];
        const auto& members = universe.members[stratum.vertex];
        for (std::size_t k = 0; k < members.size(); ++k) {
            const bool engine = is_member(game, report, report.alpha_star, stratum, members[k]);
            if (engine == (last.alive[s][k] != 0)) continue;
            out.push_back({"membership of " + format_lasso(game, members[k]) + " (survivors "
                           + std::to_string(stratum.survivors.bits()) + "): engine " + (engine ? "in" : "out")
                           + ", oracle " + (last.alive[s][k] ? "in" : "out")});
        }
    }
    return out;
}

std::optional<Witness> oracle_deviation_search(const Game& game, const Profile& profile, std::size_t depth,
                                               std::size_t budget, std::size_t horizon)
{
    profile.validate(game);
    if (horizon == 0) horizon = reachable_product_size(game, profile) + 1;
    for (const auto& h : subgame_histories(game, depth + 1)) {
        auto mem = initial_memory(profile);
        for (auto v : h) mem = advance(profile, mem, v);
        const History prior(h.begin(), h.end() - 1);
        const auto root = h.back();
        const auto survivors = game.is_reachability() ? survivor_set(game, h) : game.all_players();
        const auto cont = prepend(game, prior, outcome_from(game, profile, root, mem));
        const auto base = cost(game, cont);
        for (auto player : survivors.members()) {
            std::optional<Witness> found;
            History path;
            std::vector<std::size_t> steps;
            // Depth-first over where the deviator leaves the profile.
            std::function<void(VertexId, MemoryVector, std::size_t)> explore = [&](VertexId v, MemoryVector m,
                                                                                    std::size_t n) {
                if (found) return;
                path.push_back(v);
                if (!steps.empty()) {
                    auto play = canonical(prepend(game, prior, prepend(game, History(path.begin(), path.end() - 1),
                                                                       outcome_from(game, profile, v, m))));
                    auto c = cost(game, play);
                    if (c[player] < base[player]) {
                        Witness w;
                        w.history = prior;
                        w.history.insert(w.history.end(), path.begin(),
                                         path.begin() + static_cast<std::ptrdiff_t>(steps.front() + 1));
                        w.player = player;
                        w.alternative = path[steps.front() + 1];
                        w.prescribed_play = canonical(cont);
                        w.deviating_play = play;
                        w.prescribed_cost = base;
                        w.deviating_cost = c;
                        w.steps = steps.size();
                        found = std::move(w);
                    }
                }
                if (!found && n < horizon) {
                    const auto prescribed = choice(game, profile, m, v);
                    if (game.owner(v) == player && steps.size() < budget) {
                        for (auto w : game.successors(v)) {
                            if (w == prescribed || found) continue;
                            steps.push_back(n);
                            explore(w, advance(profile, m, w), n + 1);
                            steps.pop_back();
                        }
                    }
                    if (!found) explore(prescribed, advance(profile, m, prescribed), n + 1);
                }
                path.pop_back();
            };
            explore(root, mem, 0);
            if (found) {
                auto pm = initial_memory(profile);
                for (auto v : found->history) pm = advance(profile, pm, v);
                found->prescribed = choice(game, profile, pm, found->history.back());
                return found;
            }
        }
    }
    return std::nullopt;
}

} // namespace spelab
