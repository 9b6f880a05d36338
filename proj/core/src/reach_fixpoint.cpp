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

#include "spelab/reach_fixpoint.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "graph.hpp"
#include "spelab/errors.hpp"
#include "spelab/parallel.hpp"

namespace spelab {

namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();

/// Position in the deadline product: current vertex, players that had not
/// reached their target before it, and per-player deadlines (edges left to
/// reach the target, kNone when unconstrained).
struct DeadlineState
{
    VertexId vertex = 0;
    PlayerSet survivors;
    std::vector<std::int64_t> deadline;

    detail::StateIndex::Key key() const
    {
        detail::StateIndex::Key k;
        k.reserve(deadline.size() + 2);
        k.push_back(vertex);
        k.push_back(survivors.bits());
        for (auto d : deadline) k.push_back(static_cast<std::uint64_t>(d));
        return k;
    }

    static DeadlineState from_key(const detail::StateIndex::Key& k)
    {
        DeadlineState s;
        s.vertex = static_cast<VertexId>(k[0]);
        s.survivors = PlayerSet(k[1]);
        for (std::size_t i = 2; i < k.size(); ++i) s.deadline.push_back(static_cast<std::int64_t>(k[i]));
        return s;
    }
};

class DeadlineRules
{
public:
    DeadlineRules(const Game& game, const BoundTable* guards) : game_(game), guards_(guards) {}

    /// A state is dead on arrival when a player still pending after the
    /// current vertex has run out of time.
    bool valid(const DeadlineState& s) const
    {
        const auto pending = s.survivors.without(game_.targets_at(s.vertex));
        for (auto i : pending.members()) {
            if (s.deadline[i] == 0) return false;
        }
        return true;
    }

    DeadlineState next(const DeadlineState& s, VertexId to) const
    {
        DeadlineState t;
        t.vertex = to;
        t.survivors = s.survivors.without(game_.targets_at(s.vertex));
        t.deadline.assign(s.deadline.size(), kNone);
        for (auto i : t.survivors.members()) {
            if (s.deadline[i] != kNone) t.deadline[i] = s.deadline[i] - 1;
        }
        const auto j = game_.owner(s.vertex);
        if (guards_ && t.survivors.contains(j)) {
            for (auto w : game_.successors(s.vertex)) {
                if (w == to) continue;
                auto idx = guards_->find(Stratum{t.survivors, w});
                if (!idx) throw ConsistencyError("deviation stratum missing from the table");
                const auto& g = guards_->guards[*idx][j];
                // Empty alternatives (-1) and +inf impose nothing.
                if (!g.is_finite() || g < Value(0)) continue;
                t.deadline[j] = std::min(t.deadline[j], g.as_integer());
            }
        }
        return t;
    }

private:
    const Game& game_;
    const BoundTable* guards_;
};

class DeadlineProduct
{
public:
    DeadlineProduct(const Game& game, const BoundTable* guards) : game_(game), rules_(game, guards) {}

    std::uint32_t add(const DeadlineState& s)
    {
        auto [id, inserted] = index_.intern(s.key());
        if (inserted) states_.push_back(s);
        return id;
    }

    void expand()
    {
        for (; expanded_ < states_.size(); ++expanded_) {
            const auto s = states_[expanded_];
            std::vector<std::uint32_t> out;
            if (rules_.valid(s)) {
                for (auto w : game_.successors(s.vertex)) out.push_back(add(rules_.next(s, w)));
            }
            succ_.push_back(std::move(out));
        }
    }

    void settle()
    {
        expand();
        const auto n = static_cast<std::uint32_t>(states_.size());
        // Greatest fixpoint: keep states with an alive successor.
        std::vector<std::vector<std::uint32_t>> pred(n);
        std::vector<std::uint32_t> live_succ(n, 0);
        for (std::uint32_t s = 0; s < n; ++s) {
            for (auto t : succ_[s]) pred[t].push_back(s);
            live_succ[s] = static_cast<std::uint32_t>(succ_[s].size());
        }
        alive_.assign(n, 1);
        std::vector<std::uint32_t> dead;
        for (std::uint32_t s = 0; s < n; ++s) {
            if (live_succ[s] == 0) {
                alive_[s] = 0;
                dead.push_back(s);
            }
        }
        while (!dead.empty()) {
            auto t = dead.back();
            dead.pop_back();
            for (auto s : pred[t]) {
                if (alive_[s] && --live_succ[s] == 0) {
                    alive_[s] = 0;
                    dead.push_back(s);
                }
            }
        }

        alive_succ_.assign(n, {});
        for (std::uint32_t s = 0; s < n; ++s) {
            if (!alive_[s]) continue;
            for (auto t : succ_[s]) {
                if (alive_[t]) alive_succ_[s].push_back(t);
            }
        }
        sccs_ = detail::strongly_connected(alive_succ_);
        std::vector<std::uint32_t> order(n);
        for (std::uint32_t s = 0; s < n; ++s) order[s] = s;
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sccs_.comp[a] < sccs_.comp[b]; });

        const auto players = game_.num_players();
        values_.assign(n, std::vector<Value>(players, Value(-1)));
        parallel_for(players, [&](std::size_t pi) {
            const auto i = static_cast<PlayerId>(pi);
            for (auto s : order) {
                const auto& st = states_[s];
                if (!alive_[s] || !st.survivors.contains(i)) continue;
                if (game_.is_target(i, st.vertex)) {
                    values_[s][i] = Value(0);
                } else if (sccs_.nontrivial[sccs_.comp[s]]) {
                    values_[s][i] = Value::pos_inf();
                } else {
                    Value best(-1);
                    for (auto t : alive_succ_[s]) best = max(best, values_[t][i]);
                    values_[s][i] = best.is_finite() ? Value(best.as_integer() + 1) : best;
                }
            }
        });
    }

    std::size_t size() const { return states_.size(); }
    const DeadlineState& state(std::uint32_t s) const { return states_[s]; }
    const std::vector<std::uint32_t>& successors(std::uint32_t s) const { return succ_[s]; }
    bool alive(std::uint32_t s) const { return alive_[s] != 0; }
    /// Max target index over valid plays from s, for players in s.survivors.
    const Value& value(std::uint32_t s, PlayerId i) const { return values_[s][i]; }

    /// Follows the first alive successor until a state repeats.
    Lasso close(std::vector<std::uint32_t> path) const
    {
        std::map<std::uint32_t, std::size_t> pos;
        for (std::size_t k = 0; k < path.size(); ++k) pos.emplace(path[k], k);
        while (true) {
            auto next = alive_succ_[path.back()].front();
            auto [it, inserted] = pos.emplace(next, path.size());
            if (!inserted) return project(path, it->second);
            path.push_back(next);
        }
    }

    /// A play from s maximizing the target index of player i.
    Lasso max_play(std::uint32_t s, PlayerId i) const
    {
        std::vector<std::uint32_t> path{s};
        while (true) {
            const auto cur = path.back();
            const auto& v = values_[cur][i];
            if (v == Value(0)) return close(path);
            if (v.is_pos_inf() && sccs_.nontrivial[sccs_.comp[cur]]) {
                const auto c = sccs_.comp[cur];
                for (auto t : alive_succ_[cur]) {
                    if (sccs_.comp[t] != c) continue;
                    auto back = detail::bfs_path(alive_succ_, t, cur,
                                                 [&](auto x, auto y) { return sccs_.comp[x] == c && sccs_.comp[y] == c; });
                    const auto loop_start = path.size() - 1;
                    path.insert(path.end(), back.begin(), back.end() - 1);
                    return project(path, loop_start);
                }
            }
            std::optional<std::uint32_t> pick;
            for (auto t : alive_succ_[cur]) {
                const auto& tv = values_[t][i];
                if (v.is_pos_inf() ? tv.is_pos_inf() : tv == Value(v.as_integer() - 1)) {
                    pick = t;
                    break;
                }
            }
            if (!pick) throw ConsistencyError("value chain broken in the deadline product");
            path.push_back(*pick);
        }
    }

private:
    Lasso project(const std::vector<std::uint32_t>& path, std::size_t loop_start) const
    {
        Lasso l;
        for (std::size_t k = 0; k < path.size(); ++k) {
            (k < loop_start ? l.stem : l.cycle).push_back(states_[path[k]].vertex);
        }
        return canonical(std::move(l));
    }

    const Game& game_;
    DeadlineRules rules_;
    detail::StateIndex index_;
    std::vector<DeadlineState> states_;
    std::vector<std::vector<std::uint32_t>> succ_;
    std::size_t expanded_ = 0;
    std::vector<char> alive_;
    std::vector<std::vector<std::uint32_t>> alive_succ_;
    detail::Sccs sccs_;
    std::vector<std::vector<Value>> values_;
};

DeadlineState stratum_start(const Game& game, const Stratum& s)
{
    return DeadlineState{s.vertex, s.survivors, std::vector<std::int64_t>(game.num_players(), kNone)};
}

BoundTable build_table(const Game& game, const BoundTable* guards, const std::vector<Stratum>& strata)
{
    DeadlineProduct product(game, guards);
    std::vector<std::uint32_t> starts;
    for (const auto& s : strata) starts.push_back(product.add(stratum_start(game, s)));
    product.settle();

    BoundTable table;
    table.mode = Mode::Reach;
    table.strata = strata;
    index_strata(table);
    for (std::size_t s = 0; s < strata.size(); ++s) {
        const auto& stratum = strata[s];
        std::vector<Cell> row;
        for (auto t : product.successors(starts[s])) {
            Cell cell;
            cell.nonempty = product.alive(t);
            cell.values.assign(game.num_players(), Value(-1));
            if (cell.nonempty) {
                for (auto i : stratum.survivors.members()) {
                    if (game.is_target(i, stratum.vertex)) {
                        cell.values[i] = Value(0);
                    } else {
                        const auto& v = product.value(t, i);
                        cell.values[i] = v.is_finite() ? Value(v.as_integer() + 1) : v;
                    }
                }
            }
            row.push_back(std::move(cell));
        }
        table.cells.push_back(std::move(row));
    }
    return table;
}

const BoundTable* constraint_table(const FixpointReport& report)
{
    return report.alpha_star == 0 ? nullptr : &report.iterations[report.alpha_star - 1];
}

} // namespace

std::vector<Stratum> reach_strata(const Game& game)
{
    std::set<Stratum> seen{root_stratum(game)};
    std::vector<Stratum> queue{root_stratum(game)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto s = queue[head];
        const auto after = s.survivors.without(game.targets_at(s.vertex));
        for (auto w : game.successors(s.vertex)) {
            Stratum t{after, w};
            if (seen.insert(t).second) queue.push_back(t);
        }
    }
    return {seen.begin(), seen.end()};
}

BoundTable initial_table(const Game& game)
{
    if (!game.is_reachability()) throw InputError("reach mode needs a reachability game");
    auto table = build_table(game, nullptr, reach_strata(game));
    table.refresh_guards(nullptr);
    return table;
}

BoundTable step(const Game& game, const BoundTable& table)
{
    auto next = build_table(game, &table, table.strata);
    next.refresh_guards(&table);
    return next;
}

FixpointReport run_fixpoint(const Game& game)
{
    FixpointReport report;
    report.mode = Mode::Reach;
    report.iterations.push_back(initial_table(game));
    while (true) {
        auto next = step(game, report.iterations.back());
        if (next.same_entries(report.iterations.back())) break;
        report.iterations.push_back(std::move(next));
    }
    report.alpha_star = report.iterations.size() - 1;

    const auto& final_table = report.final_table();
    for (std::size_t s = 0; s < final_table.strata.size(); ++s) {
        if (!final_table.nonempty(s)) {
            const auto& st = final_table.strata[s];
            throw ConsistencyError("empty fixpoint set at vertex " + game.vertex_name(st.vertex)
                                   + " in a reachability game");
        }
    }
    report.exists = true;

    DeadlineProduct product(game, constraint_table(report));
    std::vector<std::uint32_t> starts;
    for (const auto& s : final_table.strata) starts.push_back(product.add(stratum_start(game, s)));
    product.settle();
    for (std::size_t s = 0; s < final_table.strata.size(); ++s) {
        const auto& stratum = final_table.strata[s];
        for (auto i : stratum.survivors.members()) {
            StratumWitness w;
            w.player = i;
            w.stratum = stratum;
            w.play = product.max_play(starts[s], i);
            w.cost = cost(game, w.play);
            report.witnesses.push_back(std::move(w));
        }
    }
    return report;
}

std::optional<Lasso> constrained_existence_reach(const Game& game, const FixpointReport& report,
                                                 const std::vector<Value>& bounds)
{
    DeadlineState start = stratum_start(game, root_stratum(game));
    for (PlayerId i = 0; i < bounds.size(); ++i) {
        const auto& b = bounds[i];
        if (b.is_pos_inf()) continue;
        if (!b.is_finite() || !b.finite().is_integer() || b < Value(0)) {
            throw InputError("reachability bound for " + game.player_name(i) + " must be a natural number or inf");
        }
        start.deadline[i] = b.as_integer();
    }
    DeadlineProduct product(game, constraint_table(report));
    auto s = product.add(start);
    product.settle();
    if (!product.alive(s)) return std::nullopt;
    return product.close({s});
}

bool reach_member(const Game& game, const BoundTable* guards, const Stratum& stratum, const Lasso& play)
{
    validate(game, play);
    if (play.first() != stratum.vertex) return false;
    DeadlineRules rules(game, guards);
    auto s = stratum_start(game, stratum);
    std::set<std::pair<std::size_t, detail::StateIndex::Key>> seen;
    for (std::size_t n = 0;; ++n) {
        if (!rules.valid(s)) return false;
        if (n >= play.stem.size()) {
            auto phase = (n - play.stem.size()) % play.cycle.size();
            if (!seen.emplace(phase, s.key()).second) return true;
        }
        s = rules.next(s, play.at(n + 1));
    }
}

std::size_t reach_product_size(const Game& game, const BoundTable* guards)
{
    DeadlineProduct product(game, guards);
    for (const auto& s : reach_strata(game)) product.add(stratum_start(game, s));
    product.expand();
    return product.size();
}

} // namespace spelab
