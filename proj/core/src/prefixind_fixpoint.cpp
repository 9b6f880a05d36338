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

#include "spelab/prefixind_fixpoint.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "graph.hpp"
#include "spelab/errors.hpp"
#include "spelab/parallel.hpp"

namespace spelab {

namespace {

/// Bounds and weights are stored as levels: level 0 admits nothing, level
/// k+1 admits values up to the k-th element of the player's range, and
/// range size + 1 is +inf.
using Level = std::uint32_t;

class Levels
{
public:
    explicit Levels(const Game& game) : game_(game)
    {
        for (std::size_t e = 0; e < game.num_edges(); ++e) {
            std::vector<Level> w;
            for (PlayerId i = 0; i < game.num_players(); ++i) w.push_back(of(i, Value(game.weight(e, i))));
            edge_levels_.push_back(std::move(w));
        }
    }

    Level top(PlayerId i) const { return static_cast<Level>(game_.value_range(i).size() + 1); }

    /// Level of the largest range element that is <= bound.
    Level of(PlayerId i, const Value& bound) const
    {
        if (bound.is_pos_inf()) return top(i);
        if (bound.is_neg_inf()) return 0;
        const auto& range = game_.value_range(i);
        return static_cast<Level>(std::upper_bound(range.begin(), range.end(), bound.finite()) - range.begin());
    }

    Value value(PlayerId i, Level l) const
    {
        if (l == 0) return Value::neg_inf();
        if (l == top(i)) return Value::pos_inf();
        return Value(game_.value_range(i)[l - 1]);
    }

    Level weight(std::size_t edge, PlayerId i) const { return edge_levels_[edge][i]; }

private:
    const Game& game_;
    std::vector<std::vector<Level>> edge_levels_;
};

struct BoundState
{
    VertexId vertex = 0;
    std::vector<Level> bound;

    detail::StateIndex::Key key() const
    {
        detail::StateIndex::Key k{vertex};
        k.insert(k.end(), bound.begin(), bound.end());
        return k;
    }
};

class BoundRules
{
public:
    BoundRules(const Game& game, const Levels& levels, const BoundTable* guards)
        : game_(game), levels_(levels), guards_(guards)
    {
    }

    BoundState next(const BoundState& s, VertexId to) const
    {
        BoundState t{to, s.bound};
        if (!guards_) return t;
        const auto j = game_.owner(s.vertex);
        for (auto w : game_.successors(s.vertex)) {
            if (w == to) continue;
            auto idx = guards_->find(Stratum{game_.all_players(), w});
            if (!idx) throw ConsistencyError("deviation vertex missing from the table");
            const auto& g = guards_->guards[*idx][j];
            if (g.is_neg_inf()) continue;
            t.bound[j] = std::min(t.bound[j], levels_.of(j, g));
        }
        return t;
    }

private:
    const Game& game_;
    const Levels& levels_;
    const BoundTable* guards_;
};

class BoundProduct
{
public:
    BoundProduct(const Game& game, const BoundTable* guards) : game_(game), levels_(game), rules_(game, levels_, guards)
    {
    }

    const Levels& levels() const { return levels_; }

    std::uint32_t add(const BoundState& s)
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
            std::vector<std::size_t> edges;
            for (auto w : game_.successors(s.vertex)) {
                out.push_back(add(rules_.next(s, w)));
                edges.push_back(*game_.edge_index(s.vertex, w));
            }
            succ_.push_back(std::move(out));
            edge_.push_back(std::move(edges));
        }
    }

    std::size_t size() const { return states_.size(); }
    const BoundState& state(std::uint32_t s) const { return states_[s]; }
    const std::vector<std::uint32_t>& successors(std::uint32_t s) const { return succ_[s]; }

    /// Edge filter: product edge k out of s.
    using Filter = std::function<bool(std::uint32_t, std::size_t)>;

    /// Marks states lying in a good component of the filtered graph. `good`
    /// receives the component's internal edges as (state, edge slot) pairs.
    struct Components
    {
        std::vector<std::vector<std::uint32_t>> adj;
        detail::Sccs sccs;
        std::vector<char> good_comp;
    };

    Components components(const Filter& filter,
                          const std::function<bool(const std::vector<std::pair<std::uint32_t, std::size_t>>&)>& good) const
    {
        Components c;
        const auto n = static_cast<std::uint32_t>(states_.size());
        c.adj.assign(n, {});
        for (std::uint32_t s = 0; s < n; ++s) {
            for (std::size_t k = 0; k < succ_[s].size(); ++k) {
                if (filter(s, k)) c.adj[s].push_back(succ_[s][k]);
            }
        }
        c.sccs = detail::strongly_connected(c.adj);
        std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> internal(c.sccs.count);
        for (std::uint32_t s = 0; s < n; ++s) {
            for (std::size_t k = 0; k < succ_[s].size(); ++k) {
                if (filter(s, k) && c.sccs.comp[s] == c.sccs.comp[succ_[s][k]]) {
                    internal[c.sccs.comp[s]].push_back({s, k});
                }
            }
        }
        c.good_comp.assign(c.sccs.count, 0);
        for (std::uint32_t k = 0; k < c.sccs.count; ++k) {
            c.good_comp[k] = !internal[k].empty() && good(internal[k]);
        }
        return c;
    }

    /// States from which a good component is reachable along any edges.
    std::vector<char> reaching(const Components& c) const
    {
        const auto n = static_cast<std::uint32_t>(states_.size());
        std::vector<std::vector<std::uint32_t>> pred(n);
        for (std::uint32_t s = 0; s < n; ++s) {
            for (auto t : succ_[s]) pred[t].push_back(s);
        }
        std::vector<char> mark(n, 0);
        std::vector<std::uint32_t> stack;
        for (std::uint32_t s = 0; s < n; ++s) {
            if (c.good_comp[c.sccs.comp[s]]) {
                mark[s] = 1;
                stack.push_back(s);
            }
        }
        while (!stack.empty()) {
            auto t = stack.back();
            stack.pop_back();
            for (auto s : pred[t]) {
                if (!mark[s]) {
                    mark[s] = 1;
                    stack.push_back(s);
                }
            }
        }
        return mark;
    }

    /// Filter keeping edges whose weights respect the source bound for all players.
    Filter constraint_filter() const
    {
        return [this](std::uint32_t s, std::size_t k) {
            const auto e = edge_[s][k];
            for (PlayerId j = 0; j < game_.num_players(); ++j) {
                if (levels_.weight(e, j) > states_[s].bound[j]) return false;
            }
            return true;
        };
    }

    /// Good components for "player i gets at least level c" (c = 0: any valid play).
    Components threshold_components(PlayerId i, Level c) const
    {
        if (game_.cost_kind() == CostKind::LimInf) {
            Filter f = [this, i, c](std::uint32_t s, std::size_t k) { return levels_.weight(edge_[s][k], i) >= c; };
            return components(f, [this](const auto& internal) {
                const auto s = internal.front().first;
                for (PlayerId j = 0; j < game_.num_players(); ++j) {
                    Level lo = levels_.top(j);
                    for (auto [x, k] : internal) lo = std::min(lo, levels_.weight(edge_[x][k], j));
                    if (lo > states_[s].bound[j]) return false;
                }
                return true;
            });
        }
        return components(constraint_filter(), [this, i, c](const auto& internal) {
            Level hi = 0;
            for (auto [x, k] : internal) hi = std::max(hi, levels_.weight(edge_[x][k], i));
            return hi >= c;
        });
    }

    /// Per state and player: the best level over valid plays (0 if none).
    std::vector<std::vector<Level>> values() const
    {
        const auto n = states_.size();
        std::vector<std::vector<Level>> out(n, std::vector<Level>(game_.num_players(), 0));
        parallel_for(game_.num_players(), [&](std::size_t pi) {
            const auto i = static_cast<PlayerId>(pi);
            const auto range = static_cast<Level>(game_.value_range(i).size());
            for (Level c = range; c >= 1; --c) {
                const auto mark = reaching(threshold_components(i, c));
                for (std::size_t s = 0; s < n; ++s) {
                    if (mark[s] && out[s][i] == 0) out[s][i] = c;
                }
            }
        });
        return out;
    }

    /// A play from s with player i reaching level c inside a good component.
    Lasso witness(std::uint32_t s, PlayerId i, Level c) const
    {
        const auto comps = threshold_components(i, c);
        const auto& sccs = comps.sccs;
        std::vector<std::int64_t> parent(states_.size(), -1);
        std::vector<std::uint32_t> queue{s};
        parent[s] = s;
        std::optional<std::uint32_t> entry;
        for (std::size_t head = 0; head < queue.size() && !entry; ++head) {
            auto u = queue[head];
            if (comps.good_comp[sccs.comp[u]]) {
                entry = u;
                break;
            }
            for (auto t : succ_[u]) {
                if (parent[t] < 0) {
                    parent[t] = u;
                    queue.push_back(t);
                }
            }
        }
        if (!entry) throw ConsistencyError("no good component reachable in the bound product");
        std::vector<std::uint32_t> stem{*entry};
        while (stem.back() != s) stem.push_back(static_cast<std::uint32_t>(parent[stem.back()]));
        std::reverse(stem.begin(), stem.end());
        stem.pop_back();

        // Closed walk from the entry through every internal edge.
        const auto comp = sccs.comp[*entry];
        auto inside = [&](std::uint32_t x, std::uint32_t y) { return sccs.comp[x] == comp && sccs.comp[y] == comp; };
        std::vector<std::uint32_t> walk{*entry};
        for (std::uint32_t x = 0; x < states_.size(); ++x) {
            if (sccs.comp[x] != comp) continue;
            for (auto y : comps.adj[x]) {
                if (sccs.comp[y] != comp) continue;
                auto to_x = detail::bfs_path(comps.adj, walk.back(), x, inside);
                walk.insert(walk.end(), to_x.begin() + 1, to_x.end());
                walk.push_back(y);
            }
        }
        auto back = detail::bfs_path(comps.adj, walk.back(), *entry, inside);
        walk.insert(walk.end(), back.begin() + 1, back.end());
        walk.pop_back();

        Lasso l;
        for (auto x : stem) l.stem.push_back(states_[x].vertex);
        for (auto x : walk) l.cycle.push_back(states_[x].vertex);
        return canonical(std::move(l));
    }

    bool bounds_constant_on_cycles() const
    {
        const auto sccs = detail::strongly_connected(succ_);
        std::vector<std::optional<std::vector<Level>>> seen(sccs.count);
        for (std::uint32_t s = 0; s < states_.size(); ++s) {
            auto& b = seen[sccs.comp[s]];
            if (!b) {
                b = states_[s].bound;
            } else if (*b != states_[s].bound) {
                return false;
            }
        }
        return true;
    }

private:
    const Game& game_;
    Levels levels_;
    BoundRules rules_;
    detail::StateIndex index_;
    std::vector<BoundState> states_;
    std::vector<std::vector<std::uint32_t>> succ_;
    std::vector<std::vector<std::size_t>> edge_;
    std::size_t expanded_ = 0;
};

BoundState unconstrained(const Game& game, const Levels& levels, VertexId v)
{
    BoundState s{v, {}};
    for (PlayerId i = 0; i < game.num_players(); ++i) s.bound.push_back(levels.top(i));
    return s;
}

std::vector<Stratum> vertex_strata(const Game& game)
{
    std::vector<Stratum> out;
    for (VertexId v = 0; v < game.num_vertices(); ++v) out.push_back(Stratum{game.all_players(), v});
    return out;
}

BoundTable build_table(const Game& game, const BoundTable* guards)
{
    BoundProduct product(game, guards);
    std::vector<std::uint32_t> starts;
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        starts.push_back(product.add(unconstrained(game, product.levels(), v)));
    }
    product.expand();
    const auto values = product.values();
    const auto alive = product.reaching(product.threshold_components(0, 0));

    BoundTable table;
    table.mode = Mode::PrefixInd;
    table.strata = vertex_strata(game);
    index_strata(table);
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        std::vector<Cell> row;
        for (auto t : product.successors(starts[v])) {
            Cell cell;
            cell.nonempty = alive[t] != 0;
            cell.values.assign(game.num_players(), Value::neg_inf());
            if (cell.nonempty) {
                for (PlayerId i = 0; i < game.num_players(); ++i) {
                    cell.values[i] = product.levels().value(i, values[t][i]);
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

void require_pi(const Game& game)
{
    if (game.is_reachability()) throw InputError("prefix-ind mode needs a liminf or limsup game");
}

} // namespace

BoundTable initial_table_pi(const Game& game)
{
    require_pi(game);
    auto table = build_table(game, nullptr);
    table.refresh_guards(nullptr);
    return table;
}

BoundTable step_pi(const Game& game, const BoundTable& table)
{
    require_pi(game);
    auto next = build_table(game, &table);
    next.refresh_guards(&table);
    return next;
}

FixpointReport run_fixpoint_pi(const Game& game)
{
    FixpointReport report;
    report.mode = Mode::PrefixInd;
    report.iterations.push_back(initial_table_pi(game));
    while (true) {
        auto next = step_pi(game, report.iterations.back());
        if (next.same_entries(report.iterations.back())) break;
        report.iterations.push_back(std::move(next));
    }
    report.alpha_star = report.iterations.size() - 1;

    const auto& final_table = report.final_table();
    report.exists = true;
    for (auto v : game.reachable_from(game.initial())) {
        if (!final_table.nonempty(v)) report.exists = false;
    }

    BoundProduct product(game, constraint_table(report));
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        if (!final_table.nonempty(v)) continue;
        const auto agg = final_table.aggregated(v);
        const auto start = product.add(unconstrained(game, product.levels(), v));
        product.expand();
        for (PlayerId i = 0; i < game.num_players(); ++i) {
            StratumWitness w;
            w.player = i;
            w.stratum = final_table.strata[v];
            w.play = product.witness(start, i, product.levels().of(i, agg[i]));
            w.cost = cost(game, w.play);
            report.witnesses.push_back(std::move(w));
        }
    }
    return report;
}

std::optional<Lasso> constrained_existence_pi(const Game& game, const FixpointReport& report,
                                              const std::vector<Value>& bounds)
{
    BoundProduct product(game, constraint_table(report));
    BoundState start{game.initial(), {}};
    for (PlayerId i = 0; i < game.num_players(); ++i) start.bound.push_back(product.levels().of(i, bounds[i]));
    const auto s = product.add(start);
    product.expand();
    const auto alive = product.reaching(product.threshold_components(0, 0));
    if (!alive[s]) return std::nullopt;
    return product.witness(s, 0, 0);
}

bool pi_member(const Game& game, const BoundTable* guards, VertexId vertex, const Lasso& play)
{
    validate(game, play);
    if (play.first() != vertex) return false;
    const Levels levels(game);
    const BoundRules rules(game, levels, guards);
    auto s = unconstrained(game, levels, vertex);
    std::set<std::pair<std::size_t, std::vector<Level>>> seen;
    for (std::size_t n = 0;; ++n) {
        if (n >= play.stem.size()) {
            auto phase = (n - play.stem.size()) % play.cycle.size();
            if (!seen.emplace(phase, s.bound).second) break;
        }
        s = rules.next(s, play.at(n + 1));
    }
    const auto costs = cost(game, play);
    for (PlayerId j = 0; j < game.num_players(); ++j) {
        if (costs[j] > levels.value(j, s.bound[j])) return false;
    }
    return true;
}

bool cycle_constant_bounds(const Game& game, const BoundTable* guards)
{
    BoundProduct product(game, guards);
    for (VertexId v = 0; v < game.num_vertices(); ++v) product.add(unconstrained(game, product.levels(), v));
    product.expand();
    return product.bounds_constant_on_cycles();
}

} // namespace spelab
