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

#include "spelab/eq_check.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "graph.hpp"
#include "spelab/errors.hpp"

namespace spelab {

std::string to_string(CheckKind kind)
{
    switch (kind) {
    case CheckKind::NE: return "ne";
    case CheckKind::VeryWeakNE: return "very-weak-ne";
    case CheckKind::WeakNEBounded: return "weak-ne-bounded";
    case CheckKind::VeryWeakSPE: return "very-weak-spe";
    }
    return "?";
}

namespace {

using detail::StateIndex;
using Key = StateIndex::Key;

Key state_key(VertexId v, std::uint64_t extra, const MemoryVector& mem)
{
    Key key;
    key.reserve(mem.size() + 2);
    key.push_back(v);
    key.push_back(extra);
    key.insert(key.end(), mem.begin(), mem.end());
    return key;
}

MemoryVector key_memory(const Key& key) { return MemoryVector(key.begin() + 2, key.end()); }

History without_last(History h)
{
    if (!h.empty()) h.pop_back();
    return h;
}

/// Caches profile outcomes by (vertex, memory).
class OutcomeCache
{
public:
    OutcomeCache(const Game& game, const Profile& profile) : game_(game), profile_(profile) {}

    const Lasso& get(VertexId v, const MemoryVector& mem)
    {
        auto key = state_key(v, 0, mem);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, outcome_from(game_, profile_, v, mem)).first;
        return it->second;
    }

private:
    const Game& game_;
    const Profile& profile_;
    std::map<Key, Lasso> cache_;
};

/// Positions along `play` where `player` leaves the profile, with the
/// memories starting from `mem` (already updated with play.at(0)). The bool
/// is true when deviations recur forever.
std::pair<std::vector<std::size_t>, bool> deviation_positions(const Game& game, const Profile& profile,
                                                              PlayerId player, const Lasso& play, MemoryVector mem)
{
    std::vector<std::size_t> out;
    std::map<std::pair<std::size_t, MemoryVector>, std::size_t> seen;
    for (std::size_t n = 0;; ++n) {
        const auto v = play.at(n);
        const auto next = play.at(n + 1);
        if (n >= play.stem.size()) {
            auto phase = (n - play.stem.size()) % play.cycle.size();
            auto [it, inserted] = seen.try_emplace({phase, mem}, n);
            if (!inserted) {
                bool recurring = std::any_of(out.begin(), out.end(), [&](auto p) { return p >= it->second; });
                return {out, recurring};
            }
        }
        if (game.owner(v) == player && choice(game, profile, mem, v) != next) out.push_back(n);
        mem = advance(profile, mem, next);
    }
}

Witness make_witness(const Game& game, const History& history, PlayerId player, VertexId prescribed,
                     VertexId alternative, Lasso prescribed_play, Lasso deviating_play, std::size_t steps)
{
    Witness w;
    w.history = history;
    w.player = player;
    w.prescribed = prescribed;
    w.alternative = alternative;
    w.prescribed_play = canonical(std::move(prescribed_play));
    w.deviating_play = canonical(std::move(deviating_play));
    w.prescribed_cost = cost(game, w.prescribed_play);
    w.deviating_cost = cost(game, w.deviating_play);
    w.steps = steps;
    return w;
}

/// Compares suffix costs of a one-shot deviation at vertex v: the
/// continuation from v against v followed by the alternative play.
bool one_shot_profitable(const Game& game, PlayerId player, const Lasso& cont, const Lasso& alt)
{
    auto c = player_cost(game, cont, player);
    auto a = player_cost(game, alt, player);
    if (game.is_reachability()) {
        if (a.is_pos_inf()) return false;
        return Value(a.as_integer() + 1) < c;
    }
    return a < c;
}

/// Explores the subgame tree quotient: (vertex, survivors after it, memory).
struct SubgameGraph
{
    StateIndex index;
    std::vector<std::uint32_t> parent;
};

History history_to(const SubgameGraph& g, std::uint32_t id)
{
    History h;
    for (auto s = id;; s = g.parent[s]) {
        h.push_back(static_cast<VertexId>(g.index.key(s)[0]));
        if (g.parent[s] == s) break;
    }
    std::reverse(h.begin(), h.end());
    return h;
}

std::optional<Witness> one_shot_at(const Game& game, const Profile& profile, OutcomeCache& cache,
                                   const History& history, VertexId v, PlayerSet survivors, const MemoryVector& mem)
{
    const auto owner = game.owner(v);
    if (!survivors.contains(owner)) return std::nullopt;
    const auto prescribed = choice(game, profile, mem, v);
    const auto cont = cache.get(v, mem);
    for (auto w : game.successors(v)) {
        if (w == prescribed) continue;
        const auto& alt = cache.get(w, advance(profile, mem, w));
        if (!one_shot_profitable(game, owner, cont, alt)) continue;
        return make_witness(game, history, owner, prescribed, w, prepend(game, without_last(history), cont),
                            prepend(game, history, alt), 1);
    }
    return std::nullopt;
}

PlayerSet survivors_after(const Game& game, PlayerSet before, VertexId v)
{
    return game.is_reachability() ? before.without(game.targets_at(v)) : before;
}

} // namespace

Verdict check_very_weak_spe(const Game& game, const Profile& profile)
{
    profile.validate(game);
    Verdict verdict{CheckKind::VeryWeakSPE, true, std::nullopt};
    OutcomeCache cache(game, profile);
    SubgameGraph g;
    const auto v0 = game.initial();
    g.index.intern(state_key(v0, survivors_after(game, game.all_players(), v0).bits(),
                             advance(profile, initial_memory(profile), v0)));
    g.parent.push_back(0);
    for (std::uint32_t id = 0; id < g.index.size(); ++id) {
        const auto key = g.index.key(id);
        const auto v = static_cast<VertexId>(key[0]);
        const PlayerSet survivors(key[1]);
        const auto mem = key_memory(key);
        if (auto w = one_shot_at(game, profile, cache, history_to(g, id), v, survivors, mem)) {
            verdict.holds = false;
            verdict.witness = std::move(w);
            return verdict;
        }
        for (auto next : game.successors(v)) {
            auto [nid, inserted] = g.index.intern(
                state_key(next, survivors_after(game, survivors, next).bits(), advance(profile, mem, next)));
            if (inserted) g.parent.push_back(id);
        }
    }
    return verdict;
}

Verdict check_very_weak_ne(const Game& game, const Profile& profile)
{
    profile.validate(game);
    Verdict verdict{CheckKind::VeryWeakNE, true, std::nullopt};
    OutcomeCache cache(game, profile);
    const auto v0 = game.initial();
    auto w = one_shot_at(game, profile, cache, History{v0}, v0, survivors_after(game, game.all_players(), v0),
                         advance(profile, initial_memory(profile), v0));
    if (w) {
        verdict.holds = false;
        verdict.witness = std::move(w);
    }
    return verdict;
}

namespace {

/// Layered product from a subgame root for one deviator: nodes are
/// (vertex, deviation steps used, memory). With an unbounded budget the
/// layer component stays 0 and every move of the deviator is allowed.
struct DeviatorProduct
{
    StateIndex index;
    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<std::uint32_t> parent;
};

DeviatorProduct build_deviator_product(const Game& game, const Profile& profile, PlayerId player, VertexId root,
                                       const MemoryVector& root_mem, std::optional<std::size_t> budget)
{
    DeviatorProduct p;
    p.index.intern(state_key(root, 0, root_mem));
    p.parent.push_back(0);
    for (std::uint32_t id = 0; id < p.index.size(); ++id) {
        const auto key = p.index.key(id);
        const auto v = static_cast<VertexId>(key[0]);
        const auto used = key[1];
        const auto mem = key_memory(key);
        std::vector<std::uint32_t> out;
        auto push = [&](VertexId w, std::uint64_t layer) {
            auto [nid, inserted] = p.index.intern(state_key(w, layer, advance(profile, mem, w)));
            if (inserted) p.parent.push_back(id);
            out.push_back(nid);
        };
        const auto prescribed = choice(game, profile, mem, v);
        if (game.owner(v) != player) {
            push(prescribed, used);
        } else {
            for (auto w : game.successors(v)) {
                if (w == prescribed || !budget) {
                    push(w, used);
                } else if (used < *budget) {
                    push(w, used + 1);
                }
            }
        }
        p.adj.push_back(std::move(out));
    }
    return p;
}

History product_path(const DeviatorProduct& p, const std::vector<std::uint32_t>& nodes)
{
    History h;
    for (auto n : nodes) h.push_back(static_cast<VertexId>(p.index.key(n)[0]));
    return h;
}

std::vector<std::uint32_t> tree_path(const DeviatorProduct& p, std::uint32_t id)
{
    std::vector<std::uint32_t> nodes;
    for (auto s = id;; s = p.parent[s]) {
        nodes.push_back(s);
        if (p.parent[s] == s) break;
    }
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
}

/// Builds the witness for a deviating suffix play from the subgame root.
/// `prior` is the history strictly before the subgame root.
std::optional<Witness> finish_witness(const Game& game, const Profile& profile, const History& prior,
                                      const MemoryVector& root_mem, PlayerId player, const Lasso& cont,
                                      Lasso suffix)
{
    suffix = canonical(std::move(suffix));
    auto [positions, recurring] = deviation_positions(game, profile, player, suffix, root_mem);
    if (positions.empty()) return std::nullopt;
    History history = prior;
    for (std::size_t n = 0; n <= positions.front(); ++n) history.push_back(suffix.at(n));
    MemoryVector mem = root_mem;
    for (std::size_t n = 0; n < positions.front(); ++n) mem = advance(profile, mem, suffix.at(n + 1));
    const auto v = suffix.at(positions.front());
    return make_witness(game, history, player, choice(game, profile, mem, v), suffix.at(positions.front() + 1),
                        prepend(game, prior, cont), prepend(game, prior, suffix),
                        recurring ? std::numeric_limits<std::size_t>::max() : positions.size());
}

/// Lasso through product nodes: path to `entry`, then the closed walk `loop`
/// (starting and ending at entry).
Lasso node_lasso(const DeviatorProduct& p, const std::vector<std::uint32_t>& to_entry,
                 const std::vector<std::uint32_t>& loop)
{
    Lasso l;
    l.stem = product_path(p, to_entry);
    l.stem.pop_back();
    l.cycle = product_path(p, loop);
    l.cycle.pop_back();
    return l;
}

/// Best deviation value for `player` from the subgame root. Returns the
/// deviating suffix play when it strictly beats `cont`.
std::optional<Lasso> best_deviation(const Game& game, const Profile& profile, PlayerId player, VertexId root,
                                    const MemoryVector& root_mem, std::optional<std::size_t> budget,
                                    const Lasso& cont, OutcomeCache& cache)
{
    const auto p = build_deviator_product(game, profile, player, root, root_mem, budget);
    const auto current = player_cost(game, cont, player);
    const auto n = static_cast<std::uint32_t>(p.index.size());
    auto vertex_of = [&](std::uint32_t id) { return static_cast<VertexId>(p.index.key(id)[0]); };

    if (game.is_reachability()) {
        // BFS order of interning is breadth-first, so the first target node is closest.
        for (std::uint32_t id = 0; id < n; ++id) {
            if (!game.is_target(player, vertex_of(id))) continue;
            auto nodes = tree_path(p, id);
            if (!(Value(static_cast<std::int64_t>(nodes.size() - 1)) < current)) return std::nullopt;
            const auto key = p.index.key(id);
            return prepend(game, without_last(product_path(p, nodes)), cache.get(vertex_of(id), key_memory(key)));
        }
        return std::nullopt;
    }

    auto weight = [&](std::uint32_t a, std::uint32_t b) {
        return game.weight(*game.edge_index(vertex_of(a), vertex_of(b)), player);
    };

    if (budget) {
        // Finitely many deviations: the play eventually follows the profile.
        std::optional<std::uint32_t> best;
        Value best_cost = current;
        for (std::uint32_t id = 0; id < n; ++id) {
            auto c = player_cost(game, cache.get(vertex_of(id), key_memory(p.index.key(id))), player);
            if (c < best_cost) {
                best_cost = c;
                best = id;
            }
        }
        if (!best) return std::nullopt;
        auto nodes = tree_path(p, *best);
        return prepend(game, without_last(product_path(p, nodes)),
                       cache.get(vertex_of(*best), key_memory(p.index.key(*best))));
    }

    auto cycle_through = [&](std::uint32_t a, std::uint32_t b, auto allow) {
        auto back = detail::bfs_path(p.adj, b, a, allow);
        std::vector<std::uint32_t> loop{a};
        loop.insert(loop.end(), back.begin(), back.end());
        return node_lasso(p, tree_path(p, a), loop);
    };

    if (game.cost_kind() == CostKind::LimInf) {
        const auto sccs = detail::strongly_connected(p.adj);
        std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
        for (std::uint32_t a = 0; a < n; ++a) {
            for (auto b : p.adj[a]) {
                if (sccs.comp[a] != sccs.comp[b]) continue;
                if (!best || weight(a, b) < weight(best->first, best->second)) best = std::pair{a, b};
            }
        }
        if (!best || !(Value(weight(best->first, best->second)) < current)) return std::nullopt;
        const auto c = sccs.comp[best->first];
        return cycle_through(best->first, best->second,
                             [&](auto x, auto y) { return sccs.comp[x] == c && sccs.comp[y] == c; });
    }

    for (const auto& t : game.value_range(player)) {
        if (!(Value(t) < current)) break;
        auto allowed = [&](std::uint32_t a, std::uint32_t b) { return !(t < weight(a, b)); };
        std::vector<std::vector<std::uint32_t>> filtered(n);
        for (std::uint32_t a = 0; a < n; ++a) {
            for (auto b : p.adj[a]) {
                if (allowed(a, b)) filtered[a].push_back(b);
            }
        }
        const auto sccs = detail::strongly_connected(filtered);
        for (std::uint32_t a = 0; a < n; ++a) {
            for (auto b : filtered[a]) {
                if (sccs.comp[a] != sccs.comp[b]) continue;
                const auto c = sccs.comp[a];
                return cycle_through(a, b, [&](auto x, auto y) {
                    return sccs.comp[x] == c && sccs.comp[y] == c && allowed(x, y);
                });
            }
        }
    }
    return std::nullopt;
}

Verdict deviation_check(const Game& game, const Profile& profile, CheckKind kind, std::optional<std::size_t> budget,
                        const History& history)
{
    profile.validate(game);
    validate(game, history);
    if (history.empty() || history.front() != game.initial()) {
        throw StructureError("subgame history must start at the initial vertex");
    }
    Verdict verdict{kind, true, std::nullopt};
    OutcomeCache cache(game, profile);
    auto mem = initial_memory(profile);
    for (auto v : history) mem = advance(profile, mem, v);
    const auto root = history.back();
    const auto prior = without_last(history);
    const auto survivors = game.is_reachability() ? survivor_set(game, history) : game.all_players();
    const auto cont = cache.get(root, mem);
    for (PlayerId player = 0; player < game.num_players(); ++player) {
        if (!survivors.contains(player)) continue;
        auto suffix = best_deviation(game, profile, player, root, mem, budget, cont, cache);
        if (!suffix) continue;
        auto w = finish_witness(game, profile, prior, mem, player, cont, std::move(*suffix));
        if (!w) throw ConsistencyError("profitable play without a deviation step");
        verdict.holds = false;
        verdict.witness = std::move(w);
        return verdict;
    }
    return verdict;
}

} // namespace

Verdict check_ne(const Game& game, const Profile& profile)
{
    return deviation_check(game, profile, CheckKind::NE, std::nullopt, History{game.initial()});
}

Verdict check_weak_ne_bounded(const Game& game, const Profile& profile, std::size_t k)
{
    return check_weak_ne_bounded_at(game, profile, k, History{game.initial()});
}

Verdict check_weak_ne_bounded_at(const Game& game, const Profile& profile, std::size_t k, const History& history)
{
    if (k == 0) throw InputError("deviation budget must be at least 1");
    return deviation_check(game, profile, CheckKind::WeakNEBounded, k, history);
}

std::vector<History> subgame_histories(const Game& game, std::size_t depth)
{
    std::vector<History> out;
    if (depth == 0) return out;
    History h{game.initial()};
    // Depth-first, successors ascending: lexicographic order.
    std::vector<std::size_t> next{0};
    out.push_back(h);
    while (!h.empty()) {
        auto succ = game.successors(h.back());
        if (h.size() < depth && next.back() < succ.size()) {
            h.push_back(succ[next.back()++]);
            next.push_back(0);
            out.push_back(h);
        } else {
            h.pop_back();
            next.pop_back();
        }
    }
    return out;
}

bool replay_witness(const Game& game, const Profile& profile, const Witness& witness)
{
    const auto& h = witness.history;
    if (h.empty() || h.front() != game.initial()) return false;
    validate(game, h);
    if (canonical(prepend(game, without_last(h), outcome(game, profile, h.back(), h))) != witness.prescribed_play) {
        return false;
    }
    const auto& dev = witness.deviating_play;
    for (std::size_t n = 0; n < h.size(); ++n) {
        if (dev.at(n) != h[n]) return false;
    }
    if (dev.at(h.size()) != witness.alternative) return false;
    // The deviator leaves the profile at the last vertex of the history.
    MemoryVector at_h = initial_memory(profile);
    for (auto v : h) at_h = advance(profile, at_h, v);
    if (game.owner(h.back()) != witness.player || choice(game, profile, at_h, h.back()) == witness.alternative) {
        return false;
    }
    // After the history, everyone but the deviator follows the profile.
    MemoryVector mem = advance(profile, initial_memory(profile), dev.at(0));
    std::map<std::pair<std::size_t, MemoryVector>, bool> seen;
    for (std::size_t n = 0;; ++n) {
        const auto v = dev.at(n);
        if (n >= dev.stem.size()) {
            auto phase = (n - dev.stem.size()) % dev.cycle.size();
            if (!seen.try_emplace({phase, mem}, true).second) break;
        }
        if (n + 1 >= h.size() && game.owner(v) != witness.player && choice(game, profile, mem, v) != dev.at(n + 1)) {
            return false;
        }
        mem = advance(profile, mem, dev.at(n + 1));
    }
    auto p = witness.player;
    return cost(game, witness.prescribed_play) == witness.prescribed_cost
           && cost(game, dev) == witness.deviating_cost && witness.deviating_cost[p] < witness.prescribed_cost[p];
}

} // namespace spelab
