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

#include "spelab/game.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "spelab/errors.hpp"

namespace spelab {

std::vector<PlayerId> PlayerSet::members() const
{
    std::vector<PlayerId> out;
    for (auto bits = bits_; bits != 0; bits &= bits - 1) {
        out.push_back(static_cast<PlayerId>(std::countr_zero(bits)));
    }
    return out;
}

std::string to_string(CostKind kind)
{
    switch (kind) {
    case CostKind::Reachability: return "reachability";
    case CostKind::LimInf: return "liminf";
    case CostKind::LimSup: return "limsup";
    }
    return "?";
}

Game::Game(Spec spec)
    : spec_(spec),
      players_(std::move(spec.players)),
      vertices_(std::move(spec.vertices)),
      owners_(std::move(spec.owners)),
      edges_(std::move(spec.edges)),
      kind_(spec.kind),
      targets_(std::move(spec.targets)),
      initial_(spec.initial)
{
    if (players_.empty()) throw InputError("game has no players");
    if (players_.size() > 64) throw InputError("at most 64 players are supported");
    if (vertices_.empty()) throw InputError("game has no vertices");
    std::set<std::string> seen_players;
    for (const auto& p : players_) {
        if (!seen_players.insert(p).second) throw InputError("duplicate player '" + p + "'");
    }
    for (VertexId v = 0; v < vertices_.size(); ++v) {
        if (!vertex_lookup_.emplace(vertices_[v], v).second) {
            throw InputError("duplicate vertex '" + vertices_[v] + "'");
        }
    }
    if (owners_.size() != vertices_.size()) throw InputError("owner list does not cover all vertices");
    for (VertexId v = 0; v < vertices_.size(); ++v) {
        if (owners_[v] >= players_.size()) {
            throw InputError("vertex '" + vertices_[v] + "' has an unknown owner");
        }
    }
    if (initial_ >= vertices_.size()) throw InputError("initial vertex out of range");

    succ_.assign(vertices_.size(), {});
    succ_edge_.assign(vertices_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (edge.from >= vertices_.size() || edge.to >= vertices_.size()) {
            throw InputError("edge endpoint out of range");
        }
        if (kind_ != CostKind::Reachability && edge.weights.size() != players_.size()) {
            throw InputError("edge " + vertices_[edge.from] + "->" + vertices_[edge.to] + " needs "
                             + std::to_string(players_.size()) + " weights");
        }
        succ_edge_[edge.from].push_back(e);
    }
    for (VertexId v = 0; v < vertices_.size(); ++v) {
        auto& out = succ_edge_[v];
        std::sort(out.begin(), out.end(), [&](auto a, auto b) { return edges_[a].to < edges_[b].to; });
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (k > 0 && edges_[out[k]].to == edges_[out[k - 1]].to) {
                throw InputError("duplicate edge " + vertices_[v] + "->" + vertices_[edges_[out[k]].to]);
            }
            succ_[v].push_back(edges_[out[k]].to);
        }
        if (out.empty()) throw InputError("vertex '" + vertices_[v] + "' has no outgoing edge");
    }

    targets_at_.assign(vertices_.size(), PlayerSet{});
    if (kind_ == CostKind::Reachability) {
        if (targets_.size() != players_.size()) throw InputError("target list does not cover all players");
        for (PlayerId p = 0; p < targets_.size(); ++p) {
            auto& t = targets_[p];
            std::sort(t.begin(), t.end());
            t.erase(std::unique(t.begin(), t.end()), t.end());
            for (auto v : t) {
                if (v >= vertices_.size()) throw InputError("target vertex out of range");
                targets_at_[v].insert(p);
            }
        }
    } else {
        targets_.assign(players_.size(), {});
        ranges_.assign(players_.size(), {});
        for (PlayerId p = 0; p < players_.size(); ++p) {
            auto& range = ranges_[p];
            for (const auto& edge : edges_) range.push_back(edge.weights[p]);
            std::sort(range.begin(), range.end());
            range.erase(std::unique(range.begin(), range.end()), range.end());
        }
    }
    if (ranges_.empty()) ranges_.assign(players_.size(), {});
}

std::optional<VertexId> Game::find_vertex(const std::string& name) const
{
    auto it = vertex_lookup_.find(name);
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<PlayerId> Game::find_player(const std::string& name) const
{
    auto it = std::find(players_.begin(), players_.end(), name);
    if (it == players_.end()) return std::nullopt;
    return static_cast<PlayerId>(it - players_.begin());
}

std::optional<std::size_t> Game::edge_index(VertexId from, VertexId to) const
{
    if (from >= succ_.size()) return std::nullopt;
    const auto& s = succ_[from];
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it == s.end() || *it != to) return std::nullopt;
    return succ_edge_[from][static_cast<std::size_t>(it - s.begin())];
}

std::vector<VertexId> Game::reachable_from(VertexId from) const
{
    std::vector<char> seen(num_vertices(), 0);
    std::vector<VertexId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : successors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < num_vertices(); ++v) {
        if (seen[v]) out.push_back(v);
    }
    return out;
}

Game Game::with_initial(VertexId v) const
{
    auto spec = spec_;
    spec.initial = v;
    return Game(std::move(spec));
}

VertexId Lasso::at(std::size_t n) const
{
    if (n < stem.size()) return stem[n];
    return cycle[(n - stem.size()) % cycle.size()];
}

namespace {

std::size_t primitive_period(const std::vector<VertexId>& cycle)
{
    const auto n = cycle.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t k = p; k < n && periodic; ++k) periodic = cycle[k] == cycle[k - p];
        if (periodic) return p;
    }
    return n;
}

} // namespace

Lasso canonical(Lasso lasso)
{
    if (lasso.cycle.empty()) return lasso;
    lasso.cycle.resize(primitive_period(lasso.cycle));
    while (!lasso.stem.empty() && lasso.stem.back() == lasso.cycle.back()) {
        lasso.stem.pop_back();
        std::rotate(lasso.cycle.rbegin(), lasso.cycle.rbegin() + 1, lasso.cycle.rend());
    }
    return lasso;
}

bool is_canonical(const Lasso& lasso)
{
    if (lasso.cycle.empty()) return false;
    if (!lasso.stem.empty() && lasso.stem.back() == lasso.cycle.back()) return false;
    return primitive_period(lasso.cycle) == lasso.cycle.size();
}

void validate(const Game& game, const History& history)
{
    for (auto v : history) {
        if (v >= game.num_vertices()) throw StructureError("history mentions an unknown vertex");
    }
    for (std::size_t k = 0; k + 1 < history.size(); ++k) {
        if (!game.has_edge(history[k], history[k + 1])) {
            throw StructureError("no edge " + game.vertex_name(history[k]) + "->"
                                 + game.vertex_name(history[k + 1]));
        }
    }
}

void validate(const Game& game, const Lasso& lasso)
{
    if (lasso.cycle.empty()) throw StructureError("lasso with an empty cycle");
    History all = lasso.stem;
    all.insert(all.end(), lasso.cycle.begin(), lasso.cycle.end());
    all.push_back(lasso.cycle.front());
    validate(game, all);
}

Lasso prepend(const Game& game, const History& h, const Lasso& rho)
{
    if (!h.empty() && !game.has_edge(h.back(), rho.first())) {
        throw StructureError("no edge " + game.vertex_name(h.back()) + "->" + game.vertex_name(rho.first()));
    }
    Lasso out;
    out.stem = h;
    out.stem.insert(out.stem.end(), rho.stem.begin(), rho.stem.end());
    out.cycle = rho.cycle;
    return out;
}

Value player_cost(const Game& game, const Lasso& play, PlayerId player)
{
    if (game.is_reachability()) {
        for (std::size_t n = 0; n < play.length(); ++n) {
            if (game.is_target(player, play.at(n))) return Value(static_cast<std::int64_t>(n));
        }
        return Value::pos_inf();
    }
    const bool use_min = game.cost_kind() == CostKind::LimInf;
    std::optional<Rational> best;
    const auto& cyc = play.cycle;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
        auto e = game.edge_index(cyc[k], cyc[(k + 1) % cyc.size()]);
        if (!e) throw StructureError("lasso cycle leaves the arena");
        const auto& w = game.weight(*e, player);
        if (!best || (use_min ? w < *best : *best < w)) best = w;
    }
    return Value(*best);
}

std::vector<Value> cost(const Game& game, const Lasso& play)
{
    validate(game, play);
    std::vector<Value> out;
    out.reserve(game.num_players());
    for (PlayerId p = 0; p < game.num_players(); ++p) out.push_back(player_cost(game, play, p));
    return out;
}

PlayerSet survivor_set(const Game& game, const History& history)
{
    auto out = game.all_players();
    for (auto v : history) out = out.without(game.targets_at(v));
    return out;
}

bool shift_cost_identity_check(const Game& game, const History& h, const Lasso& rho)
{
    auto whole = prepend(game, h, rho);
    auto survivors = survivor_set(game, h);
    const auto shift = static_cast<std::int64_t>(h.size());
    for (auto p : survivors.members()) {
        auto suffix = player_cost(game, rho, p);
        auto full = player_cost(game, whole, p);
        auto expected = suffix.is_finite() ? Value(suffix.as_integer() + shift) : suffix;
        if (full != expected) return false;
    }
    return true;
}

std::string format_history(const Game& game, const History& history)
{
    std::string out;
    for (std::size_t k = 0; k < history.size(); ++k) {
        if (k) out += ",";
        out += game.vertex_name(history[k]);
    }
    return out;
}

std::string format_lasso(const Game& game, const Lasso& lasso)
{
    return format_history(game, lasso.stem) + "|" + format_history(game, lasso.cycle);
}

} // namespace spelab
