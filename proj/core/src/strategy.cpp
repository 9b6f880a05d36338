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

#include "spelab/strategy.hpp"

#include <algorithm>
#include <map>

#include "graph.hpp"
#include "spelab/errors.hpp"

namespace spelab {

MooreStrategy::MooreStrategy(PlayerId player, std::size_t num_vertices, MemoryState memory_states,
                             MemoryState initial)
    : player_(player),
      num_vertices_(num_vertices),
      memory_states_(memory_states),
      initial_(initial),
      update_(static_cast<std::size_t>(memory_states) * num_vertices),
      output_(static_cast<std::size_t>(memory_states) * num_vertices, kNoVertex)
{
    if (memory_states == 0) throw StructureError("strategy needs at least one memory state");
    if (initial >= memory_states) throw StructureError("initial memory state out of range");
    // Unspecified updates keep the current state.
    for (MemoryState m = 0; m < memory_states; ++m) {
        for (VertexId v = 0; v < num_vertices; ++v) update_[slot(m, v)] = m;
    }
}

MooreStrategy MooreStrategy::positional(const Game& game, PlayerId player, const std::vector<VertexId>& choice)
{
    MooreStrategy s(player, game.num_vertices(), 1, 0);
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        if (game.owner(v) == player) s.set_output(0, v, choice.at(v));
    }
    return s;
}

void MooreStrategy::validate(const Game& game) const
{
    if (num_vertices_ != game.num_vertices()) throw StructureError("strategy built for a different arena");
    for (MemoryState m = 0; m < memory_states_; ++m) {
        for (VertexId v = 0; v < num_vertices_; ++v) {
            if (update(m, v) >= memory_states_) throw StructureError("memory update leaves the state space");
            if (game.owner(v) != player_) continue;
            auto out = output(m, v);
            if (out == kNoVertex) {
                throw StructureError("strategy of " + game.player_name(player_) + " has no output at "
                                     + game.vertex_name(v) + " in memory state " + std::to_string(m));
            }
            if (!game.has_edge(v, out)) {
                throw StructureError("strategy of " + game.player_name(player_) + " moves along non-edge "
                                     + game.vertex_name(v) + "->" + game.vertex_name(out));
            }
        }
    }
}

void Profile::validate(const Game& game) const
{
    if (strategies.size() != game.num_players()) throw StructureError("profile does not cover every player");
    for (PlayerId p = 0; p < strategies.size(); ++p) {
        if (strategies[p].player() != p) throw StructureError("profile strategies are out of order");
        strategies[p].validate(game);
    }
}

Profile positional_profile(const Game& game, const std::vector<VertexId>& choice)
{
    Profile out;
    for (PlayerId p = 0; p < game.num_players(); ++p) out.strategies.push_back(MooreStrategy::positional(game, p, choice));
    return out;
}

MemoryVector initial_memory(const Profile& profile)
{
    MemoryVector mem;
    mem.reserve(profile.size());
    for (const auto& s : profile.strategies) mem.push_back(s.initial());
    return mem;
}

MemoryVector advance(const Profile& profile, const MemoryVector& mem, VertexId v)
{
    MemoryVector next(mem.size());
    for (std::size_t p = 0; p < mem.size(); ++p) next[p] = profile.strategies[p].update(mem[p], v);
    return next;
}

VertexId choice(const Game& game, const Profile& profile, const MemoryVector& mem, VertexId v)
{
    auto owner = game.owner(v);
    return profile.strategies[owner].output(mem[owner], v);
}

namespace {

std::vector<std::uint64_t> make_key(VertexId v, const MemoryVector& mem)
{
    std::vector<std::uint64_t> key;
    key.reserve(mem.size() + 1);
    key.push_back(v);
    key.insert(key.end(), mem.begin(), mem.end());
    return key;
}

} // namespace

Lasso outcome_from(const Game& game, const Profile& profile, VertexId v, MemoryVector mem)
{
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    std::vector<VertexId> seq;
    while (true) {
        auto [it, inserted] = seen.try_emplace(make_key(v, mem), seq.size());
        if (!inserted) {
            Lasso out;
            out.stem.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(it->second));
            out.cycle.assign(seq.begin() + static_cast<std::ptrdiff_t>(it->second), seq.end());
            return canonical(std::move(out));
        }
        seq.push_back(v);
        auto next = choice(game, profile, mem, v);
        mem = advance(profile, mem, next);
        v = next;
    }
}

Lasso outcome(const Game& game, const Profile& profile, VertexId start, const std::optional<History>& prior)
{
    auto mem = initial_memory(profile);
    if (prior && !prior->empty()) {
        if (prior->back() != start) throw StructureError("prior history does not end at the start vertex");
        validate(game, *prior);
        for (auto v : *prior) mem = advance(profile, mem, v);
    } else {
        mem = advance(profile, mem, start);
    }
    return outcome_from(game, profile, start, std::move(mem));
}

std::string to_string(DeviationClass c)
{
    switch (c) {
    case DeviationClass::None: return "none";
    case DeviationClass::OneShot: return "one-shot";
    case DeviationClass::Finite: return "finite";
    case DeviationClass::Infinite: return "infinite";
    }
    return "?";
}

DeviationReport deviation_steps(const Game& game, const Profile& profile, const MooreStrategy& deviant,
                                VertexId start, std::size_t horizon)
{
    const auto dev = deviant.player();
    auto mem = advance(profile, initial_memory(profile), start);
    auto dmem = deviant.update(deviant.initial(), start);
    auto v = start;

    struct Position { VertexId v; VertexId prescribed; VertexId taken; };
    std::vector<Position> positions;
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    std::size_t loop_start = 0;
    while (true) {
        auto key = make_key(v, mem);
        key.push_back(dmem);
        auto [it, inserted] = seen.try_emplace(key, positions.size());
        if (!inserted) {
            loop_start = it->second;
            break;
        }
        Position pos{v, kNoVertex, kNoVertex};
        VertexId next;
        if (game.owner(v) == dev) {
            pos.prescribed = profile[dev].output(mem[dev], v);
            pos.taken = deviant.output(dmem, v);
            next = pos.taken;
        } else {
            next = choice(game, profile, mem, v);
        }
        positions.push_back(pos);
        mem = advance(profile, mem, next);
        dmem = deviant.update(dmem, next);
        v = next;
    }

    DeviationReport report;
    const auto cycle_len = positions.size() - loop_start;
    auto at = [&](std::size_t n) -> const Position& {
        return n < positions.size() ? positions[n] : positions[loop_start + (n - loop_start) % cycle_len];
    };
    History prefix;
    for (std::size_t n = 0; n < horizon; ++n) {
        const auto& pos = at(n);
        prefix.push_back(pos.v);
        if (pos.prescribed != pos.taken) report.steps.push_back({prefix, pos.prescribed, pos.taken});
    }

    bool in_stem = false, in_cycle = false, beyond_root = false;
    for (std::size_t n = 0; n < positions.size(); ++n) {
        if (positions[n].prescribed == positions[n].taken) continue;
        (n < loop_start ? in_stem : in_cycle) = true;
        beyond_root = beyond_root || n > 0;
    }
    if (in_cycle) {
        report.kind = DeviationClass::Infinite;
    } else if (in_stem) {
        report.kind = beyond_root ? DeviationClass::Finite : DeviationClass::OneShot;
    }
    for (std::size_t n = 0; n < positions.size(); ++n) {
        (n < loop_start ? report.play.stem : report.play.cycle).push_back(positions[n].v);
    }
    report.play = canonical(std::move(report.play));
    return report;
}

MooreStrategy one_shot_variant(const Game& game, const Profile& profile, PlayerId player, VertexId at_vertex,
                               VertexId alternative)
{
    if (game.owner(at_vertex) != player) throw StructureError("deviation vertex is not owned by the player");
    if (!game.has_edge(at_vertex, alternative)) throw StructureError("alternative is not a successor");
    const auto& base = profile[player];
    const auto m = base.memory_states();
    // phase 0: nothing read yet, 1: first vertex read, 2: later
    MooreStrategy out(player, game.num_vertices(), 3 * m, base.initial());
    for (MemoryState phase = 0; phase < 3; ++phase) {
        const auto next_phase = std::min<MemoryState>(phase + 1, 2);
        for (MemoryState s = 0; s < m; ++s) {
            for (VertexId v = 0; v < game.num_vertices(); ++v) {
                out.set_update(phase * m + s, v, next_phase * m + base.update(s, v));
                if (game.owner(v) != player) continue;
                auto succ = base.output(s, v);
                if (phase == 1 && v == at_vertex) succ = alternative;
                out.set_output(phase * m + s, v, succ);
            }
        }
    }
    return out;
}

Profile with_strategy(Profile profile, MooreStrategy deviant)
{
    auto p = deviant.player();
    profile.strategies.at(p) = std::move(deviant);
    return profile;
}

std::size_t reachable_product_size(const Game& game, const Profile& profile)
{
    detail::StateIndex index;
    std::vector<std::uint32_t> queue;
    auto push = [&](VertexId v, const MemoryVector& mem) {
        auto [id, inserted] = index.intern(make_key(v, mem));
        if (inserted) queue.push_back(id);
    };
    push(game.initial(), advance(profile, initial_memory(profile), game.initial()));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto key = index.key(queue[head]);
        MemoryVector mem(key.begin() + 1, key.end());
        for (auto w : game.successors(static_cast<VertexId>(key[0]))) push(w, advance(profile, mem, w));
    }
    return index.size();
}

} // namespace spelab
