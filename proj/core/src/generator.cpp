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

#include "spelab/generator.hpp"

#include <random>

#include "spelab/errors.hpp"

namespace spelab {

namespace {

/// std::uniform_int_distribution is implementation-defined; draw by modulo
/// so generated games are identical across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

} // namespace

Game random_game(std::uint64_t seed, const GenParams& params)
{
    if (params.vertices == 0 || params.vertices > kMaxGenVertices) {
        throw InputError("gen: vertex count must be in 1.." + std::to_string(kMaxGenVertices));
    }
    if (params.players == 0 || params.players > kMaxGenPlayers) {
        throw InputError("gen: player count must be in 1.." + std::to_string(kMaxGenPlayers));
    }
    if (params.max_degree == 0) throw InputError("gen: max degree must be positive");
    std::mt19937_64 rng(seed);
    Game::Spec spec;
    spec.kind = params.kind;
    for (std::size_t p = 0; p < params.players; ++p) spec.players.push_back("P" + std::to_string(p + 1));
    for (std::size_t v = 0; v < params.vertices; ++v) {
        spec.vertices.push_back("v" + std::to_string(v));
        spec.owners.push_back(static_cast<PlayerId>(draw(rng, params.players)));
    }
    const auto max_degree = std::min(params.max_degree, params.vertices);
    for (VertexId v = 0; v < params.vertices; ++v) {
        // Degree 1 or 2 most of the time.
        std::size_t degree = 1 + draw(rng, std::min<std::size_t>(2, max_degree));
        if (max_degree > 2 && draw(rng, 4) == 0) degree = 1 + draw(rng, max_degree);
        std::vector<char> used(params.vertices, 0);
        for (std::size_t k = 0; k < degree; ++k) {
            auto w = static_cast<VertexId>(draw(rng, params.vertices));
            if (used[w]) continue;
            used[w] = 1;
            Edge e{v, w, {}};
            if (params.kind != CostKind::Reachability) {
                for (std::size_t p = 0; p < params.players; ++p) {
                    e.weights.emplace_back(static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(params.max_weight) + 1)));
                }
            }
            spec.edges.push_back(std::move(e));
        }
    }
    if (params.kind == CostKind::Reachability) {
        spec.targets.assign(params.players, {});
        for (std::size_t p = 0; p < params.players; ++p) {
            for (VertexId v = 0; v < params.vertices; ++v) {
                if (draw(rng, params.target_odds) == 0) spec.targets[p].push_back(v);
            }
        }
    }
    spec.initial = 0;
    return Game(std::move(spec));
}

Profile random_profile(const Game& game, std::uint64_t seed, std::size_t max_memory)
{
    if (max_memory == 0) throw InputError("gen: memory bound must be positive");
    std::mt19937_64 rng(seed);
    Profile profile;
    for (PlayerId p = 0; p < game.num_players(); ++p) {
        const auto states = static_cast<MemoryState>(1 + draw(rng, max_memory));
        MooreStrategy s(p, game.num_vertices(), states, 0);
        for (MemoryState m = 0; m < states; ++m) {
            for (VertexId v = 0; v < game.num_vertices(); ++v) {
                s.set_update(m, v, static_cast<MemoryState>(draw(rng, states)));
                if (game.owner(v) != p) continue;
                auto succ = game.successors(v);
                s.set_output(m, v, succ[draw(rng, succ.size())]);
            }
        }
        profile.strategies.push_back(std::move(s));
    }
    return profile;
}

} // namespace spelab
