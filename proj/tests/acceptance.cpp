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

// Acceptance harness: one line per criterion, "PASS"/"FAIL" plus timing.
// With a criterion number as argument only that criterion runs.

#include <chrono>
#include <cstdlib>
#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "properties.hpp"
#include "spelab/eq_check.hpp"
#include "spelab/errors.hpp"
#include "spelab/fixpoint.hpp"
#include "spelab/oracle.hpp"
#include "spelab/synthesis.hpp"
#include "support.hpp"

using namespace spelab;
using namespace spelab::testing;

namespace {

struct Outcome
{
    bool pass = true;
    std::ostringstream notes;

    void expect(bool ok, const std::string& what)
    {
        if (!ok && pass) notes << what;
        pass = pass && ok;
    }
};

constexpr std::size_t kCorpus = 200;
constexpr std::size_t kUniverse = 8;

void two_stage_table(Outcome& o)
{
    const auto g = load_game("two_stage.json");
    const auto s1s2 = load_profile(g, "two_stage_v1_v3.json");
    const auto s1ps2p = load_profile(g, "two_stage_v2_v4.json");
    const auto s1s2p = load_profile(g, "two_stage_v1_v4.json");
    const auto s1ps2 = load_profile(g, "two_stage_v2_v3.json");

    o.expect(check_ne(g, s1s2).holds, "(s1,s2) not NE; ");
    o.expect(cost(g, outcome(g, s1s2, g.initial())) == values({3, 3}), "(s1,s2) outcome cost; ");
    o.expect(!check_very_weak_spe(g, s1s2).holds, "(s1,s2) very weak SPE; ");
    o.expect(check_very_weak_spe(g, s1ps2p).holds, "(s1',s2') not very weak SPE; ");
    auto ne = check_ne(g, s1s2p);
    o.expect(!ne.holds && ne.witness && ne.witness->player == 0 && replay_witness(g, s1s2p, *ne.witness),
             "(s1,s2') lacks a player-1 NE witness; ");
    o.expect(check_very_weak_ne(g, s1ps2).holds, "(s1',s2) not very weak NE; ");
    auto weak = check_weak_ne_bounded(g, s1ps2, 1);
    o.expect(!weak.holds && weak.witness && weak.witness->player == 1 && replay_witness(g, s1ps2, *weak.witness),
             "(s1',s2) passes weak NE with one deviation step; ");
}

void ping_pong_fixpoint(Outcome& o)
{
    const auto g = load_game("ping_pong.json");
    const auto r = solve(g);
    o.expect(r.mode == Mode::PrefixInd && r.alpha_star == 2, "alpha* != 2; ");
    const auto root = root_stratum(g);
    const auto a = r.alpha_star;
    o.expect(is_member(g, r, a, root, lasso(g, "v0,v1|v3")), "v0 v1 v3^w missing; ");
    o.expect(is_member(g, r, a, root, lasso(g, "v0,v1,v0,v1|v3")), "(v0 v1)^2 v3^w missing; ");
    o.expect(!is_member(g, r, a, root, lasso(g, "v0|v2")), "v0 v2^w present; ");
    o.expect(!is_member(g, r, a, root, lasso(g, "|v0,v1")), "(v0 v1)^w present; ");
    for (auto [stem, cycle] : {std::pair<std::size_t, std::size_t>{6, 4}, {kUniverse, kUniverse}}) {
        const auto u = build_universe(g, stem, cycle);
        const auto oracle = oracle_fixpoint(g, u, Mode::PrefixInd);
        const auto diffs = compare_with_oracle(g, r, u, oracle);
        o.expect(diffs.empty(), diffs.empty() ? "" : diffs.front().what + "; ");
    }
}

void ping_pong_equilibria(Outcome& o)
{
    const auto g = load_game("ping_pong.json");
    const auto thick = load_profile(g, "ping_pong_exit.json");
    o.expect(check_very_weak_spe(g, thick).holds, "thick profile not very weak SPE; ");
    auto ne = check_ne(g, thick);
    o.expect(!ne.holds && ne.witness && ne.witness->player == 1 && ne.witness->deviating_cost[1] == Value(0)
                 && ne.witness->prescribed_cost[1] == Value(1),
             "thick profile NE verdict; ");
    const auto r = solve(g);
    const auto s = synthesize(g, r, lasso(g, "v0,v1|v3"));
    o.expect(audit(g, s, r), "synthesized profile fails audit; ");
    o.expect(outcome(g, s.profile, g.initial()) == lasso(g, "v0,v1|v3"), "synthesized outcome; ");
}

void reach_existence(Outcome& o)
{
    for (std::uint64_t seed = 0; seed < kCorpus; ++seed) {
        const auto g = corpus_game(seed, CostKind::Reachability);
        const auto tag = "seed " + std::to_string(seed) + ": ";
        try {
            const auto r = solve(g);
            o.expect(r.exists, tag + "a reachable stratum is empty; ");
            const auto s = synthesize(g, r);
            o.expect(check_very_weak_spe(g, s.profile).holds, tag + "synthesized profile not very weak SPE; ");
            o.expect(audit(g, s, r), tag + "audit; ");
        } catch (const ConsistencyError& e) {
            o.expect(false, tag + e.what() + "; ");
        }
    }
}

void oracle_equivalence(Outcome& o)
{
    auto run = [&](const Game& g, const std::string& tag) {
        const auto r = solve(g);
        const auto u = build_universe(g, kUniverse, kUniverse);
        const auto oracle = oracle_fixpoint(g, u, mode_of(g));
        const auto diffs = compare_with_oracle(g, r, u, oracle);
        o.expect(diffs.empty(), diffs.empty() ? "" : tag + diffs.front().what + "; ");
    };
    for (std::uint64_t seed = 0; seed < kCorpus; ++seed) {
        run(corpus_game(seed, CostKind::Reachability), "reach seed " + std::to_string(seed) + ": ");
    }
    for (std::uint64_t seed = 0; seed < kCorpus; ++seed) {
        const auto kind = seed % 2 ? CostKind::LimSup : CostKind::LimInf;
        run(corpus_game(seed, kind), "prefix-independent seed " + std::to_string(seed) + ": ");
    }
}

std::string in_universe(const Lasso& l) { return l.stem.size() <= kUniverse && l.cycle.size() <= kUniverse ? "" : "x"; }

void constrained(Outcome& o)
{
    std::mt19937_64 rng(2026);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto kind = seed % 2 ? CostKind::Reachability : (seed % 4 ? CostKind::LimSup : CostKind::LimInf);
        const auto g = corpus_game(seed, kind);
        const auto tag = "seed " + std::to_string(seed) + ": ";
        const auto r = solve(g);
        const auto u = build_universe(g, kUniverse, kUniverse);
        const auto oracle = oracle_fixpoint(g, u, mode_of(g));
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<Value> bounds;
            for (std::size_t i = 0; i < g.num_players(); ++i) {
                const auto draw = rng() % (g.is_reachability() ? 7 : 5);
                if (draw == 0) {
                    bounds.push_back(Value::pos_inf());
                } else {
                    bounds.push_back(Value(static_cast<std::int64_t>(draw - 1)));
                }
            }
            const auto engine = constrained_existence(g, r, bounds);
            const auto brute = oracle_constrained(g, u, oracle, bounds);
            if (engine) {
                bool within = true;
                const auto c = cost(g, *engine);
                for (std::size_t i = 0; i < c.size(); ++i) within = within && c[i] <= bounds[i];
                o.expect(within, tag + "witness exceeds the bounds; ");
                o.expect(is_member(g, r, r.alpha_star, root_stratum(g), *engine), tag + "witness outside the set; ");
                // A witness longer than the universe cannot be confirmed by enumeration.
                o.expect(brute.has_value() || !in_universe(*engine).empty(), tag + "oracle finds no witness; ");
            } else {
                o.expect(!brute, tag + "oracle finds a witness the engine misses; ");
            }
        }
    }
    const auto f = load_game("ping_pong.json");
    const auto rf = solve(f);
    o.expect(constrained_existence(f, rf, values({0, 1})).has_value(), "ping-pong game bounds (0,1) absent; ");
    o.expect(!constrained_existence(f, rf, values({0, 0})).has_value(), "ping-pong game bounds (0,0) present; ");
}

void bounded_vs_spe(Outcome& o)
{
    constexpr CostKind kinds[] = {CostKind::Reachability, CostKind::LimInf, CostKind::LimSup};
    std::size_t spe = 0, refuted = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        GenParams params = corpus_params(seed, kinds[seed % 3]);
        params.vertices = std::max<std::size_t>(params.vertices, 3);
        params.players = std::max<std::size_t>(params.players, 2);
        params.max_degree = 3;
        params.max_weight = 4;
        params.target_odds = 2;
        const auto g = random_game(seed, params);
        const auto p = random_profile(g, seed, 1 + seed % 2);
        const auto tag = "seed " + std::to_string(seed) + ": ";
        const auto verdict = check_very_weak_spe(g, p);
        spe += verdict.holds;
        bool witness = false;
        for (const auto& h : subgame_histories(g, 3)) {
            for (std::size_t k = 1; k <= 3 && !witness; ++k) witness = !check_weak_ne_bounded_at(g, p, k, h).holds;
        }
        refuted += witness;
        o.expect(!(verdict.holds && witness), tag + "bounded witness against a very weak SPE; ");
        if (!verdict.holds) {
            // The one-shot witness is itself a one-step bounded deviation in its subgame.
            const auto& w = *verdict.witness;
            o.expect(!check_weak_ne_bounded_at(g, p, 1, w.history).holds, tag + "one-shot witness not confirmed; ");
        }
    }
    o.notes << (o.pass ? "" : " ") << spe << " equilibria, " << refuted << " refuted within depth 3";
}

void invariants(Outcome& o)
{
    const std::pair<const char*, PropertyResult> suites[] = {
        {"canonicalization", lasso_canonicalization(600)}, {"shift law", shift_law(600)},
        {"suffix closure", witness_suffix_closure(150)},    {"cycle-constant bounds", cycle_constant_bounds(150)},
        {"monotonicity", table_monotonicity(150)},
    };
    std::size_t cases = 0;
    for (const auto& [name, r] : suites) {
        cases += r.cases;
        o.expect(r.violations == 0 && r.cases > 0, std::string(name) + ": " + r.first + "; ");
    }
    if (o.pass) o.notes << cases << " cases";
}

struct Criterion
{
    int id;
    const char* title;
    double limit_seconds;
    std::function<void(Outcome&)> run;
};

} // namespace

int main(int argc, char** argv)
{
    const Criterion criteria[] = {
        {1, "two-stage game classification", 1, two_stage_table},
        {2, "ping-pong game fixpoint and membership", 1, ping_pong_fixpoint},
        {3, "ping-pong game equilibria and synthesis", 1, ping_pong_equilibria},
        {4, "reachability existence on 200 games", 60, reach_existence},
        {5, "oracle equivalence on 400 games", 300, oracle_equivalence},
        {6, "constrained existence against enumeration", 60, constrained},
        {7, "bounded deviations against very weak SPE", 120, bounded_vs_spe},
        {8, "invariant suites", 120, invariants},
    };
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all = true;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.expect(secs < c.limit_seconds, " over the time limit");
        all = all && o.pass;
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
                  << secs << " s";
        const auto notes = o.notes.str();
        if (!notes.empty()) std::cout << "; " << notes;
        std::cout << ")\n";
    }
    return all ? 0 : 1;
}
