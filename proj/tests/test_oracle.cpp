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

#include <set>

#include "doctest.h"
#include "spelab/eq_check.hpp"
#include "spelab/fixpoint.hpp"
#include "spelab/oracle.hpp"
#include "support.hpp"

using namespace spelab;
using namespace spelab::testing;

namespace {

std::set<std::string> alive_at(const Game& g, const LassoUniverse& u, const OracleIteration& it, const Stratum& s)
{
    std::set<std::string> out;
    const auto idx = it.table.find(s);
    REQUIRE(idx);
    const auto& members = u.members[s.vertex];
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (it.alive[*idx][k]) out.insert(format_lasso(g, members[k]));
    }
    return out;
}

} // namespace

TEST_CASE("universe enumeration")
{
    const auto g = load_game("ping_pong.json");
    const auto u = build_universe(g, 2, 2);
    for (const auto& group : u.members) {
        for (const auto& l : group) {
            CHECK(is_canonical(l));
            CHECK(l.stem.size() <= 2);
            CHECK(l.cycle.size() <= 2);
        }
    }
    std::set<std::string> from_v0;
    for (const auto& l : u.members[vid(g, "v0")]) from_v0.insert(format_lasso(g, l));
    CHECK(from_v0 == std::set<std::string>{"v0|v2", "v0,v1|v3", "|v0,v1"});
}

TEST_CASE("ping-pong game oracle iterations")
{
    const auto g = load_game("ping_pong.json");
    const auto u = build_universe(g, 6, 4);
    const auto o = oracle_fixpoint(g, u, Mode::PrefixInd);
    CHECK(o.alpha_star == 2);
    const auto root = root_stratum(g);
    CHECK(alive_at(g, u, o.iterations[1], root)
          == std::set<std::string>{"v0|v2", "v0,v1|v3", "v0,v1,v0,v1|v3", "v0,v1,v0,v1,v0,v1|v3"});
    CHECK(alive_at(g, u, o.iterations[2], root)
          == std::set<std::string>{"v0,v1|v3", "v0,v1,v0,v1|v3", "v0,v1,v0,v1,v0,v1|v3"});
    const auto r = solve(g);
    CHECK(compare_with_oracle(g, r, u, o).empty());
}

TEST_CASE("nothing to erase on a single loop")
{
    Game::Spec spec;
    spec.players = {"P1", "P2"};
    spec.vertices = {"v0"};
    spec.owners = {0};
    spec.edges = {Edge{0, 0, {Rational(1), Rational(2)}}};
    spec.kind = CostKind::LimSup;
    const Game g(spec);
    const auto u = build_universe(g, 8, 8);
    CHECK(u.size() == 1);
    const auto o = oracle_fixpoint(g, u, Mode::PrefixInd);
    CHECK(o.alpha_star == 0);
    CHECK(o.iterations.size() == 1);
    CHECK(compare_with_oracle(g, solve(g), u, o).empty());
}

TEST_CASE("reachability oracle agrees")
{
    const auto g = load_game("reach_small.json");
    const auto u = build_universe(g, 8, 8);
    const auto o = oracle_fixpoint(g, u, Mode::Reach);
    const auto r = solve(g);
    CHECK(o.alpha_star == r.alpha_star);
    CHECK(compare_with_oracle(g, r, u, o).empty());
    const auto inf = Value::pos_inf();
    CHECK(oracle_constrained(g, u, o, values({2, inf})) == lasso(g, "v0,b|t"));
    CHECK_FALSE(oracle_constrained(g, u, o, values({1, inf})));
}

TEST_CASE("comparison reports a doctored table")
{
    const auto g = load_game("ping_pong.json");
    const auto u = build_universe(g, 6, 4);
    const auto o = oracle_fixpoint(g, u, Mode::PrefixInd);
    auto r = solve(g);
    r.iterations[1].cells[0][0].values[0] = Value(7);
    CHECK_FALSE(compare_with_oracle(g, r, u, o).empty());
}

TEST_CASE("exhaustive deviation search")
{
    const auto g = load_game("two_stage.json");
    auto w = oracle_deviation_search(g, load_profile(g, "two_stage_v1_v3.json"), 1, 1);
    REQUIRE(w);
    CHECK(w->player == 1);
    CHECK(w->history == history(g, {"v0", "v2"}));

    const auto f = load_game("ping_pong.json");
    CHECK_FALSE(oracle_deviation_search(f, load_profile(f, "ping_pong_exit.json"), 4, 3));
    const auto spe = load_profile(g, "two_stage_v2_v4.json");
    CHECK_FALSE(oracle_deviation_search(g, spe, 3, 2));
}
