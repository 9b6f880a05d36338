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

#include "doctest.h"
#include "spelab/errors.hpp"
#include "spelab/strategy.hpp"
#include "support.hpp"

using namespace spelab;
using namespace spelab::testing;

TEST_CASE("outcomes of positional profiles")
{
    const auto g = load_game("two_stage.json");
    CHECK(outcome(g, load_profile(g, "two_stage_v1_v3.json"), g.initial()) == lasso(g, "v0|v1"));
    CHECK(outcome(g, load_profile(g, "two_stage_v2_v4.json"), g.initial()) == lasso(g, "v0,v2|v4"));
    CHECK(outcome(g, load_profile(g, "two_stage_v2_v3.json"), g.initial()) == lasso(g, "v0,v2|v3"));
    // Subgame after v0 v2 under (s1, s2).
    const auto p = load_profile(g, "two_stage_v1_v3.json");
    CHECK(outcome(g, p, vid(g, "v2"), history(g, {"v0", "v2"})) == lasso(g, "v2|v3"));
}

TEST_CASE("memory is read before the output")
{
    const auto g = load_game("ping_pong.json");
    const auto v0 = vid(g, "v0"), v1 = vid(g, "v1"), v2 = vid(g, "v2"), v3 = vid(g, "v3");
    // Player 1 alternates at v0: first v1, then v2. Player 2 returns to v0 once.
    MooreStrategy s1(0, g.num_vertices(), 3, 0);
    s1.set_update(0, v0, 1);
    s1.set_update(1, v0, 2);
    s1.set_update(2, v0, 2);
    s1.set_output(1, v0, v1);
    s1.set_output(2, v0, v2);
    for (MemoryState m = 0; m < 3; ++m) {
        if (m > 0) {
            s1.set_update(m, v1, m);
            s1.set_update(m, v2, m);
            s1.set_update(m, v3, m);
        }
        s1.set_output(m, v2, v2);
        s1.set_output(m, v3, v3);
    }
    s1.set_output(0, v0, v1);
    const auto s2 = MooreStrategy::positional(g, 1, {0, v0, 0, 0});
    Profile p{{s1, s2}};
    CHECK_NOTHROW(p.validate(g));
    CHECK(outcome(g, p, v0) == lasso(g, "v0,v1,v0|v2"));

    Profile bad{{s2, s1}};
    CHECK_THROWS(bad.validate(g));
}

TEST_CASE("deviation classification")
{
    const auto g = load_game("two_stage.json");
    const auto p = load_profile(g, "two_stage_v1_v3.json");
    const auto v0 = vid(g, "v0"), v2 = vid(g, "v2"), v4 = vid(g, "v4");

    auto none = deviation_steps(g, p, p[1], v0, 10);
    CHECK(none.kind == DeviationClass::None);

    auto shot = one_shot_variant(g, p, 0, v0, v2);
    auto r = deviation_steps(g, p, shot, v0, 10);
    CHECK(r.kind == DeviationClass::OneShot);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].taken == v2);
    CHECK(r.play == lasso(g, "v0,v2|v3"));

    // Player 2 switching at v2 is a deviation only once v2 is visited.
    const auto p2 = MooreStrategy::positional(g, 1, {0, 0, v4, 0, 0});
    auto q = with_strategy(load_profile(g, "two_stage_v2_v3.json"), p2);
    CHECK(outcome(g, q, v0) == lasso(g, "v0,v2|v4"));
}

TEST_CASE("product size")
{
    const auto g = load_game("two_stage.json");
    CHECK(reachable_product_size(g, load_profile(g, "two_stage_v1_v3.json")) == g.num_vertices());
}
