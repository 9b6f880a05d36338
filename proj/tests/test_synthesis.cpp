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
#include "spelab/eq_check.hpp"
#include "spelab/errors.hpp"
#include "spelab/fixpoint.hpp"
#include "spelab/synthesis.hpp"
#include "support.hpp"

using namespace spelab;
using namespace spelab::testing;

TEST_CASE("ping-pong game synthesis towards v0 v1 v3^omega")
{
    const auto g = load_game("ping_pong.json");
    const auto r = solve(g);
    const auto s = synthesize(g, r, lasso(g, "v0,v1|v3"));
    CHECK(s.root == lasso(g, "v0,v1|v3"));
    CHECK(outcome(g, s.profile, g.initial()) == s.root);
    CHECK(check_very_weak_spe(g, s.profile).holds);
    CHECK(audit(g, s, r));
    CHECK_THROWS_AS(synthesize(g, r, lasso(g, "v0|v2")), InputError);
}

TEST_CASE("default synthesis on every fixture")
{
    for (const char* name : {"two_stage.json", "ping_pong.json", "reach_small.json"}) {
        CAPTURE(name);
        const auto g = load_game(name);
        const auto r = solve(g);
        const auto s = synthesize(g, r);
        CHECK_NOTHROW(s.profile.validate(g));
        CHECK(audit(g, s, r));
        CHECK(s.lassos >= 1);
    }
}

TEST_CASE("audit rejects a profile that is not an equilibrium")
{
    const auto g = load_game("two_stage.json");
    const auto r = solve(g);
    const auto p = load_profile(g, "two_stage_v1_v3.json");
    CHECK_FALSE(audit(g, p, r, outcome(g, p, g.initial())));
    const auto q = load_profile(g, "two_stage_v2_v4.json");
    CHECK(audit(g, q, r, outcome(g, q, g.initial())));
    // The cost has to match the claimed root.
    CHECK_FALSE(audit(g, q, r, lasso(g, "v0|v1")));
}
