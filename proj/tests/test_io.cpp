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
#include "json.hpp"
#include "spelab/errors.hpp"
#include "spelab/fixpoint.hpp"
#include "spelab/generator.hpp"
#include "spelab/io.hpp"
#include "support.hpp"

using namespace spelab;
using namespace spelab::testing;

namespace {

std::string diagnostic(const std::string& text)
{
    try {
        parse_game(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("game round trip")
{
    for (const char* name : {"two_stage.json", "ping_pong.json", "reach_small.json"}) {
        CAPTURE(name);
        const auto g = load_game(name);
        const auto text = game_to_json(g);
        const auto back = parse_game(text);
        CHECK(game_to_json(back) == text);
        CHECK(back.num_edges() == g.num_edges());
    }
}

TEST_CASE("profile round trip with memory")
{
    const auto g = random_game(11, GenParams{});
    const auto p = random_profile(g, 11, 3);
    CHECK(parse_profile(g, profile_to_json(g, p)) == p);
    const auto f = load_game("two_stage.json");
    const auto q = load_profile(f, "two_stage_v1_v3.json");
    CHECK(parse_profile(f, profile_to_json(f, q)) == q);
}

TEST_CASE("lasso and report round trips")
{
    const auto g = load_game("ping_pong.json");
    const auto l = lasso(g, "v0,v1|v3");
    CHECK(parse_lasso_json(g, lasso_to_json(g, l)) == l);
    CHECK(parse_lasso_text(g, "|v0,v1") == Lasso{{}, {vid(g, "v0"), vid(g, "v1")}});
    CHECK_THROWS_AS(parse_lasso_text(g, "v0,v1"), InputError);
    CHECK_THROWS_AS(parse_lasso_text(g, "v0|v9"), InputError);

    for (const char* name : {"ping_pong.json", "reach_small.json"}) {
        const auto h = load_game(name);
        const auto r = solve(h);
        const auto text = report_to_json(h, r);
        CHECK(report_to_json(h, parse_report(h, text)) == text);
    }
}

TEST_CASE("extended values in JSON")
{
    const auto g = load_game("reach_small.json");
    const auto j = nlohmann::json::parse(report_to_json(g, solve(g)));
    bool saw_inf = false, saw_empty = false;
    for (const auto& c : j["iterations"][1]["cells"]) {
        for (const auto& v : c["values"]) {
            if (v.is_string()) saw_inf |= v.get<std::string>() == "inf";
            if (v.is_number()) saw_empty |= v.get<int>() == -1;
        }
    }
    CHECK(saw_inf);
    CHECK(saw_empty);
    CHECK(parse_bounds(g, "3,+inf") == values({3, Value::pos_inf()}));
    CHECK(parse_bounds(g, "1/2, inf") == values({Rational(1, 2), Value::pos_inf()}));
    CHECK_THROWS_AS(parse_bounds(g, "3"), InputError);
    CHECK(values_to_json(values({Rational(1, 2), 3, Value::neg_inf()})) == R"(["1/2",3,"-inf"])");
}

TEST_CASE("diagnostics name the offending element")
{
    CHECK(diagnostic("{") != "");
    CHECK(diagnostic(R"({"players":["P1"],"vertices":[{"id":"v0","owner":"P1"}],
        "edges":[{"from":"v0","to":"v7"}],"cost":{"kind":"reachability","targets":{"P1":[]}},"initial":"v0"})")
              .find("v7")
          != std::string::npos);
    CHECK(diagnostic(R"({"players":["P1"],"vertices":[{"id":"v0","owner":"P9"}],
        "edges":[{"from":"v0","to":"v0"}],"cost":{"kind":"reachability","targets":{"P1":[]}},"initial":"v0"})")
              .find("P9")
          != std::string::npos);
    CHECK(diagnostic(R"({"players":["P1"],"vertices":[{"id":"v0","owner":"P1"}],
        "edges":[{"from":"v0","to":"v0","weights":[1]}],"cost":{"kind":"mean-payoff"},"initial":"v0"})")
              .find("mean-payoff")
          != std::string::npos);
    const auto g = load_game("two_stage.json");
    try {
        parse_profile(g, R"({"P1":{"positional":{"v0":"v4"}},"P2":{"positional":{"v2":"v3"}}})");
        FAIL("bad choice accepted");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("v4") != std::string::npos);
    }
}

TEST_CASE("dot export")
{
    const auto g = load_game("two_stage.json");
    const auto dot = game_to_dot(g, load_profile(g, "two_stage_v1_v3.json"));
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("shape=square") != std::string::npos);
    CHECK(dot.find("penwidth=3") != std::string::npos);
}
