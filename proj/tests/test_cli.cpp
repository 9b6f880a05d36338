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

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "spelab/eq_check.hpp"
#include "spelab/io.hpp"
#include "support.hpp"

using namespace spelab::testing;
using nlohmann::json;

namespace {

struct Run
{
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Run r;
    r.code = spelab::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("spelab_cli_" + name)).string();
}

} // namespace

TEST_CASE("check exit codes follow the verdict")
{
    auto ok = run({"check", "--game", data_path("two_stage.json"), "--profile", data_path("two_stage_v1_v3.json"), "--kind", "ne"});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["holds"] == true);

    auto bad = run({"check", "--game", data_path("two_stage.json"), "--profile", data_path("two_stage_v1_v4.json"), "--kind", "ne"});
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.out)["witness"]["player"] == "P1");

    auto bounded = run({"check", "--game", data_path("two_stage.json"), "--profile", data_path("two_stage_v1_v3.json"), "--kind",
                        "weak-ne-bounded", "--k", "1", "--at", "v0,v2"});
    CHECK(bounded.code == 1);
}

TEST_CASE("solve reports and emits")
{
    const auto report = temp("report.json");
    const auto profile = temp("profile.json");
    const auto dot = temp("arena.dot");
    auto r = run({"--threads", "2", "solve", "--game", data_path("ping_pong.json"), "--mode", "prefix-ind", "--emit-fixpoint",
                  report, "--emit-profile", profile, "--target", "v0,v1|v3", "--emit-dot", dot});
    REQUIRE(r.code == 0);
    const auto summary = json::parse(r.out);
    CHECK(summary["alpha_star"] == 2);
    CHECK(summary["exists"] == true);
    CHECK(json::parse(spelab::read_file(report))["alpha_star"] == 2);
    CHECK(spelab::read_file(dot).find("digraph") != std::string::npos);

    const auto g = load_game("ping_pong.json");
    const auto p = spelab::parse_profile(g, spelab::read_file(profile));
    CHECK(spelab::check_very_weak_spe(g, p).holds);

    auto cmp = run({"oracle", "--game", data_path("ping_pong.json"), "--compare", report});
    CHECK(cmp.code == 0);
    CHECK(json::parse(cmp.out)["agree"] == true);
}

TEST_CASE("constrained solve")
{
    auto yes = run({"solve", "--game", data_path("ping_pong.json"), "--bounds", "0,1"});
    CHECK(yes.code == 0);
    CHECK(json::parse(yes.out)["constrained"]["witness"]["cost"] == json::parse("[0,1]"));
    auto no = run({"solve", "--mode", "prefix-ind", "--game", data_path("ping_pong.json"), "--bounds", "0,0"});
    CHECK(no.code == 1);
    CHECK(json::parse(no.out)["constrained"]["exists"] == false);
}

TEST_CASE("member")
{
    CHECK(run({"member", "--game", data_path("ping_pong.json"), "--lasso", "v0,v1,v0,v1|v3", "--at", "v0"}).code == 0);
    CHECK(run({"member", "--game", data_path("ping_pong.json"), "--lasso", "v0|v2"}).code == 1);
    CHECK(run({"member", "--game", data_path("ping_pong.json"), "--lasso", "v0|v2", "--alpha", "1"}).code == 0);
    CHECK(run({"member", "--game", data_path("reach_small.json"), "--lasso", "a,b|t", "--at", "a", "--survivors",
               "P1,P2"})
              .code
          == 0);
}

TEST_CASE("input errors exit with 2")
{
    auto mismatch = run({"solve", "--game", data_path("ping_pong.json"), "--mode", "reach"});
    CHECK(mismatch.code == 2);
    CHECK(mismatch.err.find("reach") != std::string::npos);
    CHECK(run({"solve", "--game", data_path("missing.json")}).code == 2);
    CHECK(run({"check", "--game", data_path("two_stage.json")}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"member", "--game", data_path("ping_pong.json"), "--lasso", "v0|v3"}).code == 2);
    CHECK(run({"check", "--game", data_path("two_stage.json"), "--profile", data_path("two_stage_v1_v3.json"), "--kind",
               "weak-ne-bounded", "--k", "0"})
              .code
          == 2);
}

TEST_CASE("gen is deterministic")
{
    auto a = run({"--seed", "42", "gen", "--vertices", "5", "--players", "3", "--kind", "liminf"});
    auto b = run({"--seed", "42", "gen", "--vertices", "5", "--players", "3", "--kind", "liminf"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_NOTHROW(spelab::parse_game(a.out));
    CHECK(run({"gen", "--vertices", "99"}).code == 2);
}

TEST_CASE("version")
{
    auto v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find("spe-lab") != std::string::npos);
}
