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

#include "cli.hpp"

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "spelab/eq_check.hpp"
#include "spelab/errors.hpp"
#include "spelab/fixpoint.hpp"
#include "spelab/generator.hpp"
#include "spelab/io.hpp"
#include "spelab/oracle.hpp"
#include "spelab/parallel.hpp"
#include "spelab/synthesis.hpp"

#ifndef SPELAB_VERSION
#define SPELAB_VERSION "0.0.0"
#endif

namespace spelab::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options
{
    std::size_t threads = 1;
    std::uint64_t seed = 1;

    std::string game_path;
    std::string profile_path;
    std::string kind = "very-weak-spe";
    std::size_t k = 1;
    std::string at_history;

    std::string mode;
    std::string bounds;
    std::string target;
    std::string emit_fixpoint;
    std::string emit_profile;
    std::string emit_dot;

    std::string lasso;
    std::string at_vertex;
    std::string survivors;
    std::optional<std::size_t> alpha;

    std::size_t stem_max = 8;
    std::size_t cycle_max = 8;
    std::string compare;

    GenParams gen;
    std::string gen_kind = "reachability";
    std::string profile_out;
    std::size_t memory = 1;
};

Game load_game(const Options& o) { return parse_game(read_file(o.game_path)); }

void require_mode(const Game& game, const std::string& mode)
{
    if (mode.empty()) return;
    if (parse_mode(mode) != mode_of(game)) {
        throw InputError("mode '" + mode + "' does not match the game's cost kind '" + to_string(game.cost_kind()) + "'");
    }
}

History parse_history(const Game& game, const std::string& text)
{
    History h;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        auto name = text.substr(start, end - start);
        if (!name.empty()) {
            auto v = game.find_vertex(name);
            if (!v) throw InputError("history: unknown vertex '" + name + "'");
            h.push_back(*v);
        }
        start = end + 1;
    }
    validate(game, h);
    return h;
}

int cmd_check(const Options& o, std::ostream& out)
{
    const auto game = load_game(o);
    const auto profile = parse_profile(game, read_file(o.profile_path));
    Verdict verdict;
    if (o.kind == "ne") {
        verdict = check_ne(game, profile);
    } else if (o.kind == "very-weak-ne") {
        verdict = check_very_weak_ne(game, profile);
    } else if (o.kind == "very-weak-spe" || o.kind == "weak-spe" || o.kind == "spe") {
        if (o.kind == "spe" && !game.is_reachability()) {
            throw InputError("kind 'spe' is only decided for reachability games; use very-weak-spe");
        }
        verdict = check_very_weak_spe(game, profile);
    } else if (o.kind == "weak-ne-bounded") {
        if (o.k == 0) throw InputError("--k must be at least 1");
        verdict = o.at_history.empty() ? check_weak_ne_bounded(game, profile, o.k)
                                       : check_weak_ne_bounded_at(game, profile, o.k, parse_history(game, o.at_history));
    } else {
        throw InputError("unknown check kind '" + o.kind + "'");
    }
    if (!o.emit_dot.empty()) write_file(o.emit_dot, game_to_dot(game, profile));
    out << verdict_to_json(game, verdict);
    return verdict.holds ? kOk : kNegative;
}

int cmd_solve(const Options& o, std::ostream& out)
{
    const auto game = load_game(o);
    require_mode(game, o.mode);
    const auto report = solve(game);
    auto doc = json::parse(report_to_json(game, report));

    std::optional<Lasso> target;
    bool positive = report.exists;
    if (!o.bounds.empty()) {
        const auto bounds = parse_bounds(game, o.bounds);
        auto witness = constrained_existence(game, report, bounds);
        json c{{"bounds", json::parse(values_to_json(bounds))}, {"exists", witness.has_value()}};
        if (witness) {
            c["witness"] = json::parse(lasso_to_json(game, *witness));
            c["witness"]["cost"] = json::parse(values_to_json(cost(game, *witness)));
            target = witness;
        }
        doc["constrained"] = c;
        positive = witness.has_value();
    }
    if (!o.target.empty()) target = parse_lasso_text(game, o.target);

    if (!o.emit_profile.empty()) {
        if (!positive) throw InputError("no equilibrium to synthesize");
        const auto synthesis = synthesize(game, report, target);
        if (!audit(game, synthesis, report)) throw ConsistencyError("synthesized profile failed its audit");
        write_file(o.emit_profile, profile_to_json(game, synthesis.profile));
        doc["profile"] = json{{"path", o.emit_profile},
                              {"memory_states", synthesis.profile[0].memory_states()},
                              {"outcome", json::parse(lasso_to_json(game, outcome(game, synthesis.profile, game.initial())))}};
        if (!o.emit_dot.empty()) write_file(o.emit_dot, game_to_dot(game, synthesis.profile));
    } else if (!o.emit_dot.empty()) {
        write_file(o.emit_dot, game_to_dot(game));
    }

    if (!o.emit_fixpoint.empty()) {
        write_file(o.emit_fixpoint, report_to_json(game, report));
        json summary{{"mode", doc["mode"]}, {"alpha_star", doc["alpha_star"]}, {"exists", doc["exists"]}};
        if (doc.contains("constrained")) summary["constrained"] = doc["constrained"];
        if (doc.contains("profile")) summary["profile"] = doc["profile"];
        out << summary.dump(2) << "\n";
    } else {
        out << doc.dump(2) << "\n";
    }
    return positive ? kOk : kNegative;
}

int cmd_member(const Options& o, std::ostream& out)
{
    const auto game = load_game(o);
    require_mode(game, o.mode);
    const auto report = solve(game);
    const auto lasso = parse_lasso_text(game, o.lasso);
    Stratum stratum = root_stratum(game);
    if (!o.at_vertex.empty()) {
        auto v = game.find_vertex(o.at_vertex);
        if (!v) throw InputError("--at: unknown vertex '" + o.at_vertex + "'");
        stratum.vertex = *v;
    }
    if (!o.survivors.empty()) {
        PlayerSet s;
        std::size_t start = 0;
        while (start <= o.survivors.size()) {
            auto end = o.survivors.find(',', start);
            if (end == std::string::npos) end = o.survivors.size();
            auto name = o.survivors.substr(start, end - start);
            if (!name.empty()) {
                auto p = game.find_player(name);
                if (!p) throw InputError("--survivors: unknown player '" + name + "'");
                s.insert(*p);
            }
            start = end + 1;
        }
        stratum.survivors = s;
    }
    const auto alpha = std::min(o.alpha.value_or(report.alpha_star), report.alpha_star);
    const bool member = is_member(game, report, alpha, stratum, lasso);
    json doc{{"lasso", json::parse(lasso_to_json(game, canonical(lasso)))},
             {"at", game.vertex_name(stratum.vertex)},
             {"alpha", alpha},
             {"member", member}};
    out << doc.dump(2) << "\n";
    return member ? kOk : kNegative;
}

int cmd_oracle(const Options& o, std::ostream& out)
{
    const auto game = load_game(o);
    const auto mode = o.mode.empty() ? mode_of(game) : parse_mode(o.mode);
    require_mode(game, o.mode);
    const auto report = o.compare.empty() ? solve(game) : parse_report(game, read_file(o.compare));
    const auto universe = build_universe(game, o.stem_max, o.cycle_max);
    const auto oracle = oracle_fixpoint(game, universe, mode);
    const auto diffs = compare_with_oracle(game, report, universe, oracle);
    json doc{{"universe", universe.size()},
             {"oracle_alpha_star", oracle.alpha_star},
             {"engine_alpha_star", report.alpha_star},
             {"agree", diffs.empty()},
             {"disagreements", json::array()}};
    for (const auto& d : diffs) doc["disagreements"].push_back(d.what);
    out << doc.dump(2) << "\n";
    return diffs.empty() ? kOk : kNegative;
}

int cmd_gen(const Options& o, std::ostream& out)
{
    auto params = o.gen;
    if (o.gen_kind == "reachability") {
        params.kind = CostKind::Reachability;
    } else if (o.gen_kind == "liminf") {
        params.kind = CostKind::LimInf;
    } else if (o.gen_kind == "limsup") {
        params.kind = CostKind::LimSup;
    } else {
        throw InputError("gen: unknown cost kind '" + o.gen_kind + "'");
    }
    const auto game = random_game(o.seed, params);
    if (!o.profile_out.empty()) write_file(o.profile_out, profile_to_json(game, random_profile(game, o.seed, o.memory)));
    out << game_to_json(game);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Equilibria and fixpoints for turn-based quantitative games", "spe-lab"};
    app.set_version_flag("--version", std::string("spe-lab ") + SPELAB_VERSION);
    app.add_option("--threads", o.threads, "Worker threads for the fixpoint engines (0: all cores)");
    app.add_option("--seed", o.seed, "Random seed (gen)");
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Check an equilibrium notion for a profile");
    check->add_option("--game", o.game_path, "Game JSON")->required();
    check->add_option("--profile", o.profile_path, "Profile JSON")->required();
    check->add_option("--kind", o.kind, "ne | very-weak-ne | weak-ne-bounded | very-weak-spe");
    check->add_option("--k", o.k, "Deviation budget for weak-ne-bounded");
    check->add_option("--at", o.at_history, "Subgame history for weak-ne-bounded, e.g. v0,v2");
    check->add_option("--emit-dot", o.emit_dot, "Write the arena with the profile as Graphviz");

    auto* solve_cmd = app.add_subcommand("solve", "Compute the fixpoint and decide existence");
    solve_cmd->add_option("--game", o.game_path, "Game JSON")->required();
    solve_cmd->add_option("--mode", o.mode, "reach | prefix-ind");
    solve_cmd->add_option("--bounds", o.bounds, "Cost bounds, one per player, e.g. 3,inf,2");
    solve_cmd->add_option("--target", o.target, "Outcome for the synthesized profile, e.g. v0,v1|v3");
    solve_cmd->add_option("--emit-fixpoint", o.emit_fixpoint, "Write the fixpoint report");
    solve_cmd->add_option("--emit-profile", o.emit_profile, "Synthesize and write a profile");
    solve_cmd->add_option("--emit-dot", o.emit_dot, "Write the arena as Graphviz");

    auto* member = app.add_subcommand("member", "Membership of a lasso in the fixpoint set");
    member->add_option("--game", o.game_path, "Game JSON")->required();
    member->add_option("--mode", o.mode, "reach | prefix-ind");
    member->add_option("--lasso", o.lasso, "Lasso as stem|cycle, e.g. v0,v1|v3")->required();
    member->add_option("--at", o.at_vertex, "Vertex the lasso starts from (default: initial)");
    member->add_option("--survivors", o.survivors, "Survivor set for reachability strata (default: all)");
    member->add_option("--alpha", o.alpha, "Iteration (default: the fixpoint)");

    auto* oracle = app.add_subcommand("oracle", "Cross-check the engine against brute-force enumeration");
    oracle->add_option("--game", o.game_path, "Game JSON")->required();
    oracle->add_option("--mode", o.mode, "reach | prefix-ind");
    oracle->add_option("--stem-max", o.stem_max, "Longest stem in the lasso universe");
    oracle->add_option("--cycle-max", o.cycle_max, "Longest cycle in the lasso universe");
    oracle->add_option("--compare", o.compare, "Report JSON to compare (default: solve now)");

    auto* gen = app.add_subcommand("gen", "Generate a random game");
    gen->add_option("--vertices", o.gen.vertices, "Vertex count");
    gen->add_option("--players", o.gen.players, "Player count");
    gen->add_option("--kind", o.gen_kind, "reachability | liminf | limsup");
    gen->add_option("--max-degree", o.gen.max_degree, "Largest out-degree");
    gen->add_option("--max-weight", o.gen.max_weight, "Largest edge weight");
    gen->add_option("--target-odds", o.gen.target_odds, "A vertex is a target with probability 1/odds");
    gen->add_option("--profile-out", o.profile_out, "Also write a random profile");
    gen->add_option("--memory", o.memory, "Memory bound for the random profile");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "spe-lab: " << e.what() << "\n";
        return kInputError;
    }

    try {
        set_thread_count(o.threads);
        if (check->parsed()) return cmd_check(o, out);
        if (solve_cmd->parsed()) return cmd_solve(o, out);
        if (member->parsed()) return cmd_member(o, out);
        if (oracle->parsed()) return cmd_oracle(o, out);
        if (gen->parsed()) return cmd_gen(o, out);
    } catch (const ConsistencyError& e) {
        err << "spe-lab: internal consistency violation: " << e.what() << "\n";
        return kConsistencyError;
    } catch (const InputError& e) {
        err << "spe-lab: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

} // namespace spelab::cli
