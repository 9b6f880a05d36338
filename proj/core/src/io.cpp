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

#include "spelab/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "spelab/errors.hpp"

namespace spelab {

using json = nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text, const char* what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

const json& field(const json& obj, const char* name, const char* context)
{
    if (!obj.is_object() || !obj.contains(name)) {
        throw InputError(std::string(context) + ": missing field '" + name + "'");
    }
    return obj.at(name);
}

std::string as_string(const json& j, const char* context)
{
    if (!j.is_string()) throw InputError(std::string(context) + ": expected a string, got " + j.dump());
    return j.get<std::string>();
}

VertexId vertex_ref(const Game& game, const json& j, const char* context)
{
    auto name = as_string(j, context);
    auto v = game.find_vertex(name);
    if (!v) throw InputError(std::string(context) + ": unknown vertex '" + name + "'");
    return *v;
}

json value_json(const Value& v)
{
    if (v.is_finite() && v.finite().is_integer()) return v.finite().num();
    return v.to_string();
}

Value parse_value(const json& j, const char* context)
{
    try {
        if (j.is_number_integer()) return Value(j.get<std::int64_t>());
        if (j.is_string()) {
            auto s = j.get<std::string>();
            if (s == "+inf") s = "inf";
            return Value::parse(s);
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string(context) + ": bad value " + j.dump());
    }
    throw InputError(std::string(context) + ": bad value " + j.dump());
}

json rational_json(const Rational& r)
{
    if (r.is_integer()) return r.num();
    return r.to_string();
}

Rational parse_rational(const json& j, const char* context)
{
    auto v = parse_value(j, context);
    if (!v.is_finite()) throw InputError(std::string(context) + ": weights must be finite, got " + j.dump());
    return v.finite();
}

json vertex_list(const Game& game, const std::vector<VertexId>& vs)
{
    json out = json::array();
    for (auto v : vs) out.push_back(game.vertex_name(v));
    return out;
}

std::vector<VertexId> parse_vertex_list(const Game& game, const json& j, const char* context)
{
    if (!j.is_array()) throw InputError(std::string(context) + ": expected an array of vertex ids");
    std::vector<VertexId> out;
    for (const auto& x : j) out.push_back(vertex_ref(game, x, context));
    return out;
}

json player_list(const Game& game, PlayerSet set)
{
    json out = json::array();
    for (auto p : set.members()) out.push_back(game.player_name(p));
    return out;
}

PlayerSet parse_player_list(const Game& game, const json& j, const char* context)
{
    if (!j.is_array()) throw InputError(std::string(context) + ": expected an array of player names");
    PlayerSet out;
    for (const auto& x : j) {
        auto name = as_string(x, context);
        auto p = game.find_player(name);
        if (!p) throw InputError(std::string(context) + ": unknown player '" + name + "'");
        out.insert(*p);
    }
    return out;
}

json values_json(const std::vector<Value>& values)
{
    json out = json::array();
    for (const auto& v : values) out.push_back(value_json(v));
    return out;
}

std::vector<Value> parse_values(const json& j, const char* context)
{
    if (!j.is_array()) throw InputError(std::string(context) + ": expected an array of values");
    std::vector<Value> out;
    for (const auto& x : j) out.push_back(parse_value(x, context));
    return out;
}

json lasso_obj(const Game& game, const Lasso& l)
{
    return json{{"stem", vertex_list(game, l.stem)}, {"cycle", vertex_list(game, l.cycle)}};
}

Lasso parse_lasso_obj(const Game& game, const json& j)
{
    Lasso l;
    l.stem = parse_vertex_list(game, field(j, "stem", "lasso"), "lasso stem");
    l.cycle = parse_vertex_list(game, field(j, "cycle", "lasso"), "lasso cycle");
    validate(game, l);
    return l;
}

} // namespace

Game parse_game(const std::string& text)
{
    const auto doc = parse_json(text, "game");
    Game::Spec spec;
    const auto& players = field(doc, "players", "game");
    if (!players.is_array()) throw InputError("game: 'players' must be an array");
    for (const auto& p : players) spec.players.push_back(as_string(p, "game players"));
    std::map<std::string, PlayerId> player_ids;
    for (PlayerId p = 0; p < spec.players.size(); ++p) player_ids.emplace(spec.players[p], p);
    auto player_ref = [&](const json& j, const char* context) {
        auto name = as_string(j, context);
        auto it = player_ids.find(name);
        if (it == player_ids.end()) throw InputError(std::string(context) + ": unknown player '" + name + "'");
        return it->second;
    };

    std::map<std::string, VertexId> vertex_ids;
    const auto& vertices = field(doc, "vertices", "game");
    if (!vertices.is_array()) throw InputError("game: 'vertices' must be an array");
    for (const auto& v : vertices) {
        auto id = as_string(field(v, "id", "vertex"), "vertex id");
        spec.owners.push_back(player_ref(field(v, "owner", ("vertex " + id).c_str()), ("owner of vertex " + id).c_str()));
        vertex_ids.emplace(id, static_cast<VertexId>(spec.vertices.size()));
        spec.vertices.push_back(id);
    }
    auto vref = [&](const json& j, const char* context) {
        auto name = as_string(j, context);
        auto it = vertex_ids.find(name);
        if (it == vertex_ids.end()) throw InputError(std::string(context) + ": unknown vertex '" + name + "'");
        return it->second;
    };

    const auto& cost_spec = field(doc, "cost", "game");
    const auto kind = as_string(field(cost_spec, "kind", "cost"), "cost kind");
    if (kind == "reachability") {
        spec.kind = CostKind::Reachability;
    } else if (kind == "liminf") {
        spec.kind = CostKind::LimInf;
    } else if (kind == "limsup") {
        spec.kind = CostKind::LimSup;
    } else if (kind == "mean-payoff" || kind == "meanpayoff" || kind == "mean_payoff") {
        throw InputError("cost kind 'mean-payoff' is not supported: its level sets are not omega-regular");
    } else {
        throw InputError("unknown cost kind '" + kind + "' (expected reachability, liminf or limsup)");
    }

    const auto& edges = field(doc, "edges", "game");
    if (!edges.is_array()) throw InputError("game: 'edges' must be an array");
    for (const auto& e : edges) {
        Edge edge;
        edge.from = vref(field(e, "from", "edge"), "edge source");
        edge.to = vref(field(e, "to", "edge"), "edge target");
        if (e.contains("weights")) {
            const auto& w = e.at("weights");
            if (!w.is_array()) throw InputError("edge weights must be an array");
            if (spec.kind != CostKind::Reachability) {
                for (const auto& x : w) edge.weights.push_back(parse_rational(x, "edge weight"));
            }
        }
        spec.edges.push_back(std::move(edge));
    }

    if (spec.kind == CostKind::Reachability) {
        spec.targets.assign(spec.players.size(), {});
        const auto& targets = field(cost_spec, "targets", "reachability cost");
        if (!targets.is_object()) throw InputError("reachability cost: 'targets' must map players to vertex lists");
        for (const auto& [name, list] : targets.items()) {
            auto p = player_ref(json(name), "targets");
            if (!list.is_array()) throw InputError("targets of " + name + " must be an array");
            for (const auto& v : list) spec.targets[p].push_back(vref(v, "target"));
        }
    }
    spec.initial = vref(field(doc, "initial", "game"), "initial vertex");
    return Game(std::move(spec));
}

std::string game_to_json(const Game& game)
{
    json doc;
    doc["players"] = game.player_names();
    json vertices = json::array();
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        vertices.push_back(json{{"id", game.vertex_name(v)}, {"owner", game.player_name(game.owner(v))}});
    }
    doc["vertices"] = vertices;
    json edges = json::array();
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        for (auto w : game.successors(v)) {
            json e{{"from", game.vertex_name(v)}, {"to", game.vertex_name(w)}};
            if (!game.is_reachability()) {
                json ws = json::array();
                for (const auto& r : game.edge(*game.edge_index(v, w)).weights) ws.push_back(rational_json(r));
                e["weights"] = ws;
            }
            edges.push_back(e);
        }
    }
    doc["edges"] = edges;
    json c{{"kind", to_string(game.cost_kind())}};
    if (game.is_reachability()) {
        json targets = json::object();
        for (PlayerId p = 0; p < game.num_players(); ++p) targets[game.player_name(p)] = vertex_list(game, game.targets()[p]);
        c["targets"] = targets;
    }
    doc["cost"] = c;
    doc["initial"] = game.vertex_name(game.initial());
    return doc.dump(2) + "\n";
}

Profile parse_profile(const Game& game, const std::string& text)
{
    const auto doc = parse_json(text, "profile");
    if (!doc.is_object()) throw InputError("profile: expected an object keyed by player name");
    for (const auto& [name, _] : doc.items()) {
        if (!game.find_player(name)) throw InputError("profile: unknown player '" + name + "'");
    }
    Profile profile;
    for (PlayerId p = 0; p < game.num_players(); ++p) {
        const auto& name = game.player_name(p);
        if (!doc.contains(name)) throw InputError("profile: no strategy for player '" + name + "'");
        const auto& s = doc.at(name);
        if (s.contains("positional")) {
            const auto& map = s.at("positional");
            if (!map.is_object()) throw InputError("positional strategy of " + name + " must map vertices to successors");
            MooreStrategy strat(p, game.num_vertices(), 1, 0);
            for (const auto& [vname, succ] : map.items()) {
                auto v = vertex_ref(game, json(vname), "positional strategy");
                if (game.owner(v) != p) continue;
                strat.set_output(0, v, vertex_ref(game, succ, "positional strategy"));
            }
            profile.strategies.push_back(std::move(strat));
            continue;
        }
        const auto& count = field(s, "memory_states", ("strategy of " + name).c_str());
        if (!count.is_number_unsigned() || count.get<std::uint64_t>() == 0) {
            throw InputError("strategy of " + name + ": memory_states must be a positive integer");
        }
        const auto states = static_cast<MemoryState>(count.get<std::uint64_t>());
        auto state_ref = [&](const json& j) {
            if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= states) {
                throw InputError("strategy of " + name + ": bad memory state " + j.dump());
            }
            return static_cast<MemoryState>(j.get<std::uint64_t>());
        };
        MooreStrategy strat(p, game.num_vertices(), states, s.contains("initial") ? state_ref(s.at("initial")) : 0);
        auto triples = [&](const char* key, auto apply) {
            if (!s.contains(key)) return;
            for (const auto& t : s.at(key)) {
                if (!t.is_array() || t.size() != 3) throw InputError("strategy of " + name + ": " + key + " entries are triples");
                apply(t);
            }
        };
        triples("update", [&](const json& t) {
            strat.set_update(state_ref(t[0]), vertex_ref(game, t[1], "update"), state_ref(t[2]));
        });
        triples("output", [&](const json& t) {
            auto v = vertex_ref(game, t[1], "output");
            if (game.owner(v) != p) return;
            strat.set_output(state_ref(t[0]), v, vertex_ref(game, t[2], "output"));
        });
        profile.strategies.push_back(std::move(strat));
    }
    profile.validate(game);
    return profile;
}

std::string profile_to_json(const Game& game, const Profile& profile)
{
    json doc = json::object();
    for (PlayerId p = 0; p < game.num_players(); ++p) {
        const auto& s = profile[p];
        bool positional = s.memory_states() == 1;
        json entry;
        if (positional) {
            json map = json::object();
            for (VertexId v = 0; v < game.num_vertices(); ++v) {
                if (game.owner(v) == p) map[game.vertex_name(v)] = game.vertex_name(s.output(0, v));
            }
            entry["positional"] = map;
        } else {
            entry["memory_states"] = s.memory_states();
            entry["initial"] = s.initial();
            json update = json::array(), output = json::array();
            for (MemoryState m = 0; m < s.memory_states(); ++m) {
                for (VertexId v = 0; v < game.num_vertices(); ++v) {
                    if (s.update(m, v) != m) update.push_back(json::array({m, game.vertex_name(v), s.update(m, v)}));
                    if (game.owner(v) == p) {
                        output.push_back(json::array({m, game.vertex_name(v), game.vertex_name(s.output(m, v))}));
                    }
                }
            }
            entry["update"] = update;
            entry["output"] = output;
        }
        doc[game.player_name(p)] = entry;
    }
    return doc.dump(2) + "\n";
}

Lasso parse_lasso_json(const Game& game, const std::string& text)
{
    return parse_lasso_obj(game, parse_json(text, "lasso"));
}

std::string lasso_to_json(const Game& game, const Lasso& lasso) { return lasso_obj(game, lasso).dump() + "\n"; }

Lasso parse_lasso_text(const Game& game, const std::string& text)
{
    const auto bar = text.find('|');
    if (bar == std::string::npos) throw InputError("lasso '" + text + "': expected 'stem|cycle'");
    auto split = [&](const std::string& part) {
        std::vector<VertexId> out;
        std::stringstream ss(part);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            auto v = game.find_vertex(item);
            if (!v) throw InputError("lasso '" + text + "': unknown vertex '" + item + "'");
            out.push_back(*v);
        }
        return out;
    };
    Lasso l{split(text.substr(0, bar)), split(text.substr(bar + 1))};
    validate(game, l);
    return l;
}

std::vector<Value> parse_bounds(const Game& game, const std::string& text)
{
    std::vector<Value> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        item = b == std::string::npos ? "" : item.substr(b, e - b + 1);
        if (item == "+inf") item = "inf";
        try {
            out.push_back(Value::parse(item));
        } catch (const std::exception&) {
            throw InputError("bounds: bad value '" + item + "'");
        }
    }
    if (out.size() != game.num_players()) {
        throw InputError("bounds: expected " + std::to_string(game.num_players()) + " values, got "
                         + std::to_string(out.size()));
    }
    return out;
}

namespace {

json table_json(const Game& game, const BoundTable& t, std::size_t alpha)
{
    json cells = json::array();
    json guards = json::array();
    for (std::size_t s = 0; s < t.strata.size(); ++s) {
        const auto& st = t.strata[s];
        const auto succ = game.successors(st.vertex);
        for (std::size_t k = 0; k < succ.size(); ++k) {
            const auto& c = t.cells[s][k];
            cells.push_back(json{{"survivors", player_list(game, st.survivors)},
                                 {"vertex", game.vertex_name(st.vertex)},
                                 {"successor", game.vertex_name(succ[k])},
                                 {"nonempty", c.nonempty},
                                 {"values", values_json(c.values)}});
        }
        guards.push_back(json{{"survivors", player_list(game, st.survivors)},
                              {"vertex", game.vertex_name(st.vertex)},
                              {"values", values_json(t.guards[s])}});
    }
    return json{{"alpha", alpha}, {"cells", cells}, {"guards", guards}};
}

} // namespace

std::string report_to_json(const Game& game, const FixpointReport& report)
{
    json doc;
    doc["mode"] = to_string(report.mode);
    doc["players"] = game.player_names();
    doc["alpha_star"] = report.alpha_star;
    doc["exists"] = report.exists;
    json strata = json::array();
    const auto& last = report.final_table();
    for (std::size_t s = 0; s < last.strata.size(); ++s) {
        strata.push_back(json{{"survivors", player_list(game, last.strata[s].survivors)},
                              {"vertex", game.vertex_name(last.strata[s].vertex)},
                              {"nonempty", last.nonempty(s)},
                              {"max_cost", values_json(last.aggregated(s))}});
    }
    doc["strata"] = strata;
    json iterations = json::array();
    for (std::size_t a = 0; a < report.iterations.size(); ++a) iterations.push_back(table_json(game, report.iterations[a], a));
    doc["iterations"] = iterations;
    json witnesses = json::array();
    for (const auto& w : report.witnesses) {
        witnesses.push_back(json{{"player", game.player_name(w.player)},
                                 {"survivors", player_list(game, w.stratum.survivors)},
                                 {"vertex", game.vertex_name(w.stratum.vertex)},
                                 {"stem", vertex_list(game, w.play.stem)},
                                 {"cycle", vertex_list(game, w.play.cycle)},
                                 {"cost", values_json(w.cost)}});
    }
    doc["witnesses"] = witnesses;
    return doc.dump(2) + "\n";
}

FixpointReport parse_report(const Game& game, const std::string& text)
{
    const auto doc = parse_json(text, "report");
    FixpointReport report;
    report.mode = parse_mode(as_string(field(doc, "mode", "report"), "report mode"));
    if (report.mode != mode_of(game)) throw InputError("report mode does not match the game's cost kind");
    report.alpha_star = field(doc, "alpha_star", "report").get<std::size_t>();
    report.exists = field(doc, "exists", "report").get<bool>();
    for (const auto& it : field(doc, "iterations", "report")) {
        BoundTable t;
        t.mode = report.mode;
        std::map<Stratum, std::vector<std::pair<VertexId, Cell>>> rows;
        for (const auto& c : field(it, "cells", "iteration")) {
            Stratum st{parse_player_list(game, field(c, "survivors", "cell"), "cell survivors"),
                       vertex_ref(game, field(c, "vertex", "cell"), "cell vertex")};
            Cell cell{field(c, "nonempty", "cell").get<bool>(), parse_values(field(c, "values", "cell"), "cell values")};
            if (cell.values.size() != game.num_players()) throw InputError("cell values need one entry per player");
            rows[st].emplace_back(vertex_ref(game, field(c, "successor", "cell"), "cell successor"), std::move(cell));
        }
        for (auto& [st, row] : rows) {
            const auto succ = game.successors(st.vertex);
            if (row.size() != succ.size()) {
                throw InputError("report: stratum at " + game.vertex_name(st.vertex) + " needs one cell per edge");
            }
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<Cell> cells;
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row[k].first != succ[k]) throw InputError("report: cell for a non-edge at " + game.vertex_name(st.vertex));
                cells.push_back(std::move(row[k].second));
            }
            t.strata.push_back(st);
            t.cells.push_back(std::move(cells));
        }
        index_strata(t);
        t.guards.assign(t.strata.size(), {});
        if (it.contains("guards")) {
            for (const auto& g : it.at("guards")) {
                Stratum st{parse_player_list(game, field(g, "survivors", "guard"), "guard survivors"),
                           vertex_ref(game, field(g, "vertex", "guard"), "guard vertex")};
                auto s = t.find(st);
                if (!s) throw InputError("report: guard for an unknown stratum");
                t.guards[*s] = parse_values(field(g, "values", "guard"), "guard values");
            }
        }
        report.iterations.push_back(std::move(t));
    }
    if (report.iterations.size() != report.alpha_star + 1) {
        throw InputError("report: expected " + std::to_string(report.alpha_star + 1) + " iterations");
    }
    for (const auto& w : field(doc, "witnesses", "report")) {
        StratumWitness sw;
        auto name = as_string(field(w, "player", "witness"), "witness player");
        auto p = game.find_player(name);
        if (!p) throw InputError("witness: unknown player '" + name + "'");
        sw.player = *p;
        sw.stratum = Stratum{parse_player_list(game, field(w, "survivors", "witness"), "witness survivors"),
                             vertex_ref(game, field(w, "vertex", "witness"), "witness vertex")};
        sw.play = parse_lasso_obj(game, w);
        sw.cost = parse_values(field(w, "cost", "witness"), "witness cost");
        report.witnesses.push_back(std::move(sw));
    }
    return report;
}

std::string verdict_to_json(const Game& game, const Verdict& verdict)
{
    json doc{{"kind", to_string(verdict.kind)}, {"holds", verdict.holds}};
    if (verdict.witness) {
        const auto& w = *verdict.witness;
        json steps = w.steps == std::numeric_limits<std::size_t>::max() ? json("inf") : json(w.steps);
        doc["witness"] = json{{"history", vertex_list(game, w.history)},
                              {"player", game.player_name(w.player)},
                              {"prescribed", game.vertex_name(w.prescribed)},
                              {"alternative", game.vertex_name(w.alternative)},
                              {"prescribed_play", lasso_obj(game, w.prescribed_play)},
                              {"deviating_play", lasso_obj(game, w.deviating_play)},
                              {"prescribed_cost", values_json(w.prescribed_cost)},
                              {"deviating_cost", values_json(w.deviating_cost)},
                              {"deviation_steps", steps}};
    }
    return doc.dump(2) + "\n";
}

std::string game_to_dot(const Game& game, const std::optional<Profile>& profile)
{
    static const char* shapes[] = {"circle", "square", "diamond", "triangle", "pentagon", "hexagon", "octagon"};
    std::set<std::pair<VertexId, VertexId>> thick;
    if (profile) {
        bool positional = true;
        for (const auto& s : profile->strategies) positional = positional && s.memory_states() == 1;
        if (positional) {
            for (VertexId v = 0; v < game.num_vertices(); ++v) thick.emplace(v, choice(game, *profile, MemoryVector(game.num_players(), 0), v));
        } else {
            auto play = outcome(game, *profile, game.initial());
            for (std::size_t n = 0; n < play.length(); ++n) thick.emplace(play.at(n), play.at(n + 1));
        }
    }
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream out;
    out << "digraph game {\n  rankdir=LR;\n";
    out << "  init [shape=point];\n  init -> " << quote(game.vertex_name(game.initial())) << ";\n";
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        std::string label = game.vertex_name(v);
        if (game.is_reachability()) {
            for (auto p : game.targets_at(v).members()) label += "\\n" + game.player_name(p);
        }
        out << "  " << quote(game.vertex_name(v)) << " [shape=" << shapes[game.owner(v) % std::size(shapes)]
            << ", label=" << quote(label);
        if (!game.targets_at(v).empty()) out << ", peripheries=2";
        out << "];\n";
    }
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        for (auto w : game.successors(v)) {
            out << "  " << quote(game.vertex_name(v)) << " -> " << quote(game.vertex_name(w));
            std::vector<std::string> attrs;
            if (!game.is_reachability()) {
                std::string label = "(";
                const auto& ws = game.edge(*game.edge_index(v, w)).weights;
                for (std::size_t i = 0; i < ws.size(); ++i) label += (i ? "," : "") + ws[i].to_string();
                attrs.push_back("label=" + quote(label + ")"));
            }
            if (thick.count({v, w})) attrs.push_back("penwidth=3");
            if (!attrs.empty()) {
                out << " [";
                for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
                out << "]";
            }
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string values_to_json(const std::vector<Value>& values) { return values_json(values).dump(); }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

} // namespace spelab
