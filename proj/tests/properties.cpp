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

#include "properties.hpp"

#include <random>

#include "spelab/fixpoint.hpp"
#include "spelab/oracle.hpp"
#include "spelab/prefixind_fixpoint.hpp"

namespace spelab::testing {

namespace {

constexpr CostKind kKinds[] = {CostKind::Reachability, CostKind::LimInf, CostKind::LimSup};

/// Random walk of `length` vertices from v.
std::vector<VertexId> walk(const Game& g, VertexId v, std::size_t length, std::mt19937_64& rng)
{
    std::vector<VertexId> out;
    for (std::size_t k = 0; k < length; ++k) {
        out.push_back(v);
        auto succ = g.successors(v);
        v = succ[rng() % succ.size()];
    }
    return out;
}

/// Random lasso from v: a walk, closed into a cycle at its first repeat
/// of a vertex it can return to.
Lasso random_lasso(const Game& g, VertexId v, std::mt19937_64& rng)
{
    std::vector<VertexId> path{v};
    for (;;) {
        auto succ = g.successors(path.back());
        auto next = succ[rng() % succ.size()];
        for (std::size_t k = 0; k < path.size(); ++k) {
            if (path[k] == next) {
                return Lasso{{path.begin(), path.begin() + static_cast<std::ptrdiff_t>(k)},
                             {path.begin() + static_cast<std::ptrdiff_t>(k), path.end()}};
            }
        }
        path.push_back(next);
    }
}

bool same_play(const Lasso& a, const Lasso& b, std::size_t horizon)
{
    for (std::size_t n = 0; n < horizon; ++n) {
        if (a.at(n) != b.at(n)) return false;
    }
    return true;
}

std::string describe(const Game& g, std::uint64_t seed, const std::string& what)
{
    return "seed " + std::to_string(seed) + " (" + to_string(g.cost_kind()) + "): " + what;
}

} // namespace

PropertyResult lasso_canonicalization(std::size_t samples)
{
    PropertyResult r;
    std::mt19937_64 rng(7);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto g = corpus_game(s, kKinds[s % 3]);
        const auto base = random_lasso(g, g.initial(), rng);
        // Unroll the cycle, rotate part of it into the stem.
        Lasso noisy = base;
        const auto reps = 1 + rng() % 3;
        for (std::size_t k = 1; k < reps; ++k) noisy.cycle.insert(noisy.cycle.end(), base.cycle.begin(), base.cycle.end());
        const auto shift = rng() % noisy.cycle.size();
        for (std::size_t k = 0; k < shift; ++k) {
            noisy.stem.push_back(noisy.cycle.front());
            noisy.cycle.erase(noisy.cycle.begin());
            noisy.cycle.push_back(noisy.stem.back());
        }
        ++r.cases;
        const auto c = canonical(noisy);
        const auto horizon = 2 * (noisy.length() + c.length());
        if (!is_canonical(c)) r.fail(describe(g, s, "canonical form not canonical: " + format_lasso(g, c)));
        if (canonical(c) != c) r.fail(describe(g, s, "canonicalization not idempotent"));
        if (c != canonical(base)) r.fail(describe(g, s, "two spellings of one play disagree"));
        if (!same_play(c, noisy, horizon)) r.fail(describe(g, s, "canonical form changes the play"));
        if (c.length() > noisy.length()) r.fail(describe(g, s, "canonical form is longer"));
        if (cost(g, c) != cost(g, noisy)) r.fail(describe(g, s, "cost changes under canonicalization"));
        if (!g.is_reachability()) {
            // Prefix independence: dropping the stem keeps the cost.
            if (cost(g, c) != cost(g, Lasso{{}, c.cycle})) r.fail(describe(g, s, "cost depends on the stem"));
        }
    }
    return r;
}

PropertyResult shift_law(std::size_t samples)
{
    PropertyResult r;
    std::mt19937_64 rng(11);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto g = corpus_game(s, CostKind::Reachability);
        const auto h = walk(g, g.initial(), 1 + rng() % 6, rng);
        auto succ = g.successors(h.back());
        const auto rho = random_lasso(g, succ[rng() % succ.size()], rng);
        ++r.cases;
        if (!shift_cost_identity_check(g, h, rho)) {
            r.fail(describe(g, s, "shift law fails for " + format_history(g, h) + " . " + format_lasso(g, rho)));
        }
    }
    return r;
}

PropertyResult witness_suffix_closure(std::size_t games)
{
    PropertyResult r;
    for (std::size_t s = 0; s < games; ++s) {
        const auto g = corpus_game(s, kKinds[s % 3]);
        const auto report = solve(g);
        for (const auto& w : report.witnesses) {
            // Every suffix of a fixpoint play lies in the fixpoint set of its stratum.
            PlayerSet survivors = w.stratum.survivors;
            const auto span = w.play.length() + w.play.cycle.size();
            for (std::size_t n = 0; n < span; ++n) {
                Lasso suffix;
                if (n < w.play.stem.size()) {
                    suffix = {{w.play.stem.begin() + static_cast<std::ptrdiff_t>(n), w.play.stem.end()}, w.play.cycle};
                } else {
                    const auto k = (n - w.play.stem.size()) % w.play.cycle.size();
                    suffix.cycle.assign(w.play.cycle.begin() + static_cast<std::ptrdiff_t>(k), w.play.cycle.end());
                    suffix.cycle.insert(suffix.cycle.end(), w.play.cycle.begin(),
                                        w.play.cycle.begin() + static_cast<std::ptrdiff_t>(k));
                }
                const Stratum st{report.mode == Mode::Reach ? survivors : g.all_players(), w.play.at(n)};
                ++r.cases;
                if (!is_member(g, report, report.alpha_star, st, suffix)) {
                    r.fail(describe(g, s, "suffix " + format_lasso(g, suffix) + " of witness " + format_lasso(g, w.play)
                                              + " left the fixpoint set"));
                }
                survivors = survivors.without(g.targets_at(w.play.at(n)));
            }
        }
    }
    return r;
}

PropertyResult cycle_constant_bounds(std::size_t games)
{
    PropertyResult r;
    for (std::size_t s = 0; s < games; ++s) {
        const auto g = corpus_game(s, s % 2 ? CostKind::LimSup : CostKind::LimInf);
        const auto report = solve(g);
        ++r.cases;
        if (!spelab::cycle_constant_bounds(g, nullptr)) r.fail(describe(g, s, "unconstrained product"));
        for (std::size_t a = 0; a < report.iterations.size(); ++a) {
            ++r.cases;
            if (!spelab::cycle_constant_bounds(g, &report.iterations[a])) {
                r.fail(describe(g, s, "bound vector varies on a cycle at iteration " + std::to_string(a)));
            }
        }
    }
    return r;
}

PropertyResult table_monotonicity(std::size_t games)
{
    PropertyResult r;
    for (std::size_t s = 0; s < games; ++s) {
        const auto g = corpus_game(s, kKinds[s % 3]);
        const auto report = solve(g);
        for (std::size_t a = 0; a + 1 < report.iterations.size(); ++a) {
            const auto& prev = report.iterations[a];
            const auto& next = report.iterations[a + 1];
            for (std::size_t st = 0; st < prev.strata.size(); ++st) {
                for (std::size_t e = 0; e < prev.cells[st].size(); ++e) {
                    ++r.cases;
                    const auto& x = prev.cells[st][e];
                    const auto& y = next.cells[st][e];
                    if (y.nonempty && !x.nonempty) r.fail(describe(g, s, "a set grew back"));
                    for (std::size_t i = 0; i < x.values.size(); ++i) {
                        if (x.values[i] < y.values[i]) {
                            r.fail(describe(g, s, "bound increased at iteration " + std::to_string(a + 1)));
                        }
                    }
                }
            }
        }
        // Membership only ever shrinks.
        const auto universe = build_universe(g, 3, 3);
        for (const auto& group : universe.members) {
            for (const auto& l : group) {
                const Stratum st{g.all_players(), l.first()};
                if (report.mode == Mode::Reach && !report.final_table().find(st)) continue;
                bool was = true;
                for (std::size_t a = 0; a <= report.alpha_star; ++a) {
                    ++r.cases;
                    const bool now = is_member(g, report, a, st, l);
                    if (now && !was) r.fail(describe(g, s, format_lasso(g, l) + " re-entered at " + std::to_string(a)));
                    was = now;
                }
            }
        }
    }
    return r;
}

} // namespace spelab::testing
