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

#include "spelab/synthesis.hpp"

#include <map>
#include <tuple>

#include "spelab/eq_check.hpp"
#include "spelab/errors.hpp"

namespace spelab {

namespace {

constexpr MemoryState kInit = 0;
constexpr MemoryState kFree = 1;

/// A memory label: which play is followed, where on it, and who has not
/// reached a target yet (after the current vertex).
struct Label
{
    std::size_t lasso = 0;
    std::size_t position = 0;
    PlayerSet survivors;

    friend auto operator<=>(const Label&, const Label&) = default;
};

class Builder
{
public:
    Builder(const Game& game, const FixpointReport& report) : game_(game), report_(report) {}

    std::size_t lasso_id(const Lasso& l)
    {
        auto [it, inserted] = lasso_ids_.try_emplace(l, lassos_.size());
        if (inserted) lassos_.push_back(l);
        return it->second;
    }

    /// Play of the stratum entered at x with survivors `before` (the players
    /// still pending before x), punishing `deviator`.
    Lasso punishment(PlayerId deviator, PlayerSet before, VertexId x) const
    {
        const Stratum stratum{game_.is_reachability() ? before : game_.all_players(), x};
        if (const auto* w = report_.find_witness(deviator, stratum)) return w->play;
        for (auto p : stratum.survivors.members()) {
            if (const auto* w = report_.find_witness(p, stratum)) return w->play;
        }
        if (!stratum.survivors.empty()) {
            throw ConsistencyError("no witness for the stratum at " + game_.vertex_name(x));
        }
        // Nobody is pending: any play will do.
        return outcome(game_, positional_profile(game_, first_choices()), x);
    }

    MemoryState state_of(const Label& label)
    {
        auto [it, inserted] = label_ids_.try_emplace(label, static_cast<MemoryState>(labels_.size() + 2));
        if (inserted) labels_.push_back(label);
        return it->second;
    }

    Label enter(std::size_t lasso, PlayerSet before)
    {
        const auto& l = lassos_[lasso];
        return Label{lasso, 0, before.without(game_.targets_at(l.at(0)))};
    }

    std::size_t advance_position(std::size_t lasso, std::size_t p) const
    {
        const auto& l = lassos_[lasso];
        return p + 1 == l.length() ? l.stem.size() : p + 1;
    }

    MemoryState next(const Label& label, VertexId x)
    {
        const auto& l = lassos_[label.lasso];
        const auto u = l.at(label.position);
        const auto after_x = label.survivors.without(game_.targets_at(x));
        const auto expected = l.at(label.position + 1);
        if (x == expected) return state_of(Label{label.lasso, advance_position(label.lasso, label.position), after_x});
        if (!game_.has_edge(u, x)) return kFree;
        const auto id = lasso_id(punishment(game_.owner(u), label.survivors, x));
        return state_of(Label{id, 0, after_x});
    }

    std::vector<VertexId> first_choices() const
    {
        std::vector<VertexId> c;
        for (VertexId v = 0; v < game_.num_vertices(); ++v) c.push_back(game_.successors(v).front());
        return c;
    }

    Synthesis build(const Lasso& root)
    {
        const auto v0 = game_.initial();
        const auto root_id = lasso_id(root);
        const auto root_state = state_of(enter(root_id, game_.all_players()));

        std::vector<std::vector<MemoryState>> update;
        for (std::size_t k = 0; k < labels_.size(); ++k) {
            const auto label = labels_[k];
            std::vector<MemoryState> row;
            for (VertexId x = 0; x < game_.num_vertices(); ++x) row.push_back(next(label, x));
            update.push_back(std::move(row));
        }

        const auto states = static_cast<MemoryState>(labels_.size() + 2);
        const auto first = first_choices();
        Synthesis out;
        out.root = root;
        out.lassos = lassos_.size();
        for (PlayerId p = 0; p < game_.num_players(); ++p) {
            MooreStrategy s(p, game_.num_vertices(), states, kInit);
            for (VertexId x = 0; x < game_.num_vertices(); ++x) {
                s.set_update(kInit, x, x == v0 ? root_state : kFree);
                s.set_update(kFree, x, kFree);
                if (game_.owner(x) == p) {
                    s.set_output(kInit, x, first[x]);
                    s.set_output(kFree, x, first[x]);
                }
            }
            for (std::size_t k = 0; k < labels_.size(); ++k) {
                const auto m = static_cast<MemoryState>(k + 2);
                const auto& label = labels_[k];
                const auto& l = lassos_[label.lasso];
                for (VertexId x = 0; x < game_.num_vertices(); ++x) {
                    s.set_update(m, x, update[k][x]);
                    if (game_.owner(x) != p) continue;
                    s.set_output(m, x, l.at(label.position) == x ? l.at(label.position + 1) : first[x]);
                }
            }
            out.profile.strategies.push_back(std::move(s));
        }
        return out;
    }

private:
    const Game& game_;
    const FixpointReport& report_;
    std::map<Lasso, std::size_t> lasso_ids_;
    std::vector<Lasso> lassos_;
    std::map<Label, MemoryState> label_ids_;
    std::vector<Label> labels_;
};

} // namespace

Synthesis synthesize(const Game& game, const FixpointReport& report, const std::optional<Lasso>& target)
{
    const auto root_stratum_ = root_stratum(game);
    if (!report.final_table().nonempty(*report.final_table().find(root_stratum_))) {
        throw InputError("the fixpoint set at the initial vertex is empty: no (weak) SPE exists");
    }
    Lasso root;
    if (target) {
        validate(game, *target);
        if (!is_member(game, report, report.alpha_star, root_stratum_, *target)) {
            throw InputError("play " + format_lasso(game, *target) + " is not in the fixpoint set at "
                             + game.vertex_name(game.initial()));
        }
        root = canonical(*target);
    } else {
        const StratumWitness* w = nullptr;
        for (PlayerId p = 0; p < game.num_players() && !w; ++p) w = report.find_witness(p, root_stratum_);
        if (!w) throw ConsistencyError("no witness at the initial vertex");
        root = w->play;
    }
    Builder builder(game, report);
    return builder.build(root);
}

bool audit(const Game& game, const Profile& profile, const FixpointReport& report, const Lasso& root)
{
    if (!check_very_weak_spe(game, profile).holds) return false;
    if (!is_member(game, report, report.alpha_star, root_stratum(game), root)) return false;
    return cost(game, outcome(game, profile, game.initial())) == cost(game, root);
}

bool audit(const Game& game, const Synthesis& synthesis, const FixpointReport& report)
{
    return audit(game, synthesis.profile, report, synthesis.root);
}

} // namespace spelab
