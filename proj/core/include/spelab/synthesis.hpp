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

#pragma once

#include <optional>

#include "spelab/fixpoint.hpp"
#include "spelab/game.hpp"
#include "spelab/strategy.hpp"

namespace spelab {

struct Synthesis
{
    Profile profile;
    /// The play the profile follows from the initial vertex.
    Lasso root;
    /// Distinct witness plays used as memory labels.
    std::size_t lassos = 0;
};

/// Builds a finite-memory profile from the report's maximal-cost witnesses:
/// everyone follows the current play; when the owner d of a vertex leaves it
/// towards x, the memory switches to the witness of d for the stratum of x.
/// Without `target`, the root play is the witness of the first player at the
/// root stratum. Throws InputError when `target` is not in the fixpoint set.
Synthesis synthesize(const Game& game, const FixpointReport& report, const std::optional<Lasso>& target = std::nullopt);

/// The profile is a very weak SPE and its outcome costs what `root` costs.
bool audit(const Game& game, const Profile& profile, const FixpointReport& report, const Lasso& root);
bool audit(const Game& game, const Synthesis& synthesis, const FixpointReport& report);

} // namespace spelab
