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
#include <string>

#include "spelab/eq_check.hpp"
#include "spelab/fixpoint.hpp"
#include "spelab/game.hpp"
#include "spelab/strategy.hpp"

namespace spelab {

/// JSON interchange. Extended values are written as "inf" / "-inf", the
/// empty marker -1 stays numeric, non-integral rationals are "p/q" strings.
/// Every parse function throws InputError with a one-line diagnostic.

Game parse_game(const std::string& text);
std::string game_to_json(const Game& game);

Profile parse_profile(const Game& game, const std::string& text);
std::string profile_to_json(const Game& game, const Profile& profile);

Lasso parse_lasso_json(const Game& game, const std::string& text);
std::string lasso_to_json(const Game& game, const Lasso& lasso);
/// "v0,v1|v3": stem before the bar, cycle after it.
Lasso parse_lasso_text(const Game& game, const std::string& text);

/// Comma-separated values, one per player ("3,inf,2").
std::vector<Value> parse_bounds(const Game& game, const std::string& text);
std::string values_to_json(const std::vector<Value>& values);

FixpointReport parse_report(const Game& game, const std::string& text);
std::string report_to_json(const Game& game, const FixpointReport& report);

std::string verdict_to_json(const Game& game, const Verdict& verdict);

/// Graphviz rendering: circles, squares, ... by owner; edges chosen by the
/// profile (positional) or on its outcome are drawn thick.
std::string game_to_dot(const Game& game, const std::optional<Profile>& profile = std::nullopt);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace spelab
