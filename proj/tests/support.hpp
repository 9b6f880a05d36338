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

#include <string>
#include <vector>

#include "spelab/game.hpp"
#include "spelab/io.hpp"
#include "spelab/strategy.hpp"

#ifndef SPELAB_TEST_DATA
#error "SPELAB_TEST_DATA must point at tests/data"
#endif

namespace spelab::testing {

inline std::string data_path(const std::string& name) { return std::string(SPELAB_TEST_DATA) + "/" + name; }

inline Game load_game(const std::string& name) { return parse_game(read_file(data_path(name))); }

inline Profile load_profile(const Game& game, const std::string& name)
{
    return parse_profile(game, read_file(data_path(name)));
}

inline VertexId vid(const Game& game, const std::string& name) { return *game.find_vertex(name); }

inline Lasso lasso(const Game& game, const std::string& text) { return parse_lasso_text(game, text); }

inline History history(const Game& game, const std::vector<std::string>& names)
{
    History h;
    for (const auto& n : names) h.push_back(vid(game, n));
    return h;
}

inline std::vector<Value> values(std::initializer_list<Value> list) { return {list}; }

} // namespace spelab::testing
