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

#include "graph.hpp"

#include <algorithm>

namespace spelab::detail {

Sccs strongly_connected(const std::vector<std::vector<std::uint32_t>>& adj)
{
    constexpr auto kUnset = ~std::uint32_t{0};
    const auto n = static_cast<std::uint32_t>(adj.size());
    Sccs out;
    out.comp.assign(n, kUnset);
    std::vector<std::uint32_t> index(n, kUnset), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::uint32_t counter = 0;
    struct Frame { std::uint32_t v; std::size_t next; };
    std::vector<Frame> frames;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& f = frames.back();
            if (f.next < adj[f.v].size()) {
                auto w = adj[f.v][f.next++];
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            auto v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    out.comp[w] = out.count;
                } while (w != v);
                ++out.count;
            }
        }
    }
    out.nontrivial.assign(out.count, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        for (auto w : adj[v]) {
            if (out.comp[v] == out.comp[w]) out.nontrivial[out.comp[v]] = 1;
        }
    }
    return out;
}

} // namespace spelab::detail
