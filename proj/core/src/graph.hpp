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

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace spelab::detail {

struct KeyHash
{
    std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : key) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Interns product states given as flat integer keys; ids are dense and
/// assigned in insertion order.
class StateIndex
{
public:
    using Key = std::vector<std::uint64_t>;

    /// Returns (id, inserted).
    std::pair<std::uint32_t, bool> intern(const Key& key)
    {
        auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(keys_.size()));
        if (inserted) keys_.push_back(key);
        return {it->second, inserted};
    }

    const Key& key(std::uint32_t id) const { return keys_[id]; }
    std::size_t size() const { return keys_.size(); }

    std::optional<std::uint32_t> find(const Key& key) const
    {
        auto it = ids_.find(key);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::unordered_map<Key, std::uint32_t, KeyHash> ids_;
    std::vector<Key> keys_;
};

/// Iterative Tarjan over an adjacency list. comp[v] is the component index;
/// components come out in reverse topological order (sinks first).
struct Sccs
{
    std::vector<std::uint32_t> comp;
    std::uint32_t count = 0;
    /// Whether the component contains an edge (a cycle).
    std::vector<char> nontrivial;
};

Sccs strongly_connected(const std::vector<std::vector<std::uint32_t>>& adj);

/// Shortest path from `from` to `to` using only edges accepted by `allow`;
/// returns the node sequence including both ends, empty if none.
template <typename Allow>
std::vector<std::uint32_t> bfs_path(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t from,
                                    std::uint32_t to, Allow allow)
{
    std::vector<std::int64_t> parent(adj.size(), -1);
    std::vector<std::uint32_t> queue{from};
    parent[from] = from;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto u = queue[head];
        if (u == to) break;
        for (auto w : adj[u]) {
            if (parent[w] >= 0 || !allow(u, w)) continue;
            parent[w] = u;
            queue.push_back(w);
        }
    }
    if (parent[to] < 0) return {};
    std::vector<std::uint32_t> path{to};
    while (path.back() != from) path.push_back(static_cast<std::uint32_t>(parent[path.back()]));
    return {path.rbegin(), path.rend()};
}

} // namespace spelab::detail
