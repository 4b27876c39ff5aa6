#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fixpoint/graph.hpp"

namespace fixpoint {

// Tree of bags over graph vertices. Nodes are 0-based; bags hold vertex ids.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;            // sorted vertex lists
    std::vector<std::pair<int, int>> tree_edges;   // node index pairs

    int width() const {
        int w = 0;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
        return w - 1;
    }
};

// Returns the violated invariant name, or nothing when the decomposition is
// valid for g: connected acyclic node tree, vertex coverage, edge coverage,
// and running intersection.
inline std::optional<std::string> tree_decomposition_violation(const Graph& g, const TreeDecomposition& td) {
    const int k = static_cast<int>(td.bags.size());
    if (k == 0) return "vertex coverage";
    for (const auto& [a, b] : td.tree_edges)
        if (a < 0 || b < 0 || a >= k || b >= k) return "tree connectivity";
    if (static_cast<int>(td.tree_edges.size()) != k - 1) return "tree connectivity";
    std::vector<std::vector<int>> node_adj(static_cast<std::size_t>(k));
    for (const auto& [a, b] : td.tree_edges) {
        node_adj[static_cast<std::size_t>(a)].push_back(b);
        node_adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (int w : node_adj[static_cast<std::size_t>(queue[head])])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
    if (static_cast<int>(queue.size()) != k) return "tree connectivity";  // k-1 edges + connected => acyclic

    std::vector<std::vector<int>> holding(static_cast<std::size_t>(g.vertex_count()) + 1);
    for (int node = 0; node < k; ++node)
        for (int v : td.bags[static_cast<std::size_t>(node)]) {
            if (v < 1 || v > g.vertex_count()) return "vertex coverage";
            holding[static_cast<std::size_t>(v)].push_back(node);
        }
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (holding[static_cast<std::size_t>(v)].empty()) return "vertex coverage";

    for (const auto& [u, v] : g.edges()) {
        bool covered = false;
        for (int node : holding[static_cast<std::size_t>(u)]) {
            const auto& bag = td.bags[static_cast<std::size_t>(node)];
            if (std::find(bag.begin(), bag.end(), v) != bag.end()) {
                covered = true;
                break;
            }
        }
        if (!covered) return "edge coverage";
    }

    for (int v = 1; v <= g.vertex_count(); ++v) {
        const auto& nodes = holding[static_cast<std::size_t>(v)];
        std::set<int> members(nodes.begin(), nodes.end());
        std::vector<int> comp{nodes.front()};
        std::set<int> reached{nodes.front()};
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (int w : node_adj[static_cast<std::size_t>(comp[head])])
                if (members.count(w) && !reached.count(w)) {
                    reached.insert(w);
                    comp.push_back(w);
                }
        if (reached.size() != members.size()) return "running intersection";
    }
    return std::nullopt;
}

inline bool valid_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    return !tree_decomposition_violation(g, td).has_value();
}

// Min-fill elimination heuristic. The returned decomposition is always valid
// (one bag per eliminated vertex, attached to the bag of its first-eliminated
// higher neighbor); the width is an upper bound, not necessarily optimal.
inline TreeDecomposition treewidth_upper_bound(const Graph& g) {
    const int n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& [u, v] : g.edges()) {
        adj[static_cast<std::size_t>(u)].insert(v);
        adj[static_cast<std::size_t>(v)].insert(u);
    }
    std::vector<char> gone(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> elim_pos(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::vector<int>> bag_of(static_cast<std::size_t>(n));
    std::vector<int> order;

    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = -1;
        for (int v = 1; v <= n; ++v) {
            if (gone[static_cast<std::size_t>(v)]) continue;
            long fill = 0;
            const auto& nb = adj[static_cast<std::size_t>(v)];
            for (auto it = nb.begin(); it != nb.end(); ++it)
                for (auto jt = std::next(it); jt != nb.end(); ++jt)
                    if (!adj[static_cast<std::size_t>(*it)].count(*jt)) ++fill;
            // Ties: fewer fill edges, then smaller degree, then smaller id.
            if (best < 0 || fill < best_fill ||
                (fill == best_fill && adj[static_cast<std::size_t>(v)].size() < adj[static_cast<std::size_t>(best)].size()))
                best = v, best_fill = fill;
        }
        const int v = best;
        std::vector<int> bag{v};
        bag.insert(bag.end(), adj[static_cast<std::size_t>(v)].begin(), adj[static_cast<std::size_t>(v)].end());
        std::sort(bag.begin(), bag.end());
        bag_of[static_cast<std::size_t>(step)] = std::move(bag);
        elim_pos[static_cast<std::size_t>(v)] = step;
        order.push_back(v);
        const std::vector<int> nbrs(adj[static_cast<std::size_t>(v)].begin(), adj[static_cast<std::size_t>(v)].end());
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                adj[static_cast<std::size_t>(nbrs[i])].insert(nbrs[j]);
                adj[static_cast<std::size_t>(nbrs[j])].insert(nbrs[i]);
            }
        for (int w : nbrs) adj[static_cast<std::size_t>(w)].erase(v);
        adj[static_cast<std::size_t>(v)].clear();
        gone[static_cast<std::size_t>(v)] = 1;
    }

    td.bags = bag_of;
    for (int step = 0; step < n; ++step) {
        const auto& bag = td.bags[static_cast<std::size_t>(step)];
        int attach = -1;
        for (int u : bag) {
            if (u == order[static_cast<std::size_t>(step)]) continue;
            const int p = elim_pos[static_cast<std::size_t>(u)];
            if (attach < 0 || p < attach) attach = p;
        }
        if (attach >= 0)
            td.tree_edges.emplace_back(step, attach);
        else if (step + 1 < n)
            td.tree_edges.emplace_back(step, step + 1);  // keep isolated pieces in one tree
    }
    return td;
}

} // namespace fixpoint
