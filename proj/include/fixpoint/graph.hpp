#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fixpoint/errors.hpp"

namespace fixpoint {

// Simple undirected graph on vertices 1..n, no loops, no multi-edges.
// The vertex order is part of the structure: local transition functions take
// their arguments in ascending vertex order of the closed neighborhood.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
        if (n < 0) throw input_error("graph: negative vertex count");
        for (auto& [u, v] : edges) {
            if (u > v) std::swap(u, v);
            if (u < 1 || v > n_) throw input_error("graph: edge endpoint outside 1.." + std::to_string(n_));
            if (u == v) throw input_error("graph: loop at vertex " + std::to_string(u));
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw input_error("graph: duplicate edge");
        edges_ = std::move(edges);
        for (const auto& [u, v] : edges_) {
            adj_[static_cast<std::size_t>(u - 1)].push_back(v);
            adj_[static_cast<std::size_t>(v - 1)].push_back(u);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // Neighbors of v in ascending order.
    const std::vector<int>& neighbors(int v) const { return adj_[index(v)]; }

    int degree(int v) const { return static_cast<int>(adj_[index(v)].size()); }

    int max_degree() const {
        int d = 0;
        for (const auto& nbrs : adj_) d = std::max(d, static_cast<int>(nbrs.size()));
        return d;
    }

    // N^0(v) = {v} union N(v), ascending. This is the argument order of f_v.
    std::vector<int> closed_neighborhood(int v) const {
        std::vector<int> out = adj_[index(v)];
        out.insert(std::lower_bound(out.begin(), out.end(), v), v);
        return out;
    }

    bool has_edge(int u, int v) const {
        const auto& nbrs = adj_[index(u)];
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

    // Connected components as sorted vertex lists, ordered by smallest member.
    std::vector<std::vector<int>> components() const {
        std::vector<std::vector<int>> comps;
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        for (int s = 1; s <= n_; ++s) {
            if (seen[static_cast<std::size_t>(s - 1)]) continue;
            std::vector<int> comp{s};
            seen[static_cast<std::size_t>(s - 1)] = 1;
            for (std::size_t head = 0; head < comp.size(); ++head)
                for (int w : neighbors(comp[head]))
                    if (!seen[static_cast<std::size_t>(w - 1)]) {
                        seen[static_cast<std::size_t>(w - 1)] = 1;
                        comp.push_back(w);
                    }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        return comps;
    }

    bool is_connected() const { return n_ <= 1 || components().size() == 1; }

    // Subgraph induced by `keep` (sorted, deduped internally); vertices are
    // renumbered 1..k in the order of the sorted keep list.
    Graph induced(std::vector<int> keep) const {
        std::sort(keep.begin(), keep.end());
        keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
        std::vector<int> pos(static_cast<std::size_t>(n_) + 1, 0);
        for (std::size_t i = 0; i < keep.size(); ++i) pos[static_cast<std::size_t>(keep[i])] = static_cast<int>(i) + 1;
        std::vector<std::pair<int, int>> es;
        for (const auto& [u, v] : edges_)
            if (pos[static_cast<std::size_t>(u)] && pos[static_cast<std::size_t>(v)])
                es.emplace_back(pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(v)]);
        return Graph(static_cast<int>(keep.size()), std::move(es));
    }

private:
    std::size_t index(int v) const {
        if (v < 1 || v > n_) throw input_error("graph: vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
        return static_cast<std::size_t>(v - 1);
    }

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

// --- named graphs used throughout ------------------------------------------

inline Graph complete_graph(int k) {
    std::vector<std::pair<int, int>> es;
    for (int u = 1; u <= k; ++u)
        for (int v = u + 1; v <= k; ++v) es.emplace_back(u, v);
    return Graph(k, std::move(es));
}

inline Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> es;
    for (int u = 1; u <= a; ++u)
        for (int v = a + 1; v <= a + b; ++v) es.emplace_back(u, v);
    return Graph(a + b, std::move(es));
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int v = 1; v < n; ++v) es.emplace_back(v, v + 1);
    return Graph(n, std::move(es));
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw input_error("cycle_graph: need at least 3 vertices");
    std::vector<std::pair<int, int>> es;
    for (int v = 1; v < n; ++v) es.emplace_back(v, v + 1);
    es.emplace_back(1, n);
    return Graph(n, std::move(es));
}

// Star K_{1,k}; vertex 1 is the center.
inline Graph star_graph(int k) {
    std::vector<std::pair<int, int>> es;
    for (int v = 2; v <= k + 1; ++v) es.emplace_back(1, v);
    return Graph(k + 1, std::move(es));
}

inline Graph disjoint_union(const Graph& g, const Graph& h) {
    std::vector<std::pair<int, int>> es = g.edges();
    for (const auto& [u, v] : h.edges()) es.emplace_back(u + g.vertex_count(), v + g.vertex_count());
    return Graph(g.vertex_count() + h.vertex_count(), std::move(es));
}

inline Graph triangle_graph() { return complete_graph(3); }
inline Graph two_disjoint_edges() { return disjoint_union(complete_graph(2), complete_graph(2)); }
inline Graph k5_graph() { return complete_graph(5); }
inline Graph k33_graph() { return complete_bipartite(3, 3); }

} // namespace fixpoint
