#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "fixpoint/graph.hpp"

namespace fixpoint {

namespace detail {

inline bool has_cycle(const Graph& g) {
    // A graph is a forest iff every component has |edges| = |vertices| - 1.
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    for (int s = 1; s <= g.vertex_count(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    parent[static_cast<std::size_t>(w)] = v;
                    stack.push_back(w);
                } else if (w != parent[static_cast<std::size_t>(v)]) {
                    return true;
                }
            }
        }
    }
    return false;
}

inline bool has_two_disjoint_edges(const Graph& g) {
    const auto& es = g.edges();
    for (std::size_t a = 0; a < es.size(); ++a)
        for (std::size_t b = a + 1; b < es.size(); ++b) {
            const auto& [u1, v1] = es[a];
            const auto& [u2, v2] = es[b];
            if (u1 != u2 && u1 != v2 && v1 != u2 && v1 != v2) return true;
        }
    return false;
}

// Exact isomorphism by permutation search; intended for tiny graphs only.
inline bool isomorphic_small(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    const int n = a.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    do {
        bool ok = true;
        for (const auto& [u, v] : a.edges())
            if (!b.has_edge(perm[static_cast<std::size_t>(u - 1)], perm[static_cast<std::size_t>(v - 1)])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Branch-set search state for the general minor test.
struct MinorSearch {
    const Graph& g;
    const Graph& h;
    std::vector<int> order;                        // h vertices, descending degree
    std::vector<std::uint64_t> branch;             // chosen branch set per placed h vertex
    std::vector<std::uint64_t> nbr_mask;           // per g vertex, neighbors as bitmask
    std::uint64_t used = 0;

    MinorSearch(const Graph& g_, const Graph& h_) : g(g_), h(h_) {
        for (int v = 1; v <= h.vertex_count(); ++v) order.push_back(v);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return h.degree(a) > h.degree(b); });
        nbr_mask.assign(static_cast<std::size_t>(g.vertex_count()), 0);
        for (int v = 1; v <= g.vertex_count(); ++v)
            for (int w : g.neighbors(v)) nbr_mask[static_cast<std::size_t>(v - 1)] |= std::uint64_t{1} << (w - 1);
    }

    std::uint64_t neighborhood_of_set(std::uint64_t set) const {
        std::uint64_t out = 0;
        for (std::uint64_t rest = set; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            out |= nbr_mask[static_cast<std::size_t>(v)];
        }
        return out;
    }

    bool adjacent_sets(std::uint64_t a, std::uint64_t b) const { return (neighborhood_of_set(a) & b) != 0; }

    bool place(std::size_t idx) {
        if (idx == order.size()) return true;
        const int remaining_after = static_cast<int>(order.size() - idx - 1);
        const int budget = g.vertex_count() - std::popcount(used) - remaining_after;
        if (budget < 1) return false;
        // Enumerate connected subsets of the unused vertices, canonically by
        // their minimum element, and try each as the branch set of hv.
        std::uint64_t avail = ~used & ((g.vertex_count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.vertex_count()) - 1));
        for (std::uint64_t seeds = avail; seeds;) {
            int seed = std::countr_zero(seeds);
            seeds &= seeds - 1;
            std::uint64_t allowed = avail & ~((std::uint64_t{1} << seed) - 1);  // forbid vertices below the seed
            if (grow(idx, std::uint64_t{1} << seed, allowed & ~(std::uint64_t{1} << seed), budget)) return true;
        }
        return false;
    }

    bool try_set(std::size_t idx, std::uint64_t set) {
        const int hv = order[idx];
        for (std::size_t j = 0; j < idx; ++j)
            if (h.has_edge(hv, order[j]) && !adjacent_sets(set, branch[j])) return false;
        branch.push_back(set);
        used |= set;
        const bool ok = place(idx + 1);
        used &= ~set;
        branch.pop_back();
        return ok;
    }

    // Enumerates connected supersets of `set` inside `frontier_allowed`,
    // testing each; standard fix-the-minimum enumeration avoids duplicates.
    bool grow(std::size_t idx, std::uint64_t set, std::uint64_t allowed, int budget) {
        if (try_set(idx, set)) return true;
        if (std::popcount(set) >= budget) return false;
        std::uint64_t frontier = neighborhood_of_set(set) & allowed;
        std::vector<int> ext;
        for (std::uint64_t rest = frontier; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            ext.push_back(v);
        }
        // Each extension vertex is either taken now or banned for this branch.
        std::uint64_t banned = 0;
        for (int v : ext) {
            if (grow(idx, set | (std::uint64_t{1} << v), (allowed & ~banned) & ~(std::uint64_t{1} << v), budget)) return true;
            banned |= std::uint64_t{1} << v;
        }
        return false;
    }
};

} // namespace detail

// Decides whether h is a minor of g by searching for disjoint connected
// branch sets with the required adjacencies. Intended for small patterns;
// refuses h with more than 6 vertices.
inline bool has_minor(const Graph& g, const Graph& h) {
    if (h.vertex_count() > 6)
        throw budget_error("has_minor: pattern has " + std::to_string(h.vertex_count()) + " vertices, search budget allows 6");
    if (g.vertex_count() > 64) throw budget_error("has_minor: host graphs above 64 vertices are not supported");
    if (h.vertex_count() == 0) return true;
    if (h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count()) return false;
    // K3 and K2+K2 admit linear-time characterizations.
    if (detail::isomorphic_small(h, triangle_graph())) return detail::has_cycle(g);
    if (detail::isomorphic_small(h, two_disjoint_edges())) return detail::has_two_disjoint_edges(g);
    detail::MinorSearch search(g, h);
    return search.place(0);
}

// A single vertex touching every edge. Equivalent to membership in
// Forb(K3, K2+K2); edgeless graphs qualify.
inline bool has_vertex_cover_one(const Graph& g) {
    if (g.edge_count() == 0) return true;
    const auto& [a, b] = g.edges().front();
    for (int cand : {a, b}) {
        bool covers = true;
        for (const auto& [u, v] : g.edges())
            if (u != cand && v != cand) {
                covers = false;
                break;
            }
        if (covers) return true;
    }
    return false;
}

} // namespace fixpoint
