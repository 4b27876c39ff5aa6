#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check: minor containment by exhaustive deletion/contraction,
// exact treewidth by subset dynamic programming, backtracking isomorphism,
// and a backtracking CSP search.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "fixpoint/csp.hpp"
#include "fixpoint/gadgets.hpp"
#include "fixpoint/graph.hpp"
#include "fixpoint/rng.hpp"

namespace oracles {

using fixpoint::CSPInstance;
using fixpoint::Graph;

// Curated 3CNFs with planar incidence graphs, at most 4 clauses and 6
// variables, deliberately mixing satisfiable and unsatisfiable instances.
inline std::vector<fixpoint::Cnf> planar_cnf_corpus(std::uint64_t seed, int random_count) {
    auto mk = [](int nv, std::vector<std::vector<int>> cls) {
        fixpoint::Cnf h;
        h.num_vars = nv;
        h.clauses = std::move(cls);
        h.validate();
        return h;
    };
    std::vector<fixpoint::Cnf> corpus = {
        mk(1, {{1, 1, 1}}),
        mk(1, {{-1, -1, -1}}),
        mk(1, {{1, 1, 1}, {-1, -1, -1}}),                                      // unsat
        mk(2, {{1, 2, 2}, {1, -2, -2}, {-1, 2, 2}, {-1, -2, -2}}),             // unsat
        mk(2, {{1, 2, 1}, {-1, -2, -1}}),
        mk(3, {{1, 2, 3}}),
        mk(3, {{1, 2, 3}, {-1, -2, -3}}),
        mk(3, {{1, 1, 1}, {-1, 2, 2}, {-2, 3, 3}, {-3, -1, -1}}),              // unsat implication cycle
        mk(4, {{1, 2, 2}, {-2, 3, 3}, {-3, 4, 4}, {-4, -1, -1}}),
        mk(2, {{1, 1, 1}, {2, 2, 2}, {-1, -2, -2}}),
        mk(6, {{1, 2, 3}, {4, 5, 6}, {-1, -4, -4}}),
        mk(2, {{1, 1, 1}, {-1, -1, 2}, {-2, -1, -1}}),                         // unsat
        mk(3, {{1, 2, 2}, {-1, 3, 3}, {-3, -2, -2}}),
        mk(4, {{1, 2, 3}, {-3, 4, 4}, {-4, -1, -1}, {2, 2, 2}}),
    };
    fixpoint::Rng rng(seed);
    while (random_count > 0) {
        fixpoint::Cnf h;
        h.num_vars = 1 + static_cast<int>(rng.below(6));
        const int m = 1 + static_cast<int>(rng.below(4));
        for (int j = 0; j < m; ++j) {
            std::vector<int> cl;
            for (int t = 0; t < 3; ++t) {
                const int var = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(h.num_vars)));
                cl.push_back(rng.coin() ? var : -var);
            }
            h.clauses.push_back(std::move(cl));
        }
        if (!fixpoint::is_planar(fixpoint::incidence_graph(h))) continue;
        corpus.push_back(std::move(h));
        --random_count;
    }
    return corpus;
}

// Adjacency-matrix bit signature, canonicalized over all vertex
// permutations. Usable up to ~7 vertices.
inline std::uint64_t canonical_signature(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::uint64_t best = ~std::uint64_t{0};
    do {
        std::uint64_t sig = 0;
        int bit = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v, ++bit)
                if (g.has_edge(perm[static_cast<std::size_t>(u)] + 1, perm[static_cast<std::size_t>(v)] + 1))
                    sig |= std::uint64_t{1} << bit;
        best = std::min(best, sig);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    return canonical_signature(a) == canonical_signature(b);
}

inline Graph delete_vertex(const Graph& g, int v) {
    std::vector<int> keep;
    for (int u = 1; u <= g.vertex_count(); ++u)
        if (u != v) keep.push_back(u);
    return g.induced(keep);
}

inline Graph delete_edge(const Graph& g, std::pair<int, int> e) {
    std::vector<std::pair<int, int>> es;
    for (const auto& other : g.edges())
        if (other != e) es.push_back(other);
    return Graph(g.vertex_count(), es);
}

inline Graph contract_edge(const Graph& g, std::pair<int, int> e) {
    // Merge the higher endpoint into the lower, then compact labels.
    const int keep = e.first, gone = e.second;
    std::set<std::pair<int, int>> es;
    for (const auto& [u0, v0] : g.edges()) {
        int u = u0 == gone ? keep : u0;
        int v = v0 == gone ? keep : v0;
        if (u == v) continue;
        es.insert({std::min(u, v), std::max(u, v)});
    }
    std::vector<std::pair<int, int>> packed;
    auto relabel = [&](int u) { return u > gone ? u - 1 : u; };
    for (const auto& [u, v] : es) packed.emplace_back(relabel(u), relabel(v));
    return Graph(g.vertex_count() - 1, packed);
}

// Exhaustive minor check: breadth-first search over every graph reachable by
// vertex deletions, edge deletions, and edge contractions.
inline bool brute_minor(const Graph& g, const Graph& h) {
    std::set<std::uint64_t> seen_by_n[8];
    std::vector<Graph> frontier{g};
    const std::uint64_t h_sig = canonical_signature(h);
    while (!frontier.empty()) {
        Graph cur = frontier.back();
        frontier.pop_back();
        if (cur.vertex_count() < h.vertex_count()) continue;
        const std::uint64_t sig = canonical_signature(cur);
        auto& seen = seen_by_n[cur.vertex_count()];
        if (!seen.insert(sig).second) continue;
        if (cur.vertex_count() == h.vertex_count() && cur.edge_count() == h.edge_count() && sig == h_sig) return true;
        for (int v = 1; v <= cur.vertex_count(); ++v) frontier.push_back(delete_vertex(cur, v));
        for (const auto& e : cur.edges()) {
            frontier.push_back(delete_edge(cur, e));
            frontier.push_back(contract_edge(cur, e));
        }
    }
    return false;
}

// Exact treewidth by dynamic programming over eliminated subsets; the
// neighborhood of v after eliminating S is independent of the order in S.
inline int exact_treewidth(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return -1;
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : g.edges()) {
        adj[static_cast<std::size_t>(u - 1)] |= 1u << (v - 1);
        adj[static_cast<std::size_t>(v - 1)] |= 1u << (u - 1);
    }
    auto degree_after = [&](std::uint32_t eliminated, int v) {
        // Vertices connected to v through eliminated ones.
        std::uint32_t reach = 1u << v;
        std::uint32_t grow = adj[static_cast<std::size_t>(v)];
        while (true) {
            const std::uint32_t inside = grow & eliminated & ~reach;
            if (!inside) break;
            reach |= inside;
            std::uint32_t next = 0;
            for (std::uint32_t rest = inside; rest;) {
                const int u = std::countr_zero(rest);
                rest &= rest - 1;
                next |= adj[static_cast<std::size_t>(u)];
            }
            grow |= next;
        }
        return std::popcount(grow & ~eliminated & ~(1u << v));
    };
    std::map<std::uint32_t, int> memo;
    const std::uint32_t full = (n == 32 ? ~0u : (1u << n) - 1);
    auto rec = [&](auto&& self, std::uint32_t eliminated) -> int {
        if (eliminated == full) return 0;
        auto it = memo.find(eliminated);
        if (it != memo.end()) return it->second;
        int best = n;
        for (int v = 0; v < n; ++v) {
            if ((eliminated >> v) & 1u) continue;
            const int width = degree_after(eliminated, v);
            if (width >= best) continue;
            best = std::min(best, std::max(width, self(self, eliminated | (1u << v))));
        }
        memo[eliminated] = best;
        return best;
    };
    return rec(rec, 0);
}

// Backtracking search over raw domain combinations, independent of the
// tree-decomposition solver.
inline bool csp_satisfiable_brute(const CSPInstance& csp) {
    std::vector<int> chosen(static_cast<std::size_t>(csp.num_vars) + 1, -1);
    std::vector<std::vector<const CSPInstance::Constraint*>> watching(static_cast<std::size_t>(csp.num_vars) + 1);
    for (const auto& c : csp.constraints) watching[static_cast<std::size_t>(std::max(c.i, c.j))].push_back(&c);
    auto rec = [&](auto&& self, int var) -> bool {
        if (var > csp.num_vars) return true;
        const auto& dom = csp.domains[static_cast<std::size_t>(var)];
        for (int d = 0; d < static_cast<int>(dom.size()); ++d) {
            chosen[static_cast<std::size_t>(var)] = d;
            bool ok = true;
            for (const auto* c : watching[static_cast<std::size_t>(var)]) {
                const int iv = chosen[static_cast<std::size_t>(c->i)], jv = chosen[static_cast<std::size_t>(c->j)];
                if (iv >= 0 && jv >= 0 && !std::binary_search(c->allowed.begin(), c->allowed.end(), std::pair{iv, jv})) {
                    ok = false;
                    break;
                }
            }
            if (ok && self(self, var + 1)) return true;
        }
        chosen[static_cast<std::size_t>(var)] = -1;
        return false;
    };
    return rec(rec, 1);
}

} // namespace oracles
