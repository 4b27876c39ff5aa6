#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fixpoint/system.hpp"
#include "fixpoint/treewidth.hpp"

namespace fixpoint {

// One CSP domain value: a locally fixed assignment of vertex i's closed
// neighborhood, stored as the row index over sorted N^0(i) (MSB-first, same
// convention as lookup tables).
struct CspValue {
    std::uint32_t mask = 0;
    int vertex = 0;

    bool operator==(const CspValue& o) const { return mask == o.mask && vertex == o.vertex; }
};

// Binary CSP with explicit relations. Variables are 1..num_vars and
// correspond one-to-one to system vertices under build_csp.
struct CSPInstance {
    struct Constraint {
        int i = 0, j = 0;                           // scope, i < j
        std::vector<std::pair<int, int>> allowed;   // domain index pairs
    };

    int num_vars = 0;
    std::vector<std::vector<CspValue>> domains;  // per variable, 1-based outer index 0 unused
    std::vector<Constraint> constraints;
};

namespace detail {

// Bit of `vertex` inside a mask laid out over the sorted list `scope`.
inline bool mask_bit(std::uint32_t mask, const std::vector<int>& scope, int vertex) {
    const auto it = std::lower_bound(scope.begin(), scope.end(), vertex);
    const int pos = static_cast<int>(it - scope.begin());
    return (mask >> (static_cast<int>(scope.size()) - 1 - pos)) & 1u;
}

} // namespace detail

// The fixed-point-to-CSP reduction. Variables are the vertices; the domain
// of x_i holds every assignment of N^0(i) that f_i leaves fixed at i; one
// constraint per edge {i,j} allows exactly the pairs that agree on
// N^0(i) intersect N^0(j). Requires a network without isolated vertices.
inline CSPInstance build_csp(const System& s) {
    const int n = s.vertex_count();
    for (int v = 1; v <= n; ++v)
        if (s.graph().degree(v) == 0)
            throw contract_error("build_csp: vertex " + std::to_string(v) + " is isolated; split isolated vertices off first");
    CSPInstance csp;
    csp.num_vars = n;
    csp.domains.resize(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) {
        const auto scope = s.graph().closed_neighborhood(v);
        const int arity = static_cast<int>(scope.size());
        if (arity > 28)
            throw budget_error("build_csp: vertex " + std::to_string(v) + " would need a domain of 2^" + std::to_string(arity) +
                               " local assignments");
        const auto pos = static_cast<int>(std::lower_bound(scope.begin(), scope.end(), v) - scope.begin());
        for (std::uint32_t m = 0; m < (std::uint32_t{1} << arity); ++m) {
            const bool own = (m >> (arity - 1 - pos)) & 1u;
            if (s.function(v).eval_row(m) == own) csp.domains[static_cast<std::size_t>(v)].push_back({m, v});
        }
    }
    for (const auto& [i, j] : s.graph().edges()) {
        CSPInstance::Constraint c;
        c.i = i;
        c.j = j;
        const auto scope_i = s.graph().closed_neighborhood(i);
        const auto scope_j = s.graph().closed_neighborhood(j);
        std::vector<int> shared;
        std::set_intersection(scope_i.begin(), scope_i.end(), scope_j.begin(), scope_j.end(), std::back_inserter(shared));
        const auto& di = csp.domains[static_cast<std::size_t>(i)];
        const auto& dj = csp.domains[static_cast<std::size_t>(j)];
        for (std::size_t a = 0; a < di.size(); ++a)
            for (std::size_t b = 0; b < dj.size(); ++b) {
                bool ok = true;
                for (int k : shared)
                    if (detail::mask_bit(di[a].mask, scope_i, k) != detail::mask_bit(dj[b].mask, scope_j, k)) {
                        ok = false;
                        break;
                    }
                if (ok) c.allowed.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
        csp.constraints.push_back(std::move(c));
    }
    return csp;
}

// Graph on the CSP variables with one edge per constraint scope; for
// build_csp output this is the source network itself.
inline Graph constraint_graph(const CSPInstance& csp) {
    std::vector<std::pair<int, int>> es;
    for (const auto& c : csp.constraints) es.emplace_back(c.i, c.j);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return Graph(csp.num_vars, std::move(es));
}

// Satisfying assignment (domain index per variable, 1-based) found by
// dynamic programming over the tree decomposition, or nothing. Runtime is
// exponential only in the bag size.
inline std::optional<std::vector<int>> solve_csp_td(const CSPInstance& csp, const TreeDecomposition& td) {
    if (auto why = tree_decomposition_violation(constraint_graph(csp), td))
        throw contract_error("solve_csp_td: invalid tree decomposition: " + *why);
    for (int v = 1; v <= csp.num_vars; ++v)
        if (csp.domains[static_cast<std::size_t>(v)].empty()) return std::nullopt;

    const int k = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> node_adj(static_cast<std::size_t>(k));
    for (const auto& [a, b] : td.tree_edges) {
        node_adj[static_cast<std::size_t>(a)].push_back(b);
        node_adj[static_cast<std::size_t>(b)].push_back(a);
    }
    // Root at 0, children in BFS order.
    std::vector<int> order{0}, parent(static_cast<std::size_t>(k), -1);
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    seen[0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head)
        for (int w : node_adj[static_cast<std::size_t>(order[head])])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                parent[static_cast<std::size_t>(w)] = order[head];
                order.push_back(w);
            }

    // Constraints fully inside a bag are enforced at that bag.
    std::vector<std::vector<const CSPInstance::Constraint*>> local(static_cast<std::size_t>(k));
    for (int node = 0; node < k; ++node) {
        const auto& bag = td.bags[static_cast<std::size_t>(node)];
        for (const auto& c : csp.constraints)
            if (std::binary_search(bag.begin(), bag.end(), c.i) && std::binary_search(bag.begin(), bag.end(), c.j))
                local[static_cast<std::size_t>(node)].push_back(&c);
    }

    struct Row {
        std::vector<int> choice;      // domain index per bag variable
        std::vector<int> child_rows;  // one surviving row index per child
    };
    std::vector<std::vector<Row>> tables(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> children(static_cast<std::size_t>(k));
    for (int node : order)
        if (parent[static_cast<std::size_t>(node)] >= 0) children[static_cast<std::size_t>(parent[static_cast<std::size_t>(node)])].push_back(node);

    auto allowed_pair = [&](const CSPInstance::Constraint& c, int iv, int jv) {
        return std::binary_search(c.allowed.begin(), c.allowed.end(), std::pair{iv, jv});
    };

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int node = *it;
        const auto& bag = td.bags[static_cast<std::size_t>(node)];
        // Index the rows of each child by their values on the shared variables.
        struct ChildIndex {
            std::vector<int> shared_pos_child;  // positions of shared vars in the child bag
            std::map<std::vector<int>, int> by_projection;
        };
        std::vector<ChildIndex> child_index;
        for (int ch : children[static_cast<std::size_t>(node)]) {
            ChildIndex ci;
            const auto& cbag = td.bags[static_cast<std::size_t>(ch)];
            for (std::size_t p = 0; p < cbag.size(); ++p)
                if (std::binary_search(bag.begin(), bag.end(), cbag[p])) ci.shared_pos_child.push_back(static_cast<int>(p));
            for (std::size_t r = 0; r < tables[static_cast<std::size_t>(ch)].size(); ++r) {
                std::vector<int> proj;
                for (int p : ci.shared_pos_child) proj.push_back(tables[static_cast<std::size_t>(ch)][r].choice[static_cast<std::size_t>(p)]);
                ci.by_projection.emplace(std::move(proj), static_cast<int>(r));
            }
            child_index.push_back(std::move(ci));
        }

        // Constraints are checked as soon as both scope positions are chosen,
        // so inconsistent prefixes prune the whole subtree of assignments.
        std::vector<std::vector<std::pair<const CSPInstance::Constraint*, std::size_t>>> check_at(bag.size());
        for (const auto* c : local[static_cast<std::size_t>(node)]) {
            const auto pi = static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), c->i) - bag.begin());
            const auto pj = static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), c->j) - bag.begin());
            check_at[std::max(pi, pj)].emplace_back(c, std::min(pi, pj));
        }
        std::vector<int> choice(bag.size(), 0);
        std::vector<Row>& out = tables[static_cast<std::size_t>(node)];
        auto emit = [&]() {
            Row row;
            row.choice = choice;
            for (std::size_t cix = 0; cix < child_index.size(); ++cix) {
                const int ch = children[static_cast<std::size_t>(node)][cix];
                const auto& cbag = td.bags[static_cast<std::size_t>(ch)];
                std::vector<int> proj;
                for (int p : child_index[cix].shared_pos_child) {
                    const int var = cbag[static_cast<std::size_t>(p)];
                    const auto pos = std::lower_bound(bag.begin(), bag.end(), var) - bag.begin();
                    proj.push_back(choice[static_cast<std::size_t>(pos)]);
                }
                auto hit = child_index[cix].by_projection.find(proj);
                if (hit == child_index[cix].by_projection.end()) return;
                row.child_rows.push_back(hit->second);
            }
            out.push_back(std::move(row));
        };
        auto fill = [&](auto&& self, std::size_t pos) -> void {
            if (pos == bag.size()) {
                emit();
                return;
            }
            const auto& dom = csp.domains[static_cast<std::size_t>(bag[pos])];
            for (int d = 0; d < static_cast<int>(dom.size()); ++d) {
                choice[pos] = d;
                bool ok = true;
                for (const auto& [c, other] : check_at[pos]) {
                    const int iv = c->i == bag[pos] ? d : choice[other];
                    const int jv = c->j == bag[pos] ? d : choice[other];
                    if (!allowed_pair(*c, iv, jv)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) self(self, pos + 1);
            }
        };
        fill(fill, 0);
        if (out.empty()) return std::nullopt;
    }

    // Extract a witness top-down.
    std::vector<int> assignment(static_cast<std::size_t>(csp.num_vars) + 1, -1);
    std::vector<std::pair<int, int>> walk{{0, 0}};  // (node, row)
    while (!walk.empty()) {
        const auto [node, row_ix] = walk.back();
        walk.pop_back();
        const Row& row = tables[static_cast<std::size_t>(node)][static_cast<std::size_t>(row_ix)];
        const auto& bag = td.bags[static_cast<std::size_t>(node)];
        for (std::size_t p = 0; p < bag.size(); ++p) assignment[static_cast<std::size_t>(bag[p])] = row.choice[p];
        for (std::size_t cix = 0; cix < children[static_cast<std::size_t>(node)].size(); ++cix)
            walk.emplace_back(children[static_cast<std::size_t>(node)][cix], row.child_rows[cix]);
    }
    return std::vector<int>(assignment.begin(), assignment.end());
}

// Reassembles a configuration from a satisfying assignment: vertex i takes
// the bit its chosen local assignment gives to i.
inline Config csp_assignment_to_config(const System& s, const CSPInstance& csp, const std::vector<int>& assignment) {
    Config c(s.vertex_count());
    for (int v = 1; v <= s.vertex_count(); ++v) {
        const CspValue& val = csp.domains[static_cast<std::size_t>(v)][static_cast<std::size_t>(assignment[static_cast<std::size_t>(v)])];
        c.set_bit(v, detail::mask_bit(val.mask, s.graph().closed_neighborhood(v), v));
    }
    return c;
}

} // namespace fixpoint
