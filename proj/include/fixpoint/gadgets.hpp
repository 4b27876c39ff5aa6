#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fixpoint/planar.hpp"
#include "fixpoint/post.hpp"
#include "fixpoint/system.hpp"

namespace fixpoint {

// CNF with 1-based variables; literal +v is x_v, -v is its negation.
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    void validate() const {
        if (num_vars < 0) throw input_error("cnf: negative variable count");
        for (const auto& cl : clauses) {
            if (cl.empty()) throw input_error("cnf: empty clause");
            for (int lit : cl)
                if (lit == 0 || std::abs(lit) > num_vars)
                    throw input_error("cnf: literal " + std::to_string(lit) + " outside 1.." + std::to_string(num_vars));
        }
    }

    bool is_three_cnf() const {
        for (const auto& cl : clauses)
            if (cl.size() > 3) return false;
        return true;
    }

    bool eval(std::uint32_t assignment) const {  // bit v-1 holds x_v
        for (const auto& cl : clauses) {
            bool sat = false;
            for (int lit : cl) {
                const bool val = (assignment >> (std::abs(lit) - 1)) & 1u;
                if (lit > 0 ? val : !val) {
                    sat = true;
                    break;
                }
            }
            if (!sat) return false;
        }
        return true;
    }
};

// Exhaustive satisfiability scan; the reference decision procedure for the
// gadget equivalence checks.
inline bool cnf_satisfiable(const Cnf& h, int cap = 25) {
    h.validate();
    if (h.num_vars > cap)
        throw budget_error("cnf_satisfiable: " + std::to_string(h.num_vars) + " variables exceeds the cap of " + std::to_string(cap));
    for (std::uint32_t a = 0; a < (std::uint32_t{1} << h.num_vars); ++a)
        if (h.eval(a)) return true;
    return false;
}

// Clauses padded to exactly three literals by repeating the last literal.
inline Cnf pad_to_three(const Cnf& h) {
    h.validate();
    Cnf out = h;
    for (auto& cl : out.clauses) {
        if (cl.size() > 3) throw input_error("cnf: clause with more than 3 literals cannot be padded down");
        while (cl.size() < 3) cl.push_back(cl.back());
    }
    return out;
}

// Bipartite variable-clause incidence graph. Vertices 1..n are the
// variables, n+1..n+m the clauses; repeated occurrences give one edge.
inline Graph incidence_graph(const Cnf& h) {
    h.validate();
    std::vector<std::pair<int, int>> es;
    for (std::size_t j = 0; j < h.clauses.size(); ++j)
        for (int lit : h.clauses[j]) es.emplace_back(std::abs(lit), h.num_vars + static_cast<int>(j) + 1);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return Graph(h.num_vars + static_cast<int>(h.clauses.size()), std::move(es));
}

// Output of the planar-3SAT gadget; clause vertices are 1..clause_count and
// variable_cycle[i-1] lists the cycle vertices standing in for variable i.
struct Planar3SatSystem {
    System system;
    int clause_count = 0;
    std::vector<std::vector<int>> variable_cycle;
};

// Hardness gadget for lookup systems on planar networks: every variable
// vertex of the incidence graph becomes a consistency cycle in clockwise
// embedding order; clause vertices output 1 when their incident copies
// satisfy the clause and negate themselves otherwise. The result is planar
// with maximum degree three, and has a fixed point iff the CNF is
// satisfiable.
inline Planar3SatSystem planar3sat_to_system(const Cnf& h) {
    h.validate();
    if (!h.is_three_cnf()) throw input_error("planar3sat: clauses must have at most 3 literals");
    const int n = h.num_vars;
    const int m = static_cast<int>(h.clauses.size());

    // Incidence graph with clause vertices first, as the construction orders them.
    std::vector<std::pair<int, int>> inc_edges;
    for (int j = 1; j <= m; ++j)
        for (int lit : h.clauses[static_cast<std::size_t>(j - 1)]) inc_edges.emplace_back(j, m + std::abs(lit));
    std::sort(inc_edges.begin(), inc_edges.end());
    inc_edges.erase(std::unique(inc_edges.begin(), inc_edges.end()), inc_edges.end());
    const Graph gamma(m + n, std::move(inc_edges));
    auto rotation = planar_embedding(gamma);
    if (!rotation) throw input_error("planar3sat: the incidence graph is not planar");

    Planar3SatSystem out;
    out.clause_count = m;
    out.variable_cycle.resize(static_cast<std::size_t>(n));

    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, int> copy_of;  // (variable, clause) -> cycle vertex
    int next_id = m;
    for (int i = 1; i <= n; ++i) {
        // Clause neighbors in clockwise order, rotated so the minimal clause
        // index leads.
        std::vector<int> around = rotation->at(m + i);
        if (around.empty()) continue;  // variable occurs in no clause
        const auto lead = std::min_element(around.begin(), around.end());
        std::rotate(around.begin(), lead, around.end());
        auto& cyc = out.variable_cycle[static_cast<std::size_t>(i - 1)];
        for (int cj : around) {
            const int id = ++next_id;
            cyc.push_back(id);
            copy_of[{i, cj}] = id;
            edges.emplace_back(std::min(id, cj), std::max(id, cj));
        }
        const int r = static_cast<int>(cyc.size());
        if (r == 2) {
            edges.emplace_back(cyc[0], cyc[1]);
        } else if (r >= 3) {
            for (int t = 0; t < r; ++t) edges.emplace_back(std::min(cyc[t], cyc[(t + 1) % r]), std::max(cyc[t], cyc[(t + 1) % r]));
        }
    }
    Graph g(next_id, std::move(edges));

    std::vector<LocalFunction> fs;
    for (int v = 1; v <= g.vertex_count(); ++v) {
        const auto scope = g.closed_neighborhood(v);
        const int arity = static_cast<int>(scope.size());
        const int own_pos = static_cast<int>(std::lower_bound(scope.begin(), scope.end(), v) - scope.begin());
        LookupTable table;
        table.rows.resize(std::size_t{1} << arity);
        for (std::uint32_t row = 0; row < table.rows.size(); ++row) {
            auto bit_of = [&](int u) {
                const auto pos = std::lower_bound(scope.begin(), scope.end(), u) - scope.begin();
                return static_cast<bool>((row >> (arity - 1 - static_cast<int>(pos))) & 1u);
            };
            const bool own = (row >> (arity - 1 - own_pos)) & 1u;
            bool value;
            if (v <= m) {
                bool sat = false;
                for (int lit : h.clauses[static_cast<std::size_t>(v - 1)]) {
                    const bool bit = bit_of(copy_of.at({std::abs(lit), v}));
                    if (lit > 0 ? bit : !bit) sat = true;
                }
                value = sat ? true : !own;
            } else {
                // All cycle copies in the closed neighborhood (self included)
                // must agree, else the vertex negates itself.
                bool all_equal = true;
                for (int u : scope)
                    if (u > m && bit_of(u) != own) all_equal = false;
                value = all_equal ? own : !own;
            }
            table.rows[row] = value;
        }
        fs.emplace_back(arity, std::move(table));
    }
    out.system = System(std::move(g), std::move(fs));
    return out;
}

// sd_n(f): guard block of n fresh variables plus a default variable z. All
// guards zero runs f, all guards one runs the dual of f, anything mixed
// returns the negation of z. The result is self-dual for every f.
inline LocalFunction self_dualize(const LocalFunction& f, int num_guards) {
    if (num_guards < 1) throw input_error("self_dualize: need at least one guard variable");
    const int k = f.arity();
    const int arity = k + num_guards + 1;
    if (arity > 30) throw input_error("self_dualize: resulting arity above 30");
    const LocalFunction lut = to_lookup(f);
    const std::uint32_t x_mask = (std::uint32_t{1} << k) - 1;
    LookupTable table;
    table.rows.resize(std::size_t{1} << arity);
    for (std::uint32_t row = 0; row < table.rows.size(); ++row) {
        const std::uint32_t x = (row >> (num_guards + 1)) & x_mask;
        const std::uint32_t y = (row >> 1) & ((std::uint32_t{1} << num_guards) - 1);
        const bool z = row & 1u;
        bool value;
        if (y == 0)
            value = lut.eval_row(x);
        else if (y == (std::uint32_t{1} << num_guards) - 1)
            value = !lut.eval_row(~x & x_mask);
        else
            value = !z;
        table.rows[row] = value;
    }
    return LocalFunction(arity, std::move(table));
}

// Self-dual planar lift: one new vertex per edge, adjacent to both
// endpoints. Original vertices run sd_k of their old function with the edge
// vertices as guards and z identified with their own state; edge vertices
// just hold their state. Fixed-point existence is preserved both ways.
inline System planar_selfdual_lift(const System& s) {
    if (!is_planar(s.graph())) throw input_error("selfdual lift: the network is not planar");
    const int n = s.vertex_count();
    for (int v = 1; v <= n; ++v)
        if (s.graph().degree(v) == 0)
            throw input_error("selfdual lift: vertex " + std::to_string(v) + " is isolated; the guard construction needs degree >= 1");

    const auto& old_edges = s.graph().edges();
    std::vector<std::pair<int, int>> edges = old_edges;
    for (std::size_t t = 0; t < old_edges.size(); ++t) {
        const int ev = n + static_cast<int>(t) + 1;
        edges.emplace_back(old_edges[t].first, ev);
        edges.emplace_back(old_edges[t].second, ev);
    }
    Graph lifted(n + static_cast<int>(old_edges.size()), std::move(edges));

    std::vector<LocalFunction> fs;
    for (int v = 1; v <= n; ++v) {
        const int k = s.graph().degree(v);
        const auto old_scope = s.graph().closed_neighborhood(v);
        const int own_pos = static_cast<int>(std::lower_bound(old_scope.begin(), old_scope.end(), v) - old_scope.begin());
        const LocalFunction sd = self_dualize(s.function(v), k);
        fs.push_back(identify_arguments(sd, own_pos, sd.arity() - 1));
    }
    for (std::size_t t = 0; t < old_edges.size(); ++t)
        fs.push_back(LocalFunction::lookup(3, "01010101"));  // value = own state (third argument)
    return System(std::move(lifted), std::move(fs));
}

// H as a formula over AND/OR/NOT with 0-based leaves.
inline FormulaNode cnf_to_formula(const Cnf& h) {
    h.validate();
    auto literal = [](int lit) {
        FormulaNode leaf = FormulaNode::leaf(std::abs(lit) - 1);
        return lit > 0 ? leaf : FormulaNode::make(Sym::Not, {std::move(leaf)});
    };
    FormulaNode all = FormulaNode::constant(true);
    bool first_clause = true;
    for (const auto& cl : h.clauses) {
        FormulaNode clause = literal(cl[0]);
        for (std::size_t i = 1; i < cl.size(); ++i) clause = FormulaNode::make(Sym::Or, {std::move(clause), literal(cl[i])});
        all = first_clause ? std::move(clause) : FormulaNode::make(Sym::And, {std::move(all), std::move(clause)});
        first_clause = false;
    }
    return all;
}

// dual(H)(x) = not H(not x1, ..., not xn), as a formula tree.
inline FormulaNode dual_formula(const Cnf& h) {
    h.validate();
    auto flipped_literal = [](int lit) {
        FormulaNode leaf = FormulaNode::leaf(std::abs(lit) - 1);
        return lit > 0 ? FormulaNode::make(Sym::Not, {std::move(leaf)}) : leaf;
    };
    FormulaNode all = FormulaNode::constant(true);
    bool first_clause = true;
    for (const auto& cl : h.clauses) {
        FormulaNode clause = flipped_literal(cl[0]);
        for (std::size_t i = 1; i < cl.size(); ++i)
            clause = FormulaNode::make(Sym::Or, {std::move(clause), flipped_literal(cl[i])});
        all = first_clause ? std::move(clause) : FormulaNode::make(Sym::And, {std::move(all), std::move(clause)});
        first_clause = false;
    }
    return FormulaNode::make(Sym::Not, {std::move(all)});
}

namespace detail {

inline FormulaNode d_negate(FormulaNode t, int z_index) {
    return FormulaNode::make(Sym::D, {FormulaNode::leaf(z_index), FormulaNode::leaf(z_index), std::move(t)});
}

inline FormulaNode sd_dformula_range(const Cnf& h, std::size_t lo, std::size_t hi, int z_index) {
    if (hi - lo == 1) {
        const auto& cl = h.clauses[lo];
        auto slot = [&](int lit) {
            FormulaNode leaf = FormulaNode::leaf(std::abs(lit) - 1);
            // Negative literals get the D double-negation before the slot's
            // own negation is applied.
            FormulaNode tree = lit > 0 ? std::move(leaf) : d_negate(std::move(leaf), z_index);
            return d_negate(std::move(tree), z_index);
        };
        FormulaNode inner = FormulaNode::make(
            Sym::D, {d_negate(FormulaNode::leaf(z_index), z_index),
                     FormulaNode::make(Sym::D, {FormulaNode::leaf(z_index), slot(cl[0]), slot(cl[1])}),
                     FormulaNode::make(Sym::D, {FormulaNode::leaf(z_index), slot(cl[0]), slot(cl[2])})});
        return d_negate(std::move(inner), z_index);
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return FormulaNode::make(Sym::D, {d_negate(FormulaNode::leaf(z_index), z_index),
                                      d_negate(sd_dformula_range(h, lo, mid, z_index), z_index),
                                      d_negate(sd_dformula_range(h, mid, hi, z_index), z_index)});
}

} // namespace detail

// D-only formula for sd(H)(x1..xn, z) = (H and z) or (dual(H) and not z).
// Clauses must have exactly three literals; z is leaf index num_vars. The
// halving recursion keeps the size within O(|H|^2).
inline FormulaNode sd_dformula(const Cnf& h) {
    h.validate();
    for (const auto& cl : h.clauses)
        if (cl.size() != 3) throw input_error("sd_dformula: every clause must have exactly 3 literals (pad first)");
    if (h.clauses.empty()) throw input_error("sd_dformula: need at least one clause");
    return detail::sd_dformula_range(h, 0, h.clauses.size(), h.num_vars);
}

inline bool is_pure_d(const FormulaNode& n) { return n.uses_only({Sym::D}); }

// Star system of the SAT reduction, plus the 3CNF driving the center.
struct StarSystem {
    System system;
    Cnf hat;     // the 3CNF whose satisfiability the star encodes
    int center;  // the hub vertex
};

// SAT reduction to a star network with self-dual formulas. H is widened by
// a fresh guard variable x0 (H or not-x0), converted to a 3CNF over
// x0..x_{n+m} whose satisfying assignments pin x0 = 1, and the center runs
// the D-formula of sd applied to that 3CNF with z identified with the
// center's own state. Leaves hold their state through a double D-negation.
// The result lies in Forb(K3, K2+K2) and has a fixed point iff H is
// satisfiable.
inline StarSystem sat_to_star_system(const Cnf& h) {
    const Cnf h3 = pad_to_three(h);
    const int n = h3.num_vars;
    const int m = static_cast<int>(h3.clauses.size());

    // Variables of the hat formula: x0 -> 1, x_i -> i+1, y_j -> n+1+j.
    Cnf hat;
    hat.num_vars = n + m + 1;
    auto shift = [](int lit) { return lit > 0 ? lit + 1 : lit - 1; };
    for (int j = 1; j <= m; ++j) {
        const auto& cl = h3.clauses[static_cast<std::size_t>(j - 1)];
        const int yj = n + 1 + j;
        hat.clauses.push_back({shift(cl[0]), shift(cl[1]), yj});
        hat.clauses.push_back({-yj, shift(cl[2]), -1});
    }
    // Pinning x0 = 1 keeps the widened formula equisatisfiable with H.
    hat.clauses.push_back({1, 1, 1});
    hat.validate();

    const int num_leaves = hat.num_vars;
    const int center = num_leaves + 1;
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= num_leaves; ++v) edges.emplace_back(v, center);
    Graph star(center, std::move(edges));

    std::vector<LocalFunction> fs;
    const FormulaNode own = FormulaNode::leaf(0);
    const FormulaNode hub = FormulaNode::leaf(1);
    for (int v = 1; v <= num_leaves; ++v) {
        FormulaNode keep = FormulaNode::make(
            Sym::D, {hub, hub, FormulaNode::make(Sym::D, {hub, hub, own})});
        fs.push_back(LocalFunction::formula(2, std::move(keep)));
    }
    fs.push_back(LocalFunction::formula(center, sd_dformula(hat)));
    return StarSystem{System(std::move(star), std::move(fs)), std::move(hat), center};
}

} // namespace fixpoint
