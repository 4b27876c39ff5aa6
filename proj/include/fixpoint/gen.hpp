#pragma once

#include <string>
#include <vector>

#include "fixpoint/post.hpp"
#include "fixpoint/rng.hpp"
#include "fixpoint/system.hpp"

namespace fixpoint {

// Seeded generators for graphs, class-constrained functions, systems, and
// schedules. Shared by the CLI's gen command and the verification suites.

inline Graph random_graph(Rng& rng, int n, int edge_percent) {
    std::vector<std::pair<int, int>> es;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (rng.chance(static_cast<std::uint64_t>(edge_percent), 100)) es.emplace_back(u, v);
    return Graph(n, std::move(es));
}

// Random table from the named class. R0/R1 pin the constant row, L draws
// affine coefficients, M upward-closes a random table, D mirrors one half of
// the hypercube, BF is uniform.
inline LocalFunction random_lookup_in_class(Rng& rng, int arity, NamedClass cls) {
    const std::uint32_t total = std::uint32_t{1} << arity;
    LookupTable t;
    t.rows.resize(total);
    switch (cls) {
        case NamedClass::BF:
        case NamedClass::R0:
        case NamedClass::R1:
            for (auto& b : t.rows) b = rng.coin();
            if (cls == NamedClass::R0) t.rows.front() = 0;
            if (cls == NamedClass::R1) t.rows.back() = 1;
            break;
        case NamedClass::L: {
            std::vector<std::uint8_t> coeff(static_cast<std::size_t>(arity) + 1);
            for (auto& c : coeff) c = rng.coin();
            for (std::uint32_t row = 0; row < total; ++row) {
                std::uint8_t v = coeff[0];
                for (int i = 0; i < arity; ++i)
                    if ((row >> (arity - 1 - i)) & 1u) v ^= coeff[static_cast<std::size_t>(i) + 1];
                t.rows[row] = v;
            }
            break;
        }
        case NamedClass::M: {
            std::vector<std::uint8_t> seedf(total);
            for (auto& b : seedf) b = rng.chance(1, 3);
            for (std::uint32_t row = 0; row < total; ++row) {
                bool v = false;
                for (std::uint32_t below = row;; below = (below - 1) & row) {
                    if (seedf[below]) {
                        v = true;
                        break;
                    }
                    if (below == 0) break;
                }
                t.rows[row] = v;
            }
            break;
        }
        case NamedClass::D:
            for (std::uint32_t row = 0; row < total / 2; ++row) {
                const bool v = rng.coin();
                t.rows[row] = v;
                t.rows[(total - 1) ^ row] = !v;
            }
            break;
    }
    return LocalFunction(arity, std::move(t));
}

namespace detail {

inline std::vector<Sym> class_basis(NamedClass cls) {
    switch (cls) {
        case NamedClass::R0: return {Sym::And, Sym::Xor};
        case NamedClass::R1: return {Sym::Or, Sym::Xnor};
        case NamedClass::L: return {Sym::Xor, Sym::Const0, Sym::Const1};
        case NamedClass::M: return {Sym::And, Sym::Or, Sym::Const0, Sym::Const1};
        case NamedClass::D: return {Sym::D};
        case NamedClass::BF: return {Sym::And, Sym::Or, Sym::Not, Sym::Xor};
    }
    return {Sym::And};
}

inline FormulaNode random_formula_rec(Rng& rng, int arity, const std::vector<Sym>& basis, int depth) {
    if (depth == 0 || rng.chance(1, 4)) return FormulaNode::leaf(static_cast<int>(rng.below(static_cast<std::uint64_t>(arity))));
    const Sym op = basis[rng.below(basis.size())];
    std::vector<FormulaNode> kids;
    for (int i = 0; i < sym_arity(op); ++i) kids.push_back(random_formula_rec(rng, arity, basis, depth - 1));
    if (kids.empty()) return FormulaNode::constant(op == Sym::Const1);
    return FormulaNode::make(op, std::move(kids));
}

} // namespace detail

// Random formula over the logical basis of the class; membership follows
// from clone closure, so no rejection step is needed.
inline LocalFunction random_formula_in_class(Rng& rng, int arity, NamedClass cls, int depth = 4) {
    if (arity == 0) return LocalFunction::formula(0, FormulaNode::constant(rng.coin()));
    return LocalFunction::formula(arity, detail::random_formula_rec(rng, arity, detail::class_basis(cls), depth));
}

inline LocalFunction random_circuit_in_class(Rng& rng, int arity, NamedClass cls, int extra_gates = 6) {
    Circuit c;
    const std::vector<Sym> basis = detail::class_basis(cls);
    if (arity == 0) {
        c.gates.push_back(Gate{rng.coin() ? Sym::Const1 : Sym::Const0, 0, {}});
        return LocalFunction::circuit(0, std::move(c));
    }
    for (int i = 0; i < arity; ++i) c.gates.push_back(Gate{Sym::Var, i, {}});
    for (int g = 0; g < extra_gates; ++g) {
        const Sym op = basis[rng.below(basis.size())];
        Gate gate;
        gate.op = op;
        if (op == Sym::Const0 || op == Sym::Const1) {
            c.gates.push_back(std::move(gate));
            continue;
        }
        for (int i = 0; i < sym_arity(op); ++i)
            gate.args.push_back(static_cast<int>(rng.below(c.gates.size())));
        c.gates.push_back(std::move(gate));
    }
    // The last gate must not be a bare input for D-class systems (a Var gate
    // is fine semantically, but make the output depend on the basis).
    return LocalFunction::circuit(arity, std::move(c));
}

enum class GenRepr : std::uint8_t { Lookup, Formula, Circuit, Mixed };

struct GenOptions {
    int n = 6;
    int edge_percent = 35;
    NamedClass cls = NamedClass::BF;
    GenRepr repr = GenRepr::Lookup;
    int formula_depth = 4;
};

inline LocalFunction random_function_in_class(Rng& rng, int arity, NamedClass cls, GenRepr repr, int depth = 4) {
    switch (repr) {
        case GenRepr::Lookup: return random_lookup_in_class(rng, arity, cls);
        case GenRepr::Formula: return random_formula_in_class(rng, arity, cls, depth);
        case GenRepr::Circuit: return random_circuit_in_class(rng, arity, cls);
        case GenRepr::Mixed: break;
    }
    switch (rng.below(3)) {
        case 0: return random_lookup_in_class(rng, arity, cls);
        case 1: return random_formula_in_class(rng, arity, cls, depth);
        default: return random_circuit_in_class(rng, arity, cls);
    }
}

inline System random_system(Rng& rng, const GenOptions& opt) {
    const Graph g = random_graph(rng, opt.n, opt.edge_percent);
    std::vector<LocalFunction> fs;
    for (int v = 1; v <= opt.n; ++v)
        fs.push_back(random_function_in_class(rng, g.degree(v) + 1, opt.cls, opt.repr, opt.formula_depth));
    return System(g, std::move(fs));
}

inline Schedule random_schedule(Rng& rng, int n, int max_steps = 8) {
    Schedule sched;
    const int steps = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_steps)));
    for (int t = 0; t < steps; ++t) {
        std::vector<int> step;
        for (int v = 1; v <= n; ++v)
            if (rng.coin()) step.push_back(v);
        sched.steps.push_back(std::move(step));
    }
    return sched;
}

} // namespace fixpoint
