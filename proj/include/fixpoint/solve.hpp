#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fixpoint/csp.hpp"
#include "fixpoint/dichotomy.hpp"
#include "fixpoint/gf2.hpp"
#include "fixpoint/post.hpp"
#include "fixpoint/system.hpp"

namespace fixpoint {

enum class Method : std::uint8_t {
    ConstantWitness0,
    ConstantWitness1,
    MonotoneIteration,
    LinearAlgebra,
    BoundedTreewidth,
    BoundedDegreeExpansion,
    BruteForce,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::ConstantWitness0: return "ConstantWitness0";
        case Method::ConstantWitness1: return "ConstantWitness1";
        case Method::MonotoneIteration: return "MonotoneIteration";
        case Method::LinearAlgebra: return "LinearAlgebra";
        case Method::BoundedTreewidth: return "BoundedTreewidth";
        case Method::BoundedDegreeExpansion: return "BoundedDegreeExpansion";
        case Method::BruteForce: return "BruteForce";
    }
    return "?";
}

struct Witness {
    Config config;
    Method method = Method::BruteForce;
    bool verified = false;
};

struct SolveOutcome {
    enum class Kind : std::uint8_t { Exists, NotExists, Refused };

    Kind kind = Kind::Refused;
    std::optional<Witness> witness;      // set for Exists
    Method method = Method::BruteForce;  // the method that decided
    std::vector<std::string> reasons;    // set for Refused

    bool exists() const { return kind == Kind::Exists; }
};

// Resource limits for the solver routes, all overridable via config or flags.
// Defaults keep worst-case memory use modest.
struct Budgets {
    int brute_force_cap = kDefaultBruteForceCap;
    int width_budget = 20;
    int degree_budget = 12;
};

namespace detail {

inline SolveOutcome emit_exists(const System& s, Config c, Method m) {
    if (!is_fixed_point(s, c)) throw std::logic_error("solver emitted a configuration that is not a fixed point");
    SolveOutcome out;
    out.kind = SolveOutcome::Kind::Exists;
    out.method = m;
    out.witness = Witness{std::move(c), m, true};
    return out;
}

inline SolveOutcome emit_not_exists(Method m) {
    SolveOutcome out;
    out.kind = SolveOutcome::Kind::NotExists;
    out.method = m;
    return out;
}

inline SolveOutcome emit_refused(std::vector<std::string> reasons) {
    SolveOutcome out;
    out.kind = SolveOutcome::Kind::Refused;
    out.reasons = std::move(reasons);
    return out;
}

} // namespace detail

// All-b configurations are fixed when every function is b-reproducing.
inline SolveOutcome solve_trivial_reproducing(const System& s, bool b) {
    for (int v = 1; v <= s.vertex_count(); ++v)
        if (!is_b_reproducing(s.function(v), b))
            throw contract_error(std::string("solve_trivial_reproducing: function at vertex ") + std::to_string(v) + " is not " +
                                 (b ? "1" : "0") + "-reproducing");
    return detail::emit_exists(s, Config(s.vertex_count(), b), b ? Method::ConstantWitness1 : Method::ConstantWitness0);
}

// Least-fixed-point iteration from the all-zero configuration. For monotone
// systems the synchronous orbit is componentwise nondecreasing, so it
// stabilizes within n steps and lands on the least fixed point.
inline SolveOutcome solve_monotone(const System& s) {
    for (int v = 1; v <= s.vertex_count(); ++v)
        if (!is_monotone(s.function(v)))
            throw contract_error("solve_monotone: function at vertex " + std::to_string(v) + " is not monotone");
    Config cur(s.vertex_count(), false);
    for (int step = 0; step <= s.vertex_count(); ++step) {
        Config next = synchronous_step(s, cur);
        if (next == cur) return detail::emit_exists(s, std::move(cur), Method::MonotoneIteration);
        cur = std::move(next);
    }
    throw std::logic_error("solve_monotone: iteration did not stabilize within n steps");
}

namespace detail {

struct LinearForm {
    std::vector<std::vector<int>> var_coeffs;  // per vertex, vertices with coefficient 1
    std::vector<std::uint8_t> constants;
};

inline LinearForm extract_linear(const System& s) {
    LinearForm form;
    form.var_coeffs.resize(static_cast<std::size_t>(s.vertex_count()));
    form.constants.resize(static_cast<std::size_t>(s.vertex_count()));
    for (int v = 1; v <= s.vertex_count(); ++v) {
        auto coeffs = is_linear(s.function(v));
        if (!coeffs) throw contract_error("solve_linear: function at vertex " + std::to_string(v) + " is not linear");
        form.constants[static_cast<std::size_t>(v - 1)] = (*coeffs)[0];
        const auto scope = s.graph().closed_neighborhood(v);
        for (std::size_t p = 0; p < scope.size(); ++p)
            if ((*coeffs)[p + 1]) form.var_coeffs[static_cast<std::size_t>(v - 1)].push_back(scope[p]);
    }
    return form;
}

// Fixed points of a linear system are the solutions of (A xor Id) x = a0.
inline Gf2System linear_fixed_point_system(const System& s) {
    const LinearForm form = extract_linear(s);
    Gf2System sys(s.vertex_count());
    for (int v = 1; v <= s.vertex_count(); ++v) {
        std::vector<int> ones;
        bool self = false;
        for (int u : form.var_coeffs[static_cast<std::size_t>(v - 1)]) {
            if (u == v)
                self = true;
            else
                ones.push_back(u - 1);
        }
        if (!self) ones.push_back(v - 1);  // x_v xor f_v's x_v coefficient
        sys.add_equation(ones, form.constants[static_cast<std::size_t>(v - 1)]);
    }
    return sys;
}

} // namespace detail

// GF(2) elimination on x = A x xor a0; every linear system is decided
// exactly, with a witness when consistent.
inline SolveOutcome solve_linear(const System& s) {
    auto solution = detail::linear_fixed_point_system(s).solve();
    if (!solution) return detail::emit_not_exists(Method::LinearAlgebra);
    Config c(s.vertex_count());
    for (int v = 1; v <= s.vertex_count(); ++v) c.set_bit(v, solution->values[static_cast<std::size_t>(v - 1)]);
    return detail::emit_exists(s, std::move(c), Method::LinearAlgebra);
}

// Number of fixed points of a linear system: 0 if inconsistent, else
// 2^(n - rank). Used by verification; counts above 2^62 are capped.
inline std::uint64_t linear_fixed_point_count(const System& s) {
    auto solution = detail::linear_fixed_point_system(s).solve();
    if (!solution) return 0;
    const int nullity = std::min(solution->nullity, 62);
    return std::uint64_t{1} << nullity;
}

// CSP route: split off isolated vertices, reduce the rest per the CSP
// construction, and run the tree-decomposition DP on a min-fill
// decomposition. Refuses when the heuristic width or the maximum degree
// exceeds its budget, since the DP tables are exponential in both.
inline SolveOutcome solve_treewidth(const System& s, const Budgets& budgets = {}) {
    const int n = s.vertex_count();
    std::vector<int> isolated, rest;
    for (int v = 1; v <= n; ++v) (s.graph().degree(v) == 0 ? isolated : rest).push_back(v);

    Config assembled(n);
    for (int v : isolated) {
        // A unary function has a fixed bit or the whole system has no fixed point.
        if (s.function(v).eval_row(0) == 0)
            assembled.set_bit(v, false);
        else if (s.function(v).eval_row(1) == 1)
            assembled.set_bit(v, true);
        else
            return detail::emit_not_exists(Method::BoundedTreewidth);
    }
    if (rest.empty()) return detail::emit_exists(s, std::move(assembled), Method::BoundedTreewidth);

    if (s.graph().max_degree() > budgets.degree_budget)
        return detail::emit_refused({"treewidth route: maximum degree " + std::to_string(s.graph().max_degree()) +
                                     " exceeds the degree budget of " + std::to_string(budgets.degree_budget)});

    std::vector<LocalFunction> fs;
    for (int v : rest) fs.push_back(s.function(v));
    System sub(s.graph().induced(rest), std::move(fs));

    const CSPInstance csp = build_csp(sub);
    const TreeDecomposition td = treewidth_upper_bound(sub.graph());
    if (td.width() > budgets.width_budget)
        return detail::emit_refused({"treewidth route: heuristic width " + std::to_string(td.width()) +
                                     " exceeds the width budget of " + std::to_string(budgets.width_budget)});
    for (const auto& bag : td.bags) {
        double rows = 1;
        for (int v : bag) rows *= static_cast<double>(csp.domains[static_cast<std::size_t>(v)].size());
        if (rows > static_cast<double>(1 << 24))
            return detail::emit_refused({"treewidth route: a bag table would need about " + std::to_string(rows) + " rows"});
    }
    auto assignment = solve_csp_td(csp, td);
    if (!assignment) return detail::emit_not_exists(Method::BoundedTreewidth);
    const Config sub_config = csp_assignment_to_config(sub, csp, *assignment);
    for (std::size_t p = 0; p < rest.size(); ++p) assembled.set_bit(rest[p], sub_config.bit(static_cast<int>(p) + 1));
    return detail::emit_exists(s, std::move(assembled), Method::BoundedTreewidth);
}

// Bounded-degree route: convert every function to a lookup table (at most
// 2^(r+1) entries each) and decide the resulting system, which has the same
// fixed points. Refuses above the degree budget.
inline SolveOutcome solve_bounded_degree_expand(const System& s, const Budgets& budgets = {}) {
    if (s.graph().max_degree() > budgets.degree_budget)
        return detail::emit_refused({"degree expansion: maximum degree " + std::to_string(s.graph().max_degree()) +
                                     " exceeds the degree budget of " + std::to_string(budgets.degree_budget)});
    std::vector<LocalFunction> tables;
    for (int v = 1; v <= s.vertex_count(); ++v) tables.push_back(to_lookup(s.function(v)));
    System expanded(s.graph(), std::move(tables));

    SolveOutcome inner = solve_treewidth(expanded, budgets);
    if (inner.kind == SolveOutcome::Kind::Refused && expanded.vertex_count() <= budgets.brute_force_cap) {
        auto fp = first_fixed_point(expanded, budgets.brute_force_cap);
        inner = fp ? detail::emit_exists(expanded, *fp, Method::BruteForce) : detail::emit_not_exists(Method::BruteForce);
    }
    if (inner.kind == SolveOutcome::Kind::Refused) return inner;
    SolveOutcome out = inner;
    out.method = Method::BoundedDegreeExpansion;
    if (out.witness) {
        out.witness->method = Method::BoundedDegreeExpansion;
        if (!is_fixed_point(s, out.witness->config)) throw std::logic_error("degree expansion changed the fixed points");
    }
    return out;
}

enum class Strategy : std::uint8_t { Auto, Constant1, Constant0, Linear, Monotone, Treewidth, DegreeExpand, Brute };

// End-to-end decision procedure. Auto probes the cheapest applicable method
// first: constant witnesses, linear, monotone, the structural routes, and
// brute force under the cap. Every witness is re-verified before emission.
inline SolveOutcome solve_fpe(const System& s, Strategy strategy = Strategy::Auto, const Budgets& budgets = {}) {
    switch (strategy) {
        case Strategy::Constant1: return solve_trivial_reproducing(s, true);
        case Strategy::Constant0: return solve_trivial_reproducing(s, false);
        case Strategy::Linear: return solve_linear(s);
        case Strategy::Monotone: return solve_monotone(s);
        case Strategy::Treewidth: return solve_treewidth(s, budgets);
        case Strategy::DegreeExpand: return solve_bounded_degree_expand(s, budgets);
        case Strategy::Brute: {
            if (s.vertex_count() > budgets.brute_force_cap)
                return detail::emit_refused({"brute force: " + std::to_string(s.vertex_count()) +
                                             " vertices exceeds the cap of " + std::to_string(budgets.brute_force_cap)});
            auto fp = first_fixed_point(s, budgets.brute_force_cap);
            return fp ? detail::emit_exists(s, *fp, Method::BruteForce) : detail::emit_not_exists(Method::BruteForce);
        }
        case Strategy::Auto: break;
    }

    auto all = [&](auto&& pred) {
        for (int v = 1; v <= s.vertex_count(); ++v)
            if (!pred(s.function(v))) return false;
        return true;
    };
    if (all([](const LocalFunction& f) { return is_b_reproducing(f, true); })) return solve_trivial_reproducing(s, true);
    if (all([](const LocalFunction& f) { return is_b_reproducing(f, false); })) return solve_trivial_reproducing(s, false);
    // The linear and monotone probes scan 2^arity rows; skip them when some
    // function is too wide to scan.
    const bool probe_tables = s.graph().max_degree() + 1 <= 24;
    if (probe_tables && all([](const LocalFunction& f) { return is_linear(f).has_value(); })) return solve_linear(s);
    if (probe_tables && all([](const LocalFunction& f) { return is_monotone(f); })) return solve_monotone(s);

    std::vector<std::string> reasons;
    SolveOutcome tw = solve_treewidth(s, budgets);
    if (tw.kind != SolveOutcome::Kind::Refused) return tw;
    reasons.insert(reasons.end(), tw.reasons.begin(), tw.reasons.end());

    SolveOutcome expanded = solve_bounded_degree_expand(s, budgets);
    if (expanded.kind != SolveOutcome::Kind::Refused) return expanded;
    reasons.insert(reasons.end(), expanded.reasons.begin(), expanded.reasons.end());

    if (s.vertex_count() <= budgets.brute_force_cap) {
        auto fp = first_fixed_point(s, budgets.brute_force_cap);
        return fp ? detail::emit_exists(s, *fp, Method::BruteForce) : detail::emit_not_exists(Method::BruteForce);
    }
    reasons.push_back("brute force: " + std::to_string(s.vertex_count()) + " vertices exceeds the cap of " +
                      std::to_string(budgets.brute_force_cap));
    return detail::emit_refused(std::move(reasons));
}

} // namespace fixpoint
