#include <catch_amalgamated.hpp>

#include "fixpoint/fixpoint.hpp"
#include "oracles.hpp"

using namespace fixpoint;

namespace {

System sys_xor2() {
    return System(Graph(2, {{1, 2}}), {LocalFunction::lookup(2, "0110"), LocalFunction::lookup(2, "0001")});
}

// Lookup table of the projection onto the vertex's own state.
LocalFunction self_projection(const Graph& g, int v) {
    const auto scope = g.closed_neighborhood(v);
    const int arity = static_cast<int>(scope.size());
    const int pos = static_cast<int>(std::lower_bound(scope.begin(), scope.end(), v) - scope.begin());
    LookupTable t;
    for (std::uint32_t row = 0; row < (1u << arity); ++row) t.rows.push_back((row >> (arity - 1 - pos)) & 1u);
    return LocalFunction(arity, std::move(t));
}

System identity_system(const Graph& g) {
    std::vector<LocalFunction> fs;
    for (int v = 1; v <= g.vertex_count(); ++v) fs.push_back(self_projection(g, v));
    return System(g, std::move(fs));
}

// Random system without isolated vertices (each one gets a pendant edge).
System random_core_system(Rng& rng, int n, int edge_percent, GenRepr repr = GenRepr::Lookup) {
    Graph g = random_graph(rng, n, edge_percent);
    std::vector<std::pair<int, int>> es = g.edges();
    for (int v = 1; v <= n; ++v)
        if (g.degree(v) == 0) es.emplace_back(std::min(v == 1 ? 2 : 1, v), std::max(v == 1 ? 2 : 1, v));
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    Graph fixed(n, std::move(es));
    std::vector<LocalFunction> fs;
    for (int v = 1; v <= n; ++v)
        fs.push_back(random_function_in_class(rng, fixed.degree(v) + 1, NamedClass::BF, repr));
    return System(std::move(fixed), std::move(fs));
}

} // namespace

TEST_CASE("build_csp on the xor pair") {
    const CSPInstance csp = build_csp(sys_xor2());
    CHECK(csp.num_vars == 2);
    CHECK(csp.domains[1].size() == 2);  // 00 and 10 over N0(1)
    CHECK(csp.domains[2].size() == 3);  // 00, 10, 11 over N0(2)
    REQUIRE(csp.constraints.size() == 1);
    CHECK(csp.constraints[0].allowed == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("build_csp with identity functions keeps every local assignment") {
    const System s = identity_system(path_graph(3));
    const CSPInstance csp = build_csp(s);
    CHECK(csp.domains[1].size() == 4);
    CHECK(csp.domains[2].size() == 8);
    CHECK(csp.domains[3].size() == 4);
    CHECK(csp.constraints.size() == 2);
}

TEST_CASE("build_csp rejects isolated vertices") {
    System sys_not(Graph(1, {}), {LocalFunction::lookup(1, "10")});
    CHECK_THROWS_AS(build_csp(sys_not), contract_error);
}

TEST_CASE("constraint graph mirrors the network") {
    CHECK(constraint_graph(build_csp(sys_xor2())) == Graph(2, {{1, 2}}));
    Rng rng(5);
    System tri = random_core_system(rng, 3, 100);
    CHECK(constraint_graph(build_csp(tri)) == complete_graph(3));
    CSPInstance empty;
    empty.num_vars = 3;
    empty.domains.resize(4);
    CHECK(constraint_graph(empty) == Graph(3, {}));
}

TEST_CASE("solve_csp_td basics") {
    SECTION("xor pair reassembles to a real fixed point") {
        const System s = sys_xor2();
        const CSPInstance csp = build_csp(s);
        const TreeDecomposition td = treewidth_upper_bound(constraint_graph(csp));
        auto assignment = solve_csp_td(csp, td);
        REQUIRE(assignment.has_value());
        const Config c = csp_assignment_to_config(s, csp, *assignment);
        CHECK(is_fixed_point(s, c));
        CHECK((c == Config::from_word(0, 2) || c == Config::from_word(2, 2)));
    }
    SECTION("an empty domain is unsatisfiable") {
        CSPInstance csp;
        csp.num_vars = 2;
        csp.domains.resize(3);
        csp.domains[1].push_back({0, 1});
        const TreeDecomposition td = treewidth_upper_bound(Graph(2, {}));
        CHECK_FALSE(solve_csp_td(csp, td).has_value());
    }
    SECTION("invalid decompositions are rejected by invariant name") {
        const CSPInstance csp = build_csp(sys_xor2());
        TreeDecomposition td;
        td.bags = {{1}, {2}};
        td.tree_edges = {{0, 1}};
        CHECK_THROWS_WITH(solve_csp_td(csp, td), Catch::Matchers::ContainsSubstring("edge coverage"));
    }
}

TEST_CASE("reduction correctness against brute force") {
    Rng rng(424242);
    for (int round = 0; round < 80; ++round) {
        const int n = 2 + static_cast<int>(rng.below(9));
        System s = random_core_system(rng, n, 18 + static_cast<int>(rng.below(22)));
        const auto fps = enumerate_fixed_points(s);
        const CSPInstance csp = build_csp(s);
        CHECK(csp.num_vars == s.vertex_count());
        CHECK(csp.constraints.size() == s.graph().edges().size());
        const TreeDecomposition td = treewidth_upper_bound(constraint_graph(csp));
        auto assignment = solve_csp_td(csp, td);
        CAPTURE(round, n);
        REQUIRE(assignment.has_value() == !fps.empty());
        if (assignment) REQUIRE(is_fixed_point(s, csp_assignment_to_config(s, csp, *assignment)));
    }
}

TEST_CASE("fixed points round-trip through canonical assignments") {
    Rng rng(8181);
    for (int round = 0; round < 40; ++round) {
        System s = random_core_system(rng, 2 + static_cast<int>(rng.below(6)), 45);
        const CSPInstance csp = build_csp(s);
        for (const Config& fp : enumerate_fixed_points(s)) {
            // The canonical assignment picks, for each vertex, the restriction
            // of the fixed point onto its closed neighborhood.
            std::vector<int> assignment(static_cast<std::size_t>(s.vertex_count()) + 1, -1);
            for (int v = 1; v <= s.vertex_count(); ++v) {
                const auto scope = s.graph().closed_neighborhood(v);
                std::uint32_t mask = 0;
                for (int u : scope) mask = (mask << 1) | (fp.bit(u) ? 1u : 0u);
                const auto& dom = csp.domains[static_cast<std::size_t>(v)];
                for (std::size_t d = 0; d < dom.size(); ++d)
                    if (dom[d].mask == mask) assignment[static_cast<std::size_t>(v)] = static_cast<int>(d);
                REQUIRE(assignment[static_cast<std::size_t>(v)] >= 0);
            }
            CHECK(csp_assignment_to_config(s, csp, assignment) == fp);
        }
    }
}

TEST_CASE("solve_csp_td agrees with backtracking search on random instances") {
    Rng rng(171717);
    for (int round = 0; round < 120; ++round) {
        CSPInstance csp;
        csp.num_vars = 2 + static_cast<int>(rng.below(11));
        csp.domains.resize(static_cast<std::size_t>(csp.num_vars) + 1);
        for (int v = 1; v <= csp.num_vars; ++v) {
            const int size = 1 + static_cast<int>(rng.below(8));
            for (int d = 0; d < size; ++d) csp.domains[static_cast<std::size_t>(v)].push_back({static_cast<std::uint32_t>(d), v});
        }
        for (int i = 1; i <= csp.num_vars; ++i)
            for (int j = i + 1; j <= csp.num_vars; ++j) {
                if (!rng.chance(2, 5)) continue;
                CSPInstance::Constraint c;
                c.i = i;
                c.j = j;
                for (int a = 0; a < static_cast<int>(csp.domains[static_cast<std::size_t>(i)].size()); ++a)
                    for (int b = 0; b < static_cast<int>(csp.domains[static_cast<std::size_t>(j)].size()); ++b)
                        if (rng.chance(3, 5)) c.allowed.emplace_back(a, b);
                csp.constraints.push_back(std::move(c));
            }
        const TreeDecomposition td = treewidth_upper_bound(constraint_graph(csp));
        CAPTURE(round, csp.num_vars);
        REQUIRE(solve_csp_td(csp, td).has_value() == oracles::csp_satisfiable_brute(csp));
    }
}
