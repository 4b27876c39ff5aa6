#include <catch_amalgamated.hpp>

#include "fixpoint/fixpoint.hpp"
#include "oracles.hpp"

using namespace fixpoint;

namespace {

// Reference for sd(H): (H and z) or (dual(H) and not z), evaluated over
// (x1..xn, z).
bool sd_reference(const Cnf& h, std::uint64_t row, int arity) {
    const bool z = row & 1u;
    std::uint32_t assignment = 0;
    for (int v = 1; v <= h.num_vars; ++v)
        if ((row >> (arity - 1 - (v - 1))) & 1u) assignment |= 1u << (v - 1);
    const std::uint32_t flipped = ~assignment & ((1u << h.num_vars) - 1);
    return z ? h.eval(assignment) : !h.eval(flipped);
}

Cnf cnf(int nv, std::vector<std::vector<int>> clauses) {
    Cnf h;
    h.num_vars = nv;
    h.clauses = std::move(clauses);
    h.validate();
    return h;
}

Cnf random_three_cnf(Rng& rng, int nv, int m) {
    Cnf h;
    h.num_vars = nv;
    for (int j = 0; j < m; ++j) {
        std::vector<int> cl;
        for (int t = 0; t < 3; ++t) {
            const int var = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(nv)));
            cl.push_back(rng.coin() ? var : -var);
        }
        h.clauses.push_back(std::move(cl));
    }
    return h;
}

} // namespace

TEST_CASE("incidence graph") {
    CHECK(incidence_graph(cnf(3, {{1, 2, 3}})) == Graph(4, {{1, 4}, {2, 4}, {3, 4}}));
    CHECK(incidence_graph(cnf(1, {{1}, {-1}})) == Graph(3, {{1, 2}, {1, 3}}));
    CHECK(incidence_graph(cnf(2, {{1, 1, 2}})) == Graph(3, {{1, 3}, {2, 3}}));
}

TEST_CASE("planar 3SAT gadget on the named examples") {
    SECTION("a satisfiable clause gives a fixed point") {
        auto gadget = planar3sat_to_system(cnf(3, {{1, 2, 3}}));
        CHECK_FALSE(enumerate_fixed_points(gadget.system).empty());
        CHECK(gadget.system.graph().max_degree() <= 3);
        CHECK(is_planar(gadget.system.graph()));
    }
    SECTION("an unsatisfiable pair gives none") {
        auto gadget = planar3sat_to_system(cnf(1, {{1, 1, 1}, {-1, -1, -1}}));
        CHECK(enumerate_fixed_points(gadget.system).empty());
    }
    SECTION("clauses of fewer than three distinct variables are fine") {
        auto gadget = planar3sat_to_system(cnf(2, {{1, -2, 1}, {2, 2, 2}}));
        CHECK(enumerate_fixed_points(gadget.system).empty() == !cnf_satisfiable(cnf(2, {{1, -2, 1}, {2, 2, 2}})));
    }
}

TEST_CASE("planar 3SAT gadget equivalence and fixed-point shape") {
    int sat_seen = 0, unsat_seen = 0, rounds = 0;
    for (const Cnf& h : oracles::planar_cnf_corpus(600673, 26)) {
        ++rounds;
        auto gadget = planar3sat_to_system(h);
        REQUIRE(gadget.system.graph().max_degree() <= 3);
        REQUIRE(is_planar(gadget.system.graph()));
        const bool sat = cnf_satisfiable(h);
        const auto fps = enumerate_fixed_points(gadget.system);
        CAPTURE(rounds);
        REQUIRE(sat == !fps.empty());
        (sat ? sat_seen : unsat_seen) += 1;
        for (const Config& fp : fps) {
            for (int j = 1; j <= gadget.clause_count; ++j) REQUIRE(fp.bit(j));
            for (const auto& cyc : gadget.variable_cycle)
                for (std::size_t t = 1; t < cyc.size(); ++t) REQUIRE(fp.bit(cyc[t]) == fp.bit(cyc[0]));
        }
    }
    CHECK(rounds >= 40);
    CHECK(sat_seen > 10);
    CHECK(unsat_seen >= 4);
}

TEST_CASE("planar 3SAT gadget rejects nonplanar incidence graphs") {
    // Three variables in every clause pattern of K33's bipartition classes:
    // x_i appears in all clauses C_1..C_3 for i = 1..3.
    Cnf h = cnf(3, {{1, 2, 3}, {-1, -2, -3}, {1, -2, 3}});
    REQUIRE_FALSE(is_planar(incidence_graph(h)));
    CHECK_THROWS_AS(planar3sat_to_system(h), input_error);
}

TEST_CASE("self-dualizer") {
    SECTION("makes everything self-dual") {
        Rng rng(999);
        for (int round = 0; round < 80; ++round) {
            const int arity = 1 + static_cast<int>(rng.below(4));
            const int guards = 1 + static_cast<int>(rng.below(3));
            LocalFunction f = random_lookup_in_class(rng, arity, NamedClass::BF);
            CHECK(is_self_dual(self_dualize(f, guards)));
        }
        CHECK(is_self_dual(self_dualize(LocalFunction::lookup(2, "0001"), 1)));
    }
    SECTION("case split") {
        LocalFunction f = LocalFunction::lookup(2, "0001");  // and
        LocalFunction sd1 = self_dualize(f, 1);
        // y = 0: sd(x1, x2, 0, z) = and(x1, x2)
        for (std::uint32_t x = 0; x < 4; ++x)
            for (std::uint32_t z = 0; z < 2; ++z) CHECK(sd1.eval_row((x << 2) | (0u << 1) | z) == f.eval_row(x));
        // mixed guard block: returns not z
        LocalFunction sd2 = self_dualize(f, 2);
        for (std::uint32_t x = 0; x < 4; ++x)
            for (std::uint32_t z = 0; z < 2; ++z) CHECK(sd2.eval_row((x << 3) | (0b01u << 1) | z) == !z);
        // y = all ones: the dual of f
        for (std::uint32_t x = 0; x < 4; ++x)
            for (std::uint32_t z = 0; z < 2; ++z) CHECK(sd1.eval_row((x << 2) | (1u << 1) | z) == !f.eval_row(~x & 3u));
    }
    SECTION("needs a guard") {
        CHECK_THROWS_AS(self_dualize(LocalFunction::lookup(1, "01"), 0), input_error);
    }
}

TEST_CASE("self-dual planar lift") {
    System xor2(Graph(2, {{1, 2}}), {LocalFunction::lookup(2, "0110"), LocalFunction::lookup(2, "0001")});
    SECTION("all lifted functions are self-dual, the network stays planar") {
        System lifted = planar_selfdual_lift(xor2);
        CHECK(lifted.vertex_count() == 3);
        for (int v = 1; v <= lifted.vertex_count(); ++v) CHECK(is_self_dual(lifted.function(v)));
        CHECK(is_planar(lifted.graph()));
    }
    SECTION("triangle lift stays planar") {
        Rng rng(10);
        std::vector<LocalFunction> fs;
        for (int v = 1; v <= 3; ++v) fs.push_back(random_lookup_in_class(rng, 3, NamedClass::BF));
        System tri(complete_graph(3), std::move(fs));
        System lifted = planar_selfdual_lift(tri);
        CHECK(is_planar(lifted.graph()));
        for (int v = 1; v <= lifted.vertex_count(); ++v) CHECK(is_self_dual(lifted.function(v)));
    }
    SECTION("fixed-point existence is preserved both ways") {
        Rng rng(321123);
        int done = 0;
        while (done < 12) {
            const int n = 2 + static_cast<int>(rng.below(4));
            Graph g = random_graph(rng, n, 50 + static_cast<int>(rng.below(40)));
            if (!g.is_connected() || !is_planar(g)) continue;
            std::vector<LocalFunction> fs;
            for (int v = 1; v <= n; ++v) fs.push_back(random_lookup_in_class(rng, g.degree(v) + 1, NamedClass::BF));
            System s(g, std::move(fs));
            System lifted = planar_selfdual_lift(s);
            const auto fps = enumerate_fixed_points(s);
            const auto lifted_fps = enumerate_fixed_points(lifted);
            CAPTURE(done, n);
            REQUIRE(fps.empty() == lifted_fps.empty());
            // Edge vertices take one constant value per fixed point.
            for (const Config& fp : lifted_fps)
                for (int e = s.vertex_count() + 2; e <= lifted.vertex_count(); ++e)
                    REQUIRE(fp.bit(e) == fp.bit(s.vertex_count() + 1));
            ++done;
        }
    }
    SECTION("nonplanar input is rejected") {
        Rng rng(77);
        std::vector<LocalFunction> fs;
        for (int v = 1; v <= 5; ++v) fs.push_back(random_lookup_in_class(rng, 5, NamedClass::BF));
        CHECK_THROWS_AS(planar_selfdual_lift(System(k5_graph(), std::move(fs))), input_error);
    }
}

TEST_CASE("dual formula") {
    CHECK(to_lookup(LocalFunction::formula(1, dual_formula(cnf(1, {{1}})))).table().to_bit_string() == "01");
    CHECK(to_lookup(LocalFunction::formula(2, dual_formula(cnf(2, {{1, 2}})))).table().to_bit_string() == "0001");
    Rng rng(31);
    for (int round = 0; round < 40; ++round) {
        const int nv = 1 + static_cast<int>(rng.below(4));
        Cnf h = random_three_cnf(rng, nv, 1 + static_cast<int>(rng.below(3)));
        LocalFunction dual = LocalFunction::formula(nv, dual_formula(h));
        LocalFunction plain = LocalFunction::formula(nv, cnf_to_formula(h));
        // dual table = complement of the reversed table of H
        for (std::uint32_t row = 0; row < (1u << nv); ++row)
            REQUIRE(dual.eval_row(row) == !plain.eval_row(~row & ((1u << nv) - 1)));
    }
}

TEST_CASE("sd D-formula") {
    SECTION("single positive clause matches the case definition") {
        Cnf h = cnf(3, {{1, 2, 3}});
        LocalFunction f = LocalFunction::formula(4, sd_dformula(h));
        for (std::uint32_t row = 0; row < 16; ++row) {
            const bool x1 = row & 8, x2 = row & 4, x3 = row & 2, z = row & 1;
            const bool want = z ? (x1 || x2 || x3) : (x1 && x2 && x3);
            REQUIRE(f.eval_row(row) == want);
        }
    }
    SECTION("single clauses over up to 3 variables, all sign patterns") {
        for (int nv = 1; nv <= 3; ++nv)
            for (int v1 = 1; v1 <= nv; ++v1)
                for (int v2 = 1; v2 <= nv; ++v2)
                    for (int v3 = 1; v3 <= nv; ++v3)
                        for (int signs = 0; signs < 8; ++signs) {
                            std::vector<int> cl{(signs & 1) ? -v1 : v1, (signs & 2) ? -v2 : v2, (signs & 4) ? -v3 : v3};
                            Cnf h = cnf(nv, {cl});
                            const int arity = nv + 1;
                            LocalFunction f = LocalFunction::formula(arity, sd_dformula(h));
                            CHECK(is_pure_d(f.formula_root()));
                            for (std::uint64_t row = 0; row < (1u << arity); ++row)
                                REQUIRE(f.eval_row(row) == sd_reference(h, row, arity));
                        }
    }
    SECTION("recursive splits match the definition and stay self-dual") {
        Rng rng(111);
        for (int round = 0; round < 60; ++round) {
            const int nv = 1 + static_cast<int>(rng.below(4));
            const int m = 1 + static_cast<int>(rng.below(4));
            Cnf h = random_three_cnf(rng, nv, m);
            const int arity = nv + 1;
            LocalFunction f = LocalFunction::formula(arity, sd_dformula(h));
            CAPTURE(round, nv, m);
            REQUIRE(is_pure_d(f.formula_root()));
            for (std::uint64_t row = 0; row < (1u << arity); ++row) REQUIRE(f.eval_row(row) == sd_reference(h, row, arity));
            REQUIRE(is_self_dual(to_lookup(f)));
        }
    }
    SECTION("formula size stays quadratic in the clause count") {
        Rng rng(222);
        for (int m : {1, 2, 4, 8, 16}) {
            Cnf h = random_three_cnf(rng, 4, m);
            const int size = sd_dformula(h).size();
            // |H| counts literal slots; the construction is linear in m with
            // a modest constant, comfortably within C * |H|^2 for C = 6.
            CHECK(size <= 6 * (3 * m) * (3 * m));
            CHECK(size >= m);
        }
    }
    SECTION("rejects clauses that are not exactly three literals") {
        CHECK_THROWS_AS(sd_dformula(cnf(2, {{1, 2}})), input_error);
    }
}

TEST_CASE("star system reduction") {
    SECTION("named examples") {
        auto star = sat_to_star_system(cnf(1, {{1, 1, 1}}));
        CHECK_FALSE(enumerate_fixed_points(star.system).empty());
        auto dead = sat_to_star_system(cnf(1, {{1, 1, 1}, {-1, -1, -1}}));
        CHECK(enumerate_fixed_points(dead.system).empty());
        CHECK(has_vertex_cover_one(star.system.graph()));
    }
    SECTION("leaf double negation is the identity") {
        LocalFunction leaf = LocalFunction::formula(
            2, FormulaNode::make(Sym::D, {FormulaNode::leaf(1), FormulaNode::leaf(1),
                                          FormulaNode::make(Sym::D, {FormulaNode::leaf(1), FormulaNode::leaf(1),
                                                                     FormulaNode::leaf(0)})}));
        for (std::uint32_t a = 0; a < 2; ++a)
            for (std::uint32_t b = 0; b < 2; ++b) CHECK(leaf.eval_row((b << 1) | a) == static_cast<bool>(b));
    }
    SECTION("SAT iff fixed point, over a mixed corpus") {
        int sat_seen = 0, unsat_seen = 0, round = 0;
        for (const Cnf& h : oracles::planar_cnf_corpus(55555, 16)) {
            if (h.num_vars + static_cast<int>(h.clauses.size()) + 2 > 16) continue;
            ++round;
            auto star = sat_to_star_system(h);
            REQUIRE(star.system.vertex_count() == h.num_vars + static_cast<int>(h.clauses.size()) + 2);
            REQUIRE(has_vertex_cover_one(star.system.graph()));
            for (int v = 1; v <= star.system.vertex_count(); ++v) {
                REQUIRE(star.system.function(v).is_formula());
                REQUIRE(is_pure_d(star.system.function(v).formula_root()));
            }
            const bool sat = cnf_satisfiable(h);
            CAPTURE(round);
            REQUIRE(sat == !enumerate_fixed_points(star.system).empty());
            (sat ? sat_seen : unsat_seen) += 1;
        }
        CHECK(sat_seen > 5);
        CHECK(unsat_seen >= 4);
    }
    SECTION("center function is self-dual") {
        auto star = sat_to_star_system(cnf(2, {{1, -2, 2}, {-1, -1, 2}}));
        CHECK(is_self_dual(to_lookup(star.system.function(star.center))));
    }
}

TEST_CASE("planar 3SAT gadget cycle shapes for one and two occurrences") {
    // x1 occurs in both clauses (a two-vertex "cycle" joined by one edge),
    // x2 in one clause, x3 in one clause.
    Cnf h = cnf(3, {{1, 2, 2}, {-1, 3, 3}});
    auto gadget = planar3sat_to_system(h);
    CHECK(gadget.variable_cycle[0].size() == 2);
    CHECK(gadget.variable_cycle[1].size() == 1);
    CHECK(gadget.variable_cycle[2].size() == 1);
    CHECK(gadget.system.vertex_count() == 2 + 4);
    const auto& g = gadget.system.graph();
    CHECK(g.has_edge(gadget.variable_cycle[0][0], gadget.variable_cycle[0][1]));
    CHECK(cnf_satisfiable(h) == !enumerate_fixed_points(gadget.system).empty());
}

TEST_CASE("planar 3SAT gadget on longer chains") {
    // Implication chains x1 -> x2 -> ... -> x6 with a forced head; the
    // incidence graph is a caterpillar, so the gadget grows but stays well
    // under the brute-force cap.
    SECTION("satisfiable chain") {
        Cnf h = cnf(6, {{1, 1, 1}, {-1, 2, 2}, {-2, 3, 3}, {-3, 4, 4}, {-4, 5, 5}, {-5, 6, 6}});
        auto gadget = planar3sat_to_system(h);
        CHECK(gadget.system.vertex_count() >= 16);
        CHECK(gadget.system.graph().max_degree() <= 3);
        CHECK(is_planar(gadget.system.graph()));
        CHECK_FALSE(enumerate_fixed_points(gadget.system).empty());
    }
    SECTION("chain closed into a contradiction") {
        Cnf h = cnf(5, {{1, 1, 1}, {-1, 2, 2}, {-2, 3, 3}, {-3, 4, 4}, {-4, 5, 5}, {-5, -1, -1}});
        REQUIRE_FALSE(cnf_satisfiable(h));
        auto gadget = planar3sat_to_system(h);
        CHECK(is_planar(gadget.system.graph()));
        CHECK(enumerate_fixed_points(gadget.system).empty());
    }
}

TEST_CASE("degenerate CNFs") {
    SECTION("no clauses at all") {
        Cnf empty;
        empty.num_vars = 2;
        auto gadget = planar3sat_to_system(empty);
        CHECK(gadget.system.vertex_count() == 0);
        CHECK_FALSE(enumerate_fixed_points(gadget.system).empty());  // the empty configuration
        auto star = sat_to_star_system(empty);
        CHECK_FALSE(enumerate_fixed_points(star.system).empty());
    }
    SECTION("short clauses are padded for the star route") {
        Cnf h = cnf(2, {{1}, {-1, 2}});
        auto star = sat_to_star_system(h);
        CHECK(cnf_satisfiable(h) == !enumerate_fixed_points(star.system).empty());
    }
}

TEST_CASE("planar 3SAT gadget respects the embedding around high-degree variables") {
    // x1 sits at the hub of a wheel: it occurs in all four clauses, and the
    // rim x2..x5 forces the cyclic order of C1..C4 around x1 (up to rotation
    // and reflection). A cycle laid out in any other order could not stay
    // planar, so this exercises the rotation system for r = 4.
    Cnf h = cnf(5, {{1, 2, 5}, {1, 2, 3}, {1, 3, 4}, {1, 4, 5}});
    auto gadget = planar3sat_to_system(h);
    REQUIRE(gadget.variable_cycle[0].size() == 4);
    CHECK(gadget.system.graph().max_degree() <= 3);
    CHECK(is_planar(gadget.system.graph()));
    CHECK(cnf_satisfiable(h));
    const auto fps = enumerate_fixed_points(gadget.system);
    CHECK_FALSE(fps.empty());
    // A planar assignment-consistent fixed point: clause vertices all 1 and
    // hub copies uniform.
    for (const Config& fp : fps) {
        for (int j = 1; j <= 4; ++j) REQUIRE(fp.bit(j));
        for (int copy : gadget.variable_cycle[0]) REQUIRE(fp.bit(copy) == fp.bit(gadget.variable_cycle[0][0]));
    }

    // The same wheel with the hub forced both ways is unsatisfiable.
    Cnf contradiction = cnf(5, {{1, 2, 5}, {1, 2, 3}, {1, 3, 4}, {-1, -1, -1}, {-2, -2, -2}, {-3, -3, -3}, {-4, -4, -4}, {-5, -5, -5},
                               {1, 1, 1}});
    if (is_planar(incidence_graph(contradiction))) {
        auto dead = planar3sat_to_system(contradiction);
        CHECK(enumerate_fixed_points(dead.system).empty());
    }
}
