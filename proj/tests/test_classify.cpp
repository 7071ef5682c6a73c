#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <peria/classify.hpp>

#include "util.hpp"

using namespace peria;

namespace {
PeriagroupPresentation load(const std::string& f) { return parse_presentation(read_data(f)); }
}

TEST_CASE("finiteness over the corpus") {
    CHECK(is_finite(load("i25.peria")).yes());
    CHECK(is_finite(load("i23.peria")).yes());
    CHECK(is_finite(load("z2xz3.peria")).yes());
    CHECK_FALSE(is_finite(load("dinf.peria")).yes());
    CHECK_FALSE(is_finite(load("pentagon.peria")).yes());
    CHECK_FALSE(is_finite(load("a2tilde.peria")).yes());
    CHECK_FALSE(is_finite(load("zxz.peria")).yes());
    CHECK_FALSE(is_finite(load("z2freez3.peria")).yes());
    CHECK_FALSE(is_finite(load("ex-periagroup.peria")).yes());

    // The free-product witness is reported for the infinite free product.
    auto r = is_finite(load("z2freez3.peria"));
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].find("free product") != std::string::npos);
}

TEST_CASE("element counts for small finite groups") {
    CHECK(detail::enumerate_elements(load("i25.peria")).size() == 10);
    CHECK(detail::enumerate_elements(load("i23.peria")).size() == 6);
    CHECK(detail::enumerate_elements(load("z2xz3.peria")).size() == 6);
}

TEST_CASE("contracting existence truth table") {
    auto dinf = contracting_exists(load("dinf.peria"));
    CHECK(dinf.yes());
    CHECK(dinf.rule.find("infinite dihedral") != std::string::npos);

    CHECK(contracting_exists(load("pentagon.peria")).yes());
    CHECK(contracting_exists(load("ex-periagroup.peria")).yes());
    CHECK(contracting_exists(load("ex-periagroup-c6.peria")).yes());
    CHECK(contracting_exists(load("z2freez3.peria")).yes());
    CHECK(contracting_exists(load("zfree2.peria")).yes());
    CHECK(contracting_exists(load("z.peria")).yes());

    auto c4 = contracting_exists(load("c4racg.peria"));
    CHECK(c4.no());
    CHECK(c4.rule.find("product") != std::string::npos);
    CHECK(contracting_exists(load("raag-path.peria")).no());
    CHECK(contracting_exists(load("a2tilde.peria")).no());
    CHECK(contracting_exists(load("zxz.peria")).no());
    CHECK(contracting_exists(load("i25.peria")).no());
    CHECK(contracting_exists(load("z2xz3.peria")).no());
}

TEST_CASE("reflection-group product criterion agrees with the general rule") {
    for (const char* f : {"dinf.peria", "i23.peria", "i25.peria", "a2tilde.peria",
                          "c4racg.peria", "pentagon.peria"}) {
        auto p = load(f);
        CAPTURE(f);
        CHECK(coxeter_contracting_direct(p).verdict == contracting_exists(p).verdict);
    }
}

TEST_CASE("element contracting verdicts") {
    auto pent = load("pentagon.peria");
    CHECK(element_contracting_gp(pent, parse_word(pent, "a b c d e")).yes());
    auto single = element_contracting_gp(pent, parse_word(pent, "a"));
    CHECK(single.no());
    CHECK(single.rule.find("finite-order") != std::string::npos);

    auto c4 = load("c4racg.peria");
    auto r = element_contracting_gp(c4, parse_word(c4, "a b c d"));
    CHECK(r.no());
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].find("*") != std::string::npos);

    auto zxz = load("zxz.peria");
    CHECK(element_contracting_gp(zxz, parse_word(zxz, "a b")).no());
    CHECK(element_contracting_gp(zxz, parse_word(zxz, "a")).no());

    auto f2 = load("zfree2.peria");
    CHECK(element_contracting_gp(f2, parse_word(f2, "a b")).yes());
    // Complete one-vertex support around an infinite direction with an
    // empty (hence finite) link.
    auto iso = element_contracting_gp(f2, parse_word(f2, "a^3"));
    CHECK(iso.yes());
    CHECK(iso.rule.find("link") != std::string::npos);

    auto z2z3 = load("z2freez3.peria");
    CHECK(element_contracting_gp(z2z3, parse_word(z2z3, "a b")).yes());

    auto raag = load("raag-path.peria");
    CHECK(element_contracting_gp(raag, parse_word(raag, "a c")).no());
    CHECK(element_contracting_gp(raag, parse_word(raag, "a b")).no());

    // Identity.
    CHECK(element_contracting_gp(pent, parse_word(pent, "a a")).no());

    // Non-graph-product input is rejected.
    CHECK_THROWS_AS(element_contracting_gp(load("i23.peria"), Word{}), domain_error);
}

TEST_CASE("element Morse verdicts") {
    auto f2 = load("zfree2.peria");
    CHECK(element_morse_gp(f2, parse_word(f2, "a b")).yes());

    auto zxz = load("zxz.peria");
    auto r = element_morse_gp(zxz, parse_word(zxz, "a b"));
    CHECK(r.no());
    CHECK(r.rule.find("join") != std::string::npos);

    auto iso = element_morse_gp(f2, parse_word(f2, "a^3"));
    CHECK(iso.yes());
    CHECK(iso.rule.find("<a>") != std::string::npos);

    auto pent = load("pentagon.peria");
    CHECK(element_morse_gp(pent, parse_word(pent, "a b c d e")).yes());
    CHECK(element_morse_gp(pent, parse_word(pent, "a")).no());

    auto raag = load("raag-path.peria");
    CHECK(element_morse_gp(raag, parse_word(raag, "a c")).no());
}

TEST_CASE("contracting elements are Morse") {
    std::mt19937 rng(20260824);
    for (const char* f : {"pentagon.peria", "c4racg.peria", "zfree2.peria", "zxz.peria",
                          "raag-path.peria", "z2freez3.peria", "z2xz3.peria"}) {
        auto p = load(f);
        CAPTURE(f);
        for (int trial = 0; trial < 40; ++trial) {
            Word w;
            int len = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < len; ++i) {
                int v = static_cast<int>(rng() % static_cast<unsigned>(p.n()));
                const auto& s = p.spec(v);
                Elem e = s.is_finite() ? 1 + static_cast<Elem>(rng() % (s.m - 1))
                                       : static_cast<Elem>(1 + rng() % 3) * (rng() % 2 ? 1 : -1);
                w.push_back({v, e});
            }
            auto c = element_contracting_gp(p, w);
            auto m = element_morse_gp(p, w);
            if (c.yes()) CHECK(m.yes());
            if (m.no()) CHECK_FALSE(c.yes());
        }
    }
}

TEST_CASE("acylindrical hyperbolicity truth table") {
    CHECK(acylindrically_hyperbolic(load("pentagon.peria")).yes());
    CHECK(acylindrically_hyperbolic(load("ex-periagroup.peria")).yes());
    CHECK(acylindrically_hyperbolic(load("ex-periagroup-c6.peria")).yes());
    CHECK(acylindrically_hyperbolic(load("z2freez3.peria")).yes());
    CHECK(acylindrically_hyperbolic(load("zfree2.peria")).yes());

    auto dinf = acylindrically_hyperbolic(load("dinf.peria"));
    CHECK(dinf.no());
    CHECK(dinf.rule.find("~A1") != std::string::npos);
    CHECK(acylindrically_hyperbolic(load("c4racg.peria")).no());
    CHECK(acylindrically_hyperbolic(load("raag-path.peria")).no());
    CHECK(acylindrically_hyperbolic(load("a2tilde.peria")).no());
    CHECK(acylindrically_hyperbolic(load("zxz.peria")).no());
    CHECK(acylindrically_hyperbolic(load("z.peria")).no());
    CHECK(acylindrically_hyperbolic(load("i25.peria")).no());
    CHECK(acylindrically_hyperbolic(load("z2xz3.peria")).no());

    // Opaque single-vertex verdicts are taken from the declared flag.
    auto yes = parse_presentation("vertex w opaque acylhyp=yes\n");
    CHECK(acylindrically_hyperbolic(yes).yes());
    auto unk = parse_presentation("vertex w opaque acylhyp=unknown\n");
    auto r = acylindrically_hyperbolic(unk);
    CHECK(r.verdict == TriBool::Unknown);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].find("missing fact") != std::string::npos);
}

TEST_CASE("classifier consistency across the corpus") {
    for (const char* f : {"dinf.peria", "i23.peria", "i25.peria", "a2tilde.peria",
                          "c4racg.peria", "pentagon.peria", "raag-path.peria", "z.peria",
                          "z2freez3.peria", "z2xz3.peria", "zfree2.peria", "zxz.peria",
                          "ex-periagroup-c6.peria"}) {
        auto p = load(f);
        CAPTURE(f);
        auto fin = is_finite(p);
        auto con = contracting_exists(p);
        auto acyl = acylindrically_hyperbolic(p);
        if (con.yes()) CHECK(fin.no());
        if (acyl.yes()) CHECK(con.yes());
    }
}

TEST_CASE("coset translates avoiding a parabolic") {
    auto i23 = load("i23.peria");
    auto r = disjoint_coset_exists(i23, {0}, {1});
    CHECK(r.exists);
    CHECK(r.verified);
    CHECK(r.checked == 6);
    CHECK(r.witness.size() == 2);   // the two-letter alternating path

    // Equal subsets: one generator outside them suffices.
    auto same = disjoint_coset_exists(i23, {0}, {0});
    CHECK(same.exists);
    CHECK(same.verified);
    CHECK(same.witness.size() == 1);

    CHECK_FALSE(disjoint_coset_exists(i23, {0, 1}, {1}).exists);

    // A1 x A1: each one-vertex factor sits inside one of the subsets.
    auto a1a1 = parse_presentation(
        "vertex s cyclic 2\nvertex t cyclic 2\nedge s t 2\n");
    CHECK_FALSE(disjoint_coset_exists(a1a1, {0}, {1}).exists);

    // Infinite reflection group: the witness exists but is not enumerable.
    auto pent = load("pentagon.peria");
    auto pr = disjoint_coset_exists(pent, {0, 1}, {2, 3});
    CHECK(pr.exists);
    CHECK_FALSE(pr.verified);
    CHECK_FALSE(pr.witness.empty());

    CHECK_THROWS_AS(disjoint_coset_exists(load("z2xz3.peria"), {}, {}), domain_error);
}

TEST_CASE("rotation-subgroup centraliser") {
    auto ex = centraliser_of_rot(load("ex-periagroup-c6.peria"));
    CHECK(ex.psi == std::vector<int>({0, 1}));
    CHECK(ex.psic == std::vector<int>({2, 3}));
    CHECK(ex.lambda.empty());
    CHECK(ex.lambda_finite);

    // No reflection part at all.
    auto pent = centraliser_of_rot(load("pentagon.peria"));
    CHECK(pent.psi.empty());
    CHECK(pent.lambda.empty());

    // A reflection factor commuting with the whole product part.
    auto p = parse_presentation(
        "vertex s cyclic 2\nvertex t cyclic 2\nvertex u cyclic 3\n"
        "edge s t 3\nedge u s 2\nedge u t 2\n");
    auto r = centraliser_of_rot(p);
    CHECK(r.psi == std::vector<int>({0, 1}));
    CHECK(r.psic == std::vector<int>({2}));
    CHECK(r.lambda == std::vector<int>({0, 1}));
    CHECK(r.lambda_finite);
}

TEST_CASE("fiber sizes and the crossing graph") {
    // Index of <s> in the order-6 reflection group.
    auto p = parse_presentation(
        "vertex s cyclic 2\nvertex t cyclic 2\nvertex u cyclic 3\n"
        "edge s t 3\nedge u s 2\n");
    auto f = omega_fibers(p);
    REQUIRE(f.psic == std::vector<int>({2}));
    CHECK(f.cpsi_finite);
    CHECK(f.cpsi_order == 6);
    REQUIRE(f.fiber.size() == 1);
    CHECK(f.fiber[0] == 3);
    CHECK(f.omega.n == 3);
    CHECK(f.omega.edge_count() == 0);

    // Two product vertices over the infinite-dihedral-free part of the
    // mixed example: one fiber per coset of <v2>, one per group element.
    auto ex = omega_fibers(load("ex-periagroup-c6.peria"));
    REQUIRE(ex.psic == std::vector<int>({2, 3}));
    CHECK(ex.cpsi_order == 10);
    REQUIRE(ex.fiber.size() == 2);
    CHECK(ex.fiber[0] == 5);
    CHECK(ex.fiber[1] == 10);
    REQUIRE(ex.bipartite_complete.count({2, 3}) == 1);
    CHECK_FALSE(ex.bipartite_complete.at({2, 3}));
    CHECK(ex.omega.n == 15);
    CHECK(ex.omega.edge_count() == 10);   // each singleton coset meets one <v2>-coset
    CHECK_FALSE(graph_is_join(ex.omega));

    // A reflection factor inside one link makes the two fibers span a
    // complete bipartite graph.
    auto q = parse_presentation(
        "vertex s cyclic 2\nvertex t cyclic 2\nvertex u cyclic 3\nvertex v cyclic 3\n"
        "edge s t 3\nedge u s 2\nedge u t 2\nedge u v 2\n");
    auto g = omega_fibers(q);
    REQUIRE(g.psic == std::vector<int>({2, 3}));
    REQUIRE(g.fiber.size() == 2);
    CHECK(g.fiber[0] == 1);
    CHECK(g.fiber[1] == 6);
    CHECK(g.bipartite_complete.at({2, 3}));
    CHECK(g.omega.edge_count() == 6);

    // Trivial reflection part: one fiber per product vertex, and the
    // crossing graph is the underlying graph itself.
    auto pent = omega_fibers(load("pentagon.peria"));
    CHECK(pent.fiber.size() == 5);
    for (auto& fib : pent.fiber) CHECK(fib == 1);
    CHECK(pent.omega.n == 5);
    CHECK(pent.omega.edge_count() == 5);
    CHECK_FALSE(graph_is_join(pent.omega));

    // Infinite reflection part: fibers are not computed.
    auto a2 = omega_fibers(load("a2tilde.peria"));
    CHECK_FALSE(a2.cpsi_finite);
    CHECK(a2.psic.empty());
}

TEST_CASE("join detection") {
    FiniteGraph k23(5);
    for (int a : {0, 1})
        for (int b : {2, 3, 4}) k23.add_edge(a, b);
    CHECK(graph_is_join(k23));
    // The 3-path is the join of its midpoint with its endpoints; the 4-path
    // is not a join (its complement is again a connected path).
    FiniteGraph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK(graph_is_join(p3));
    FiniteGraph p4(4);
    p4.add_edge(0, 1);
    p4.add_edge(1, 2);
    p4.add_edge(2, 3);
    CHECK_FALSE(graph_is_join(p4));
    CHECK_FALSE(graph_is_join(FiniteGraph(1)));
}
