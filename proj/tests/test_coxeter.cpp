#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <peria/coxeter.hpp>

#include "util.hpp"

using namespace peria;

namespace {

CoxeterDiagram random_diagram(int n, std::mt19937& rng) {
    static const int labels[] = {2, 2, 2, 3, 3, 4, 5, 6, kCoxInfinity};
    CoxeterDiagram d;
    d.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d.set_label(i, j, labels[rng() % 9]);
    return d;
}

bool diagram_irreducible(const CoxeterDiagram& d) {
    return irreducible_components(d).size() == 1;
}

void check_agreement(const CoxeterDiagram& d) {
    auto t = classify_irreducible(d);
    auto g = gram_signature(d);
    switch (t.tag) {
        case CoxeterTag::Spherical: CHECK(g == GramSignature::PositiveDefinite); break;
        case CoxeterTag::Affine: CHECK(g == GramSignature::SemidefiniteCorank1); break;
        case CoxeterTag::Other: CHECK(g == GramSignature::Indefinite); break;
    }
}

}

TEST_CASE("diagram parsing") {
    auto d = parse_coxeter("coxeter 3\nm 0 1 3\nm 1 2 inf\n");
    CHECK(d.n == 3);
    CHECK(d.label(0, 1) == 3);
    CHECK(d.label(1, 2) == kCoxInfinity);
    CHECK(d.label(0, 2) == 2);
    CHECK_THROWS_AS(parse_coxeter("coxeter 2\nm 0 0 3\n"), parse_error);
}

TEST_CASE("presentation adapter inverts non-edges to infinity") {
    auto dinf = coxeter_diagram_of(parse_presentation(read_data("dinf.peria")));
    CHECK(dinf.label(0, 1) == kCoxInfinity);
    auto t = classify_irreducible(dinf);
    CHECK(t.tag == CoxeterTag::Affine);
    CHECK(t.infinite_dihedral);

    auto i25 = coxeter_diagram_of(parse_presentation(read_data("i25.peria")));
    CHECK(i25.label(0, 1) == 5);
    CHECK(classify_irreducible(i25).tag == CoxeterTag::Spherical);

    // Non order-2 groups are rejected.
    CHECK_THROWS_AS(coxeter_diagram_of(parse_presentation(read_data("z2xz3.peria"))), domain_error);
}

TEST_CASE("irreducible components") {
    CoxeterDiagram d;   // A1 x A1
    d.n = 2;
    CHECK(irreducible_components(d).size() == 2);

    auto c4 = coxeter_diagram_of(parse_presentation(read_data("c4racg.peria")));
    auto comps = irreducible_components(c4);
    REQUIRE(comps.size() == 2);   // two infinite dihedral factors across the diagonals
    for (auto& c : comps) CHECK(classify_irreducible(c.diagram).infinite_dihedral);

    // A3 disjoint from ~A2.
    CoxeterDiagram mix;
    mix.n = 6;
    mix.set_label(0, 1, 3);
    mix.set_label(1, 2, 3);
    mix.set_label(3, 4, 3);
    mix.set_label(4, 5, 3);
    mix.set_label(3, 5, 3);
    auto mc = irreducible_components(mix);
    REQUIRE(mc.size() == 2);
    CHECK(classify_irreducible(mc[0].diagram).family == "A3");
    CHECK(classify_irreducible(mc[1].diagram).family == "~A2");
}

TEST_CASE("classification of the named families") {
    using namespace peria::detail;
    for (int n = 1; n <= 9; ++n)
        for (auto& [name, d] : spherical_family_diagrams(n)) {
            auto t = classify_irreducible(d);
            CHECK(t.tag == CoxeterTag::Spherical);
            CHECK(gram_signature(d) == GramSignature::PositiveDefinite);
        }
    for (int n = 2; n <= 9; ++n)
        for (auto& [name, d] : affine_family_diagrams(n)) {
            auto t = classify_irreducible(d);
            CHECK(t.tag == CoxeterTag::Affine);
            CHECK(t.family == name);
            CHECK(gram_signature(d) == GramSignature::SemidefiniteCorank1);
        }
}

TEST_CASE("desk oracles") {
    auto a2t = coxeter_diagram_of(parse_presentation(read_data("a2tilde.peria")));
    auto t = classify_irreducible(a2t);
    CHECK(t.tag == CoxeterTag::Affine);
    CHECK(t.family == "~A2");

    CoxeterDiagram i27;
    i27.n = 2;
    i27.set_label(0, 1, 7);
    CHECK(classify_irreducible(i27).tag == CoxeterTag::Spherical);
    CHECK(classify_irreducible(i27).family == "I2(7)");
    CHECK(gram_signature(i27) == GramSignature::PositiveDefinite);   // interval path

    auto pent = coxeter_diagram_of(parse_presentation(read_data("pentagon.peria")));
    REQUIRE(irreducible_components(pent).size() == 1);
    CHECK(classify_irreducible(pent).tag == CoxeterTag::Other);
    CHECK(gram_signature(pent) == GramSignature::Indefinite);

    // All-infinity triangle is indefinite.
    CoxeterDiagram tri;
    tri.n = 3;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) tri.set_label(i, j, kCoxInfinity);
    CHECK(gram_signature(tri) == GramSignature::Indefinite);
}

TEST_CASE("interval arithmetic certifies nearly singular signs") {
    // Path with labels 7, 3: the Gram determinant is about -0.06.
    CoxeterDiagram d;
    d.n = 3;
    d.set_label(0, 1, 7);
    d.set_label(1, 2, 3);
    CHECK(gram_signature(d) == GramSignature::Indefinite);
    CHECK(classify_irreducible(d).tag == CoxeterTag::Other);
}

TEST_CASE("classification is isomorphism invariant") {
    std::mt19937 rng(112233);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        auto d = random_diagram(n, rng);
        if (!diagram_irreducible(d)) continue;
        auto base = classify_irreducible(d);
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CoxeterDiagram e;
        e.n = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                e.set_label(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)], d.label(i, j));
        auto t = classify_irreducible(e);
        CHECK(t.tag == base.tag);
        CHECK(t.family == base.family);
    }
}

TEST_CASE("table and Gram oracles agree: exhaustive small ranks") {
    static const int labels[] = {2, 3, 4, 5, 6, kCoxInfinity};
    // Rank 2 and 3: every diagram.
    for (int l : labels) {
        CoxeterDiagram d;
        d.n = 2;
        d.set_label(0, 1, l);
        if (diagram_irreducible(d)) check_agreement(d);
    }
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            for (int c = 0; c < 6; ++c) {
                CoxeterDiagram d;
                d.n = 3;
                d.set_label(0, 1, labels[a]);
                d.set_label(0, 2, labels[b]);
                d.set_label(1, 2, labels[c]);
                if (diagram_irreducible(d)) check_agreement(d);
            }
}

TEST_CASE("table and Gram oracles agree: exhaustive rank 4") {
    static const int labels[] = {2, 3, 4, 5, 6, kCoxInfinity};
    int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int code = 0; code < 6 * 6 * 6 * 6 * 6 * 6; ++code) {
        int c = code;
        CoxeterDiagram d;
        d.n = 4;
        for (auto& pr : pairs) {
            d.set_label(pr[0], pr[1], labels[c % 6]);
            c /= 6;
        }
        if (diagram_irreducible(d)) check_agreement(d);
    }
}

TEST_CASE("table and Gram oracles agree: sampled ranks 5 and 6") {
    std::mt19937 rng(58008);
    static const int labels[] = {2, 3, 4, 5, 6, kCoxInfinity};
    for (int n = 5; n <= 6; ++n) {
        int tested = 0;
        while (tested < 1500) {
            CoxeterDiagram d;
            d.n = n;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) d.set_label(i, j, labels[rng() % 6]);
            if (!diagram_irreducible(d)) continue;
            check_agreement(d);
            ++tested;
        }
    }
}
