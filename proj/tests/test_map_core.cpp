#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "planarmaps/dynamics.hpp"
#include "planarmaps/map.hpp"
#include "planarmaps/tutte.hpp"

using namespace planarmaps;

TEST_SUITE("map_core") {

TEST_CASE("single-edge and loop maps") {
    RootedMap e = build_map({1, 0}, {0, 1}, 0);
    Topology te = topology(e);
    CHECK(te.num_vertices() == 2);
    CHECK(te.num_faces() == 1);
    CHECK(te.face_degree(0) == 2);
    CHECK(graph_distance(e, te.origin) == std::vector<int>{0, 1});

    RootedMap l = build_map({1, 0}, {1, 0}, 0);
    Topology tl = topology(l);
    CHECK(tl.num_vertices() == 1);
    CHECK(tl.vertex_degree(0) == 2);
    REQUIRE(tl.num_faces() == 2);
    CHECK(tl.face_degree(0) == 1);
    CHECK(tl.face_degree(1) == 1);
    CHECK(graph_distance(l, 0) == std::vector<int>{0});

    CHECK(canonical_code(e) != canonical_code(l));
    CHECK(same_map(e, single_edge_map()));
    CHECK(same_map(l, loop_map()));
}

TEST_CASE("build_map rejects broken inputs") {
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const MapError& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    CHECK(kind_of([] { build_map({0, 1}, {0, 1}, 0); }) == static_cast<int>(MapErrorKind::NotInvolution));
    CHECK(kind_of([] { build_map({1, 0, 3, 2}, {0, 1, 2, 3}, 0); }) == static_cast<int>(MapErrorKind::Disconnected));
    CHECK(kind_of([] { build_map({1, 0, 3, 2}, {2, 3, 1, 0}, 0); }) == static_cast<int>(MapErrorKind::NonPlanar));
    CHECK(kind_of([] { build_map({1, 0}, {0, 1}, 2); }) == static_cast<int>(MapErrorKind::BadRoot));
    CHECK(kind_of([] { build_map({1, 0}, {0, 0}, 0); }) == static_cast<int>(MapErrorKind::NotPermutation));
}

TEST_CASE("m0 has one vertex, n loops and n + 1 faces") {
    for (int n = 1; n <= 4; ++n) {
        RootedMap m = m0(n);
        CHECK_NOTHROW(validate(m));
        Topology t = topology(m);
        CHECK(t.num_vertices() == 1);
        CHECK(m.num_edges() == n);
        CHECK(t.num_faces() == n + 1);
        CHECK(oracle::euler(m) == 2);
    }
    // The root corner lies inside the innermost loop, a face of degree 1.
    RootedMap m = m0(3);
    CHECK(topology(m).face_degree(topology(m).face_of[m.root]) == 1);
}

TEST_CASE("enumeration counts match the closed form") {
    for (int n = 1; n <= 5; ++n) {
        CHECK(map_space(n).size() == oracle::rooted_maps(n));
        CHECK(count_maps(n) == oracle::rooted_maps(n));
    }
    CHECK(oracle::rooted_maps(5) == 2916);
    CHECK_THROWS_AS(enumerate_maps(7), LimitExceeded);
}

TEST_CASE("every enumerated map is a valid planar map") {
    for (int n = 1; n <= 4; ++n)
        for (const RootedMap& m : map_space(n).states()) {
            CHECK_NOTHROW(validate(m));
            CHECK(oracle::euler(m) == 2);
        }
}

TEST_CASE("enumeration is sorted by code and duplicate free") {
    for (int n = 1; n <= 4; ++n) {
        const auto& s = map_space(n).states();
        for (std::size_t i = 1; i < s.size(); ++i) CHECK(canonical_code(s[i - 1]) < canonical_code(s[i]));
    }
}

TEST_CASE("rank and unrank are inverse") {
    const StateSpace& s = map_space(2);
    std::set<std::size_t> ranks;
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.rank(s.unrank(i)) == i);
        ranks.insert(s.rank(s.unrank(i)));
    }
    CHECK(ranks.size() == 9);
    CHECK(*ranks.rbegin() == 8);
    CHECK(s.rank(m0(2)) == 7);
    CHECK_THROWS(s.unrank(9));
}

TEST_CASE("canonical code ignores dart labels") {
    std::mt19937_64 gen(11);
    const StateSpace& s = map_space(4);
    for (int k = 0; k < 100; ++k) {
        const RootedMap& m = s.unrank(gen() % s.size());
        std::vector<int> p(m.num_darts());
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), gen);
        RootedMap r = relabel(m, p);
        CHECK_NOTHROW(validate(r));
        CHECK(canonical_code(r) == canonical_code(m));
        CHECK(canonical_code(decode_code(canonical_code(r))) == canonical_code(m));
    }
}

TEST_CASE("canonical form relabelling is the identity on canonical forms") {
    for (const RootedMap& m : map_space(3).states()) {
        RootedMap c = canonical_form(m);
        std::vector<int> p = canonical_relabelling(c);
        for (int d = 0; d < c.num_darts(); ++d) CHECK(p[d] == d);
        CHECK(canonical_form(c) == c);
    }
}

TEST_CASE("text encoding round trips") {
    for (const RootedMap& m : map_space(3).states()) {
        std::string text = encode_map(m);
        CHECK(decode_map(text) == m);
        CHECK(encode_map(m) == text);
    }
    CHECK(encode_map(single_edge_map()) == "n=1 alpha=1 0 sigma=0 1 root=0");
    CHECK_THROWS_AS(decode_map("n=1 alpha=0 1 sigma=0 1 root=0"), MapError);
    CHECK_THROWS_AS(decode_map("alpha=1 0"), ParseError);
    CHECK_THROWS_AS(decode_map("n=1 alpha=1 x sigma=0 1 root=0"), ParseError);
}

TEST_CASE("distances in quadrangulations change by one along every edge") {
    for (int n = 1; n <= 3; ++n)
        for (const RootedMap& q : quad_space(n).states()) {
            Topology t = topology(q);
            for (int v = 0; v < t.num_vertices(); ++v) {
                std::vector<int> d = graph_distance(t, q, v);
                for (int x = 0; x < q.num_darts(); ++x) {
                    int a = d[t.vertex_of[x]], b = d[t.vertex_of[q.alpha[x]]];
                    CHECK(std::abs(a - b) == 1);
                }
                for (int u = 0; u < t.num_vertices(); ++u) {
                    std::vector<int> du = graph_distance(t, q, u);
                    for (int w = 0; w < t.num_vertices(); ++w) CHECK(d[w] <= d[u] + du[w]);
                }
            }
        }
}

TEST_CASE("quadrangulations have 2n edges and n + 2 vertices") {
    for (int n = 1; n <= 4; ++n)
        for (const RootedMap& q : quad_space(n).states()) {
            Topology t = topology(q);
            CHECK(q.num_edges() == 2 * n);
            CHECK(t.num_vertices() == n + 2);
            CHECK(t.num_faces() == n);
            for (int f = 0; f < t.num_faces(); ++f) CHECK(t.face_degree(f) == 4);
        }
}

}  // TEST_SUITE
