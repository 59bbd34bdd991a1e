#include <doctest.h>

#include <set>

#include "planarmaps/dynamics.hpp"
#include "planarmaps/tutte.hpp"

using namespace planarmaps;

TEST_SUITE("tutte") {

TEST_CASE("one-edge maps go to the two elements of Q_1") {
    RootedMap a = tutte_forward(single_edge_map()).quad;
    RootedMap b = tutte_forward(loop_map()).quad;
    CHECK(is_quadrangulation(a));
    CHECK(is_quadrangulation(b));
    CHECK_FALSE(same_map(a, b));
    // The single edge becomes the face whose contour is a path of two edges
    // with the root edge pendant at the origin.
    Topology ta = topology(a);
    CHECK(ta.num_vertices() == 3);
    CHECK(ta.vertex_degree(ta.origin) == 1);
    Topology tb = topology(b);
    CHECK(tb.vertex_degree(tb.origin) == 2);
    CHECK(encode_map(a) == "n=2 alpha=1 0 3 2 sigma=0 3 2 1 root=0");
}

TEST_CASE("forward images: vertex counts, parity and corners") {
    for (int n = 1; n <= 3; ++n)
        for (const RootedMap& m : map_space(n).states()) {
            TutteImage img = tutte_forward(m);
            Topology tm = topology(m), tq = topology(img.quad);
            CHECK(quad_size(img.quad) == n);
            CHECK(tq.num_vertices() == tm.num_vertices() + tm.num_faces());
            CHECK(tq.num_vertices() == n + 2);
            // Real vertices are exactly those at even distance from the origin.
            std::vector<int> dist = graph_distance(tq, img.quad, tq.origin);
            std::vector<char> parity = real_vertices(img.quad);
            int real = 0;
            for (int v = 0; v < tq.num_vertices(); ++v) {
                CHECK(static_cast<bool>(img.real_vertex[v]) == (dist[v] % 2 == 0));
                CHECK(parity[v] == img.real_vertex[v]);
                real += img.real_vertex[v];
            }
            CHECK(real == tm.num_vertices());
            // Every face has two real and two face corners, alternating.
            for (const auto& face : tq.faces) {
                REQUIRE(face.size() == 4);
                for (int i = 0; i < 4; ++i)
                    CHECK(img.real_vertex[tq.vertex_of[face[i]]] != img.real_vertex[tq.vertex_of[face[(i + 1) % 4]]]);
            }
        }
}

TEST_CASE("edge to face correspondence is a bijection") {
    for (int n = 1; n <= 4; ++n)
        for (const RootedMap& m : map_space(n).states()) {
            TutteImage img = tutte_forward(m);
            std::set<int> faces;
            for (int d = 0; d < m.num_darts(); ++d) {
                CHECK(img.dart_to_face[d] == img.dart_to_face[m.alpha[d]]);
                faces.insert(img.dart_to_face[d]);
            }
            CHECK(faces.size() == static_cast<std::size_t>(n));
        }
}

TEST_CASE("round trips on M_n and Q_n") {
    for (int n = 1; n <= 4; ++n) {
        std::set<std::size_t> image;
        for (const RootedMap& m : map_space(n).states()) {
            RootedMap q = tutte_forward(m).quad;
            CHECK(canonical_code(tutte_inverse(q)) == canonical_code(m));
            image.insert(quad_space(n).rank(q));
        }
        CHECK(image.size() == quad_space(n).size());
        for (const RootedMap& q : quad_space(n).states())
            CHECK(canonical_code(tutte_forward(tutte_inverse(q)).quad) == canonical_code(q));
    }
}

TEST_CASE("inverse reports the map dart of every real quad dart") {
    for (const RootedMap& q : quad_space(3).states()) {
        std::vector<int> to_map;
        RootedMap m = tutte_inverse(q, &to_map);
        std::vector<char> real = real_vertices(q);
        Topology t = topology(q);
        std::set<int> hit;
        for (int d = 0; d < q.num_darts(); ++d) {
            CHECK((to_map[d] >= 0) == static_cast<bool>(real[t.vertex_of[d]]));
            if (to_map[d] >= 0) hit.insert(to_map[d]);
        }
        CHECK(hit.size() == static_cast<std::size_t>(m.num_darts()));
        for (int e : edge_representatives(q)) {
            int r = real_dart(q, e);
            CHECK((r == e || r == q.alpha[e]));
            CHECK(real[t.vertex_of[r]]);
        }
    }
}

}  // TEST_SUITE
