#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "planarmaps/cvs.hpp"
#include "planarmaps/dynamics.hpp"
#include "planarmaps/tutte.hpp"

using namespace planarmaps;

TEST_SUITE("cvs_trees") {

TEST_CASE("tree counts are 3^n Catalan(n)") {
    CHECK(enumerate_trees(0).size() == 1);
    CHECK(enumerate_trees(0).front() == single_vertex_tree());
    CHECK(enumerate_trees(0).front().labels() == std::vector<int>{0});
    CHECK(enumerate_trees(1).size() == 3);
    CHECK(enumerate_trees(2).size() == 18);
    std::uint64_t pow3 = 1;
    for (int n = 0; n <= 5; ++n, pow3 *= 3) {
        CHECK(enumerate_trees(n).size() == pow3 * oracle::catalan(n));
        CHECK(count_trees(n) == pow3 * oracle::catalan(n));
    }
}

TEST_CASE("enumerated trees are valid, distinct and preorder numbered") {
    for (int n = 1; n <= 4; ++n) {
        std::set<LabelledTree> seen;
        for (const LabelledTree& t : enumerate_trees(n)) {
            CHECK_NOTHROW(validate_tree(t));
            CHECK(t.size() == n);
            CHECK(seen.insert(t).second);
            for (int v = 1; v < t.num_vertices(); ++v) {
                CHECK(t.parent[v] < v);
                CHECK(std::abs(t.increment[v]) <= 1);
                CHECK(t.labels()[v] == t.labels()[t.parent[v]] + t.increment[v]);
            }
            CHECK(tree_map(t).num_edges() == n);
            CHECK(topology(tree_map(t)).num_faces() == 1);
        }
    }
}

TEST_CASE("tree text format round trips") {
    for (const LabelledTree& t : enumerate_trees(3)) CHECK(decode_tree(encode_tree(t)) == t);
    LabelledTree c = decode_tree("(()()) / -+");
    CHECK(c.parent == std::vector<int>{-1, 0, 0});
    CHECK(c.increment == std::vector<int>{0, -1, 1});
    CHECK(encode_tree(c) == "(()()) / -+");
    CHECK_THROWS(decode_tree("(()"));
    CHECK_THROWS(decode_tree("(()) / x"));
}

TEST_CASE("leaf erasures") {
    CHECK(leaf_erasures(decode_tree("(()) / 0")).size() == 1);
    CHECK(leaf_erasures(decode_tree("(()) / 0")).front().tree == single_vertex_tree());
    auto path = leaf_erasures(decode_tree("((())) / +-"));
    REQUIRE(path.size() == 1);
    CHECK(path.front().leaf == 2);
    CHECK(leaf_erasures(decode_tree("(()()) / -+")).size() == 2);
    for (const LabelledTree& t : enumerate_trees(4))
        for (const LeafErasure& e : leaf_erasures(t)) {
            CHECK(e.tree.size() == 3);
            CHECK(e.leaf != 0);
        }
}

TEST_CASE("subtrees of the leftmost child") {
    LabelledTree t = decode_tree("((())()) / +-0");
    CHECK(encode_tree(left_subtree(t)) == "(()) / -");
    CHECK(encode_tree(right_subtree(t)) == "(()) / 0");
}

TEST_CASE("single-edge tree with increment -1") {
    LabelledTree t = decode_tree("(()) / -");
    std::set<MapCode> rootings;
    for (int eps : {1, -1}) {
        CvsImage img = cvs_forward(t, eps);
        CHECK(is_quadrangulation(img.pointed.quad));
        CHECK(quad_size(img.pointed.quad) == 1);
        rootings.insert(canonical_code(img.pointed.quad));
    }
    CHECK(rootings.size() == 2);
}

TEST_CASE("pointed images of LT_1 are the six pointed elements of Q_1") {
    std::set<std::pair<MapCode, int>> images;
    for (const LabelledTree& t : enumerate_trees(1))
        for (int eps : {1, -1}) {
            PointedQuad p = canonical_pointed(cvs_forward(t, eps).pointed);
            images.insert({canonical_code(p.quad), p.delta});
        }
    CHECK(images.size() == 6);
}

TEST_CASE("forward images and the label identity") {
    for (int n = 1; n <= 4; ++n)
        for (const LabelledTree& t : enumerate_trees(n))
            for (int eps : {1, -1}) {
                CvsImage img = cvs_forward(t, eps);
                const RootedMap& q = img.pointed.quad;
                Topology T = topology(q);
                CHECK(quad_size(q) == n);
                CHECK(T.num_vertices() == n + 2);
                int dv = T.vertex_of[img.pointed.delta];
                std::vector<int> dist = graph_distance(T, q, dv);
                std::vector<int> lab = t.labels();
                int root = T.vertex_of[img.vertex_dart[0]];
                for (int v = 0; v < t.num_vertices(); ++v)
                    CHECK(lab[v] == dist[T.vertex_of[img.vertex_dart[v]]] - dist[root]);
                // The root edge is incident to the tree root.
                int r0 = T.vertex_of[q.root], r1 = T.vertex_of[q.alpha[q.root]];
                CHECK((r0 == root || r1 == root));
            }
}

TEST_CASE("CVS round trips") {
    for (int n = 1; n <= 4; ++n) {
        std::size_t images = 0;
        for (const LabelledTree& t : enumerate_trees(n))
            for (int eps : {1, -1}) {
                CvsImage img = cvs_forward(t, eps);
                CvsPreimage back = cvs_inverse(img.pointed.quad, topology(img.pointed.quad).vertex_of[img.pointed.delta]);
                CHECK(back.tree == t);
                CHECK(back.eps == eps);
                ++images;
            }
        // Double counting of pointings: 2 |LT_n| = (n + 2) |Q_n|.
        CHECK(images == static_cast<std::size_t>(n + 2) * quad_space(n).size());
    }
    for (int n = 1; n <= 3; ++n)
        for (const RootedMap& q : quad_space(n).states()) {
            Topology T = topology(q);
            for (int v = 0; v < T.num_vertices(); ++v) {
                CvsPreimage pre = cvs_inverse(q, v);
                CHECK(canonical_pointed(cvs_forward(pre.tree, pre.eps).pointed) ==
                      canonical_pointed(PointedQuad{q, T.vertices[v].front()}));
            }
        }
    CHECK_THROWS_AS(cvs_inverse(quad_space(2).unrank(0), 9), std::out_of_range);
}

}  // TEST_SUITE
