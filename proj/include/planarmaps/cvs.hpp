#pragma once

#include <string>
#include <vector>

#include "planarmaps/map.hpp"

namespace planarmaps {

// Plane tree with vertices numbered in preorder (children visited left to
// right), so parent[v] < v and the root is 0. increment[v] is the label of v
// minus the label of its parent, in {-1, 0, 1}; increment[0] = 0.
struct LabelledTree {
    std::vector<int> parent{-1};
    std::vector<int> increment{0};

    int num_vertices() const { return static_cast<int>(parent.size()); }
    int size() const { return num_vertices() - 1; }  // number of edges
    std::vector<std::vector<int>> children() const;
    std::vector<int> labels() const;
    // One past the last vertex of the subtree of v (subtrees are preorder ranges).
    int subtree_end(int v) const;

    bool operator==(const LabelledTree& o) const { return parent == o.parent && increment == o.increment; }
    bool operator<(const LabelledTree& o) const {
        return parent != o.parent ? parent < o.parent : increment < o.increment;
    }
};

LabelledTree single_vertex_tree();
void validate_tree(const LabelledTree& t);

// All labelled trees with n edges: Catalan(n) shapes times 3^n increments.
std::vector<LabelledTree> enumerate_trees(int n, int limit = kDefaultLimit);
std::uint64_t count_trees(int n);

// Subtree of the leftmost child of the root, and what remains after removing
// it together with the edge to it. Both require at least one edge.
LabelledTree left_subtree(const LabelledTree& t);
LabelledTree right_subtree(const LabelledTree& t);

struct LeafErasure {
    int leaf;  // vertex of t that was erased
    LabelledTree tree;
};

// Erasures of non-root degree-1 vertices.
std::vector<LeafErasure> leaf_erasures(const LabelledTree& t);

// Text form: "(()()) / -+" with the shape as nested parentheses (the outer
// pair is the root) and increments over {-,0,+} in preorder of non-root vertices.
std::string encode_tree(const LabelledTree& t);
LabelledTree decode_tree(const std::string& s);

// The tree as a one-face rooted map. Non-root vertex v owns darts 2(v-1)
// (from its parent) and 2(v-1)+1 (towards its parent); the root dart points
// from the root to its leftmost child.
RootedMap tree_map(const LabelledTree& t);

struct PointedQuad {
    RootedMap quad;
    int delta = 0;  // a dart whose tail is the distinguished vertex

    bool operator==(const PointedQuad& o) const;
};

// Canonical darts, with delta the smallest dart at the distinguished vertex.
PointedQuad canonical_pointed(const PointedQuad& p);

struct CvsImage {
    PointedQuad pointed;
    std::vector<int> vertex_dart;  // tree vertex -> a quad dart leaving it
};

CvsImage cvs_forward(const LabelledTree& t, int eps);

struct CvsPreimage {
    LabelledTree tree;
    int eps = 1;
};

// delta is a vertex index of topology(q).
CvsPreimage cvs_inverse(const RootedMap& q, int delta);

}  // namespace planarmaps
