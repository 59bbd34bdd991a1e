#pragma once

#include <vector>

#include "planarmaps/map.hpp"

namespace planarmaps {

// Every face has degree 4 (n >= 1), or m is the single-edge sentinel.
bool is_quadrangulation(const RootedMap& m);
// Number of faces of a quadrangulation; 0 for the sentinel.
int quad_size(const RootedMap& q);

struct TutteImage {
    RootedMap quad;
    // Map dart -> index of the quad face (in topology(quad)) holding its edge.
    std::vector<int> dart_to_face;
    // Quad vertex index -> true for vertices coming from vertices of the map.
    std::vector<char> real_vertex;
};

// Quad dart 2d is the edge from the corner of d to the vertex drawn in the
// face right of d, oriented away from the corner; 2d+1 is its reverse.
TutteImage tutte_forward(const RootedMap& m);

// quad_to_map, when given, receives for every quad dart the map dart it
// becomes (darts leaving real vertices) or -1.
RootedMap tutte_inverse(const RootedMap& q, std::vector<int>* quad_to_map = nullptr);

// Vertex parity of q: true when the vertex is at even distance from the origin.
std::vector<char> real_vertices(const RootedMap& q);

// The dart of q's edge e that leaves its real endpoint, which is also the
// corner of tutte_inverse(q) associated with e.
int real_dart(const RootedMap& q, int e);

}  // namespace planarmaps
