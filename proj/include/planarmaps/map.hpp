#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace planarmaps {

// Darts are integers in [0, 2E). alpha pairs the two darts of an edge,
// sigma turns counterclockwise around the tail vertex. The face to the right
// of dart d is the orbit of d under phi(d) = sigma(alpha(d)); walking that
// orbit lists the corners of the face in clockwise order. The corner of d
// sits at the tail of d, between sigma^-1(d) and d.
struct RootedMap {
    std::vector<int> alpha;
    std::vector<int> sigma;
    int root = 0;

    int num_darts() const { return static_cast<int>(alpha.size()); }
    int num_edges() const { return num_darts() / 2; }
    int phi(int d) const { return sigma[alpha[d]]; }

    bool operator==(const RootedMap& o) const {
        return alpha == o.alpha && sigma == o.sigma && root == o.root;
    }
};

enum class MapErrorKind { NotPermutation, NotInvolution, Disconnected, NonPlanar, BadRoot };

class MapError : public std::runtime_error {
public:
    MapError(MapErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    MapErrorKind kind() const { return kind_; }

private:
    MapErrorKind kind_;
};

class LimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws MapError when any structural invariant fails.
void validate(const RootedMap& m);
RootedMap build_map(std::vector<int> alpha, std::vector<int> sigma, int root);

struct Topology {
    std::vector<int> vertex_of;               // dart -> vertex index
    std::vector<int> face_of;                 // dart -> face index (face right of dart)
    std::vector<std::vector<int>> vertices;   // darts around each vertex, sigma order
    std::vector<std::vector<int>> faces;      // darts along each face, phi order
    int origin = 0;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }
    int vertex_degree(int v) const { return static_cast<int>(vertices[v].size()); }
    int face_degree(int f) const { return static_cast<int>(faces[f].size()); }
};

// Vertex and face indices follow first appearance in dart order, so they are
// stable for a fixed dart labelling.
Topology topology(const RootedMap& m);

std::vector<int> graph_distance(const RootedMap& m, int vertex);
std::vector<int> graph_distance(const Topology& t, const RootedMap& m, int vertex);

using MapCode = std::vector<int>;

// Breadth-first labelling from the root dart; equal codes iff equal rooted maps.
MapCode canonical_code(const RootedMap& m);
// The map relabelled so that dart i is the i-th dart reached by the traversal.
RootedMap canonical_form(const RootedMap& m);
// The permutation used by canonical_form: new label of dart d.
std::vector<int> canonical_relabelling(const RootedMap& m);
RootedMap decode_code(const MapCode& code);

struct MapCodeHash {
    std::size_t operator()(const MapCode& c) const;
};

bool same_map(const RootedMap& a, const RootedMap& b);

RootedMap single_edge_map();
RootedMap loop_map();
RootedMap m0(int n);

// Relabels darts by a permutation p (new label of dart d is p[d]).
RootedMap relabel(const RootedMap& m, const std::vector<int>& p);

std::uint64_t count_maps(int n);  // 2 * 3^n * (2n)! / (n! (n+2)!)

// Sorted, deduplicated list of rooted maps with rank/unrank.
class StateSpace {
public:
    StateSpace() = default;
    explicit StateSpace(std::vector<RootedMap> states);

    std::size_t size() const { return states_.size(); }
    const RootedMap& unrank(std::size_t i) const;
    std::size_t rank(const RootedMap& m) const;
    bool contains(const RootedMap& m) const;
    std::size_t rank_of_code(const MapCode& c) const;
    const std::vector<RootedMap>& states() const { return states_; }

private:
    std::vector<RootedMap> states_;
    std::vector<MapCode> codes_;
    std::unordered_map<MapCode, std::size_t, MapCodeHash> index_;
};

constexpr int kDefaultLimit = 6;

// Closure of the edge-rotation moves from m0(n), sorted by code.
std::vector<RootedMap> enumerate_maps(int n, int limit = kDefaultLimit);
const StateSpace& map_space(int n, int limit = kDefaultLimit);

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string encode_map(const RootedMap& m);
RootedMap decode_map(const std::string& text);

}  // namespace planarmaps
