#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "planarmaps/map.hpp"
#include "planarmaps/rational.hpp"

namespace planarmaps {

enum class Sign : int { Minus = -1, Eq = 0, Plus = 1 };

inline Sign negate(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
char sign_char(Sign s);

class MoveError : public std::runtime_error {
public:
    enum class Kind { RootCorner, InvalidCorner, RootEdgeForbidden, InvalidEdge };
    MoveError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct RotationMove {
    int corner;
    Sign sign;
};

// Edge rotation m^{c,s}. The corner c is given by its dart.
RootedMap rotate(const RootedMap& m, int c, Sign s, bool check = false);

// Edge flip q^{e,s}; e is either dart of the edge. Dart labels are preserved,
// so the flipped edge keeps the darts of e.
RootedMap flip(const RootedMap& q, int e, Sign s, bool allow_root = false);

bool is_root_edge(const RootedMap& m, int d);
// True when both sides of the edge of d lie in the same face.
bool is_internal_edge(const RootedMap& q, int d);

// One dart per edge (the smaller label), in increasing order.
std::vector<int> edge_representatives(const RootedMap& m);

// Closure of non-root flips from the image of m0(n) under the Tutte map.
std::vector<RootedMap> enumerate_quads(int n, int limit = kDefaultLimit);
const StateSpace& quad_space(int n, int limit = kDefaultLimit);
RootedMap sentinel_quad();  // the single-edge map standing for Q_0

enum class ChainKind { Rotation, FlipNoRoot, FlipWithRoot };

const char* chain_name(ChainKind k);
ChainKind parse_chain(const std::string& s);
const StateSpace& state_space(ChainKind k, int n, int limit = kDefaultLimit);

// Exact row of the transition matrix as rank -> probability.
std::map<std::size_t, Rational> transition_row(ChainKind kind, const StateSpace& space, std::size_t x);
Rational transition_probability(ChainKind kind, const RootedMap& x, const RootedMap& y);

// Every move (with multiplicity) available from x: the successor state of
// each choice. Each entry has probability 1/moves.size().
std::vector<RootedMap> move_targets(ChainKind kind, const RootedMap& x);

// Portable generator: mt19937_64 with rejection sampling for bounded integers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t next() { return gen_(); }
    std::uint64_t uniform(std::uint64_t bound);  // uniform in [0, bound)
    double uniform01();                          // uniform in [0, 1)
    Rng split();

private:
    std::mt19937_64 gen_;
};

RootedMap step(ChainKind kind, const RootedMap& x, Rng& rng);

// Rotations that carry m to m0(n); applying them in order reaches m0(n).
std::vector<RotationMove> normalize_to_m0(const RootedMap& m);

}  // namespace planarmaps
