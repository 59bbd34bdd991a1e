#include "planarmaps/dynamics.hpp"

#include <deque>
#include <mutex>
#include <unordered_set>

#include "planarmaps/tutte.hpp"
#include "surgery.hpp"

namespace planarmaps {

char sign_char(Sign s) {
    switch (s) {
        case Sign::Plus: return '+';
        case Sign::Minus: return '-';
        default: return '=';
    }
}

RootedMap rotate(const RootedMap& m, int c, Sign s, bool check) {
    if (c < 0 || c >= m.num_darts()) throw MoveError(MoveError::Kind::InvalidCorner, "corner out of range");
    if (c == m.root) throw MoveError(MoveError::Kind::RootCorner, "cannot rotate at the root corner");
    if (s == Sign::Eq) return m;

    detail::Surgery g(m);
    const int r = m.root;
    int target = r;
    int killed;
    if (g.phi(c) == c) {
        // Face of degree 1: c is a loop. The new edge hangs a pendant vertex
        // in the corner of c and the loop disappears, whatever the sign.
        int p = g.new_edge();
        g.insert_before(c, p);
        killed = c;
    } else {
        int a = g.phi_inv(c);
        int p = g.new_edge();
        int pb = g.alpha(p);
        g.insert_after(g.alpha(c), pb);
        g.insert_before(a, p);
        killed = s == Sign::Plus ? c : a;
        if (r == a) target = p;
    }
    const int k1 = killed, k2 = g.alpha(killed);
    while (target == k1 || target == k2) target = g.sigma(target);
    g.kill_edge(killed);
    g.set_root(target);
    RootedMap out = g.compact();
    if (check) validate(out);
    return out;
}

bool is_root_edge(const RootedMap& m, int d) { return d == m.root || m.alpha[d] == m.root; }

bool is_internal_edge(const RootedMap& q, int d) {
    int x = q.phi(d);
    while (x != d) {
        if (x == q.alpha[d]) return true;
        x = q.phi(x);
    }
    return false;
}

std::vector<int> edge_representatives(const RootedMap& m) {
    std::vector<int> out;
    for (int d = 0; d < m.num_darts(); ++d)
        if (d < m.alpha[d]) out.push_back(d);
    return out;
}

RootedMap flip(const RootedMap& q, int e, Sign s, bool allow_root) {
    if (e < 0 || e >= q.num_darts()) throw MoveError(MoveError::Kind::InvalidEdge, "edge out of range");
    if (!allow_root && is_root_edge(q, e))
        throw MoveError(MoveError::Kind::RootEdgeForbidden, "root edge flips are not allowed in this chain");
    if (s == Sign::Eq) return q;

    detail::Surgery g(q);
    int x = e;
    if (is_internal_edge(q, x)) {
        // Degenerate face: orient x towards its degree-1 endpoint, then move
        // its other end to the remaining vertex of the face.
        if (g.sigma(g.alpha(x)) != g.alpha(x)) x = g.alpha(x);
        if (g.sigma(g.alpha(x)) != g.alpha(x))
            throw std::logic_error("flip: internal edge without a pendant endpoint");
        int y = g.phi(g.alpha(x));
        int z = g.phi(y);
        g.detach(x);
        g.insert_before(z, x);
        return g.compact();
    }
    int ax = g.alpha(x);
    int r1 = g.phi(x), l1 = g.phi(ax);
    if (s == Sign::Plus) {
        int r2 = g.phi(r1), l2 = g.phi(l1);
        g.detach(x);
        g.detach(ax);
        g.insert_before(l2, x);
        g.insert_before(r2, ax);
    } else {
        int r3 = g.phi_inv(x), l3 = g.phi_inv(ax);
        g.detach(x);
        g.detach(ax);
        g.insert_before(r3, x);
        g.insert_before(l3, ax);
    }
    return g.compact();
}

namespace {

template <class Moves>
std::vector<RootedMap> closure(const RootedMap& start, Moves moves) {
    std::unordered_set<MapCode, MapCodeHash> seen{canonical_code(start)};
    std::vector<RootedMap> out{canonical_form(start)};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (RootedMap& y : moves(out[i])) {
            if (seen.insert(canonical_code(y)).second) out.push_back(canonical_form(y));
        }
    }
    return out;
}

std::vector<RootedMap> rotation_neighbours(const RootedMap& m) {
    std::vector<RootedMap> out;
    for (int c = 0; c < m.num_darts(); ++c) {
        if (c == m.root) continue;
        out.push_back(rotate(m, c, Sign::Plus));
        out.push_back(rotate(m, c, Sign::Minus));
    }
    return out;
}

std::vector<RootedMap> flip_neighbours(const RootedMap& q) {
    std::vector<RootedMap> out;
    for (int e : edge_representatives(q)) {
        if (is_root_edge(q, e)) continue;
        out.push_back(flip(q, e, Sign::Plus));
        out.push_back(flip(q, e, Sign::Minus));
    }
    return out;
}

void check_limit(int n, int limit) {
    if (n > limit)
        throw LimitExceeded("n = " + std::to_string(n) + " exceeds the limit " + std::to_string(limit));
}

template <class Build>
const StateSpace& cached(std::map<int, StateSpace>& cache, std::mutex& mu, int n, Build build) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, StateSpace(build())).first;
    return it->second;
}

}  // namespace

std::vector<RootedMap> enumerate_maps(int n, int limit) {
    check_limit(n, limit);
    if (n < 1) throw std::invalid_argument("enumerate_maps needs n >= 1");
    return StateSpace(closure(m0(n), rotation_neighbours)).states();
}

const StateSpace& map_space(int n, int limit) {
    check_limit(n, limit);
    static std::map<int, StateSpace> cache;
    static std::mutex mu;
    return cached(cache, mu, n, [n, limit] { return enumerate_maps(n, limit); });
}

RootedMap sentinel_quad() { return single_edge_map(); }

std::vector<RootedMap> enumerate_quads(int n, int limit) {
    check_limit(n, limit);
    if (n < 0) throw std::invalid_argument("enumerate_quads needs n >= 0");
    if (n == 0) return {sentinel_quad()};
    return StateSpace(closure(tutte_forward(m0(n)).quad, flip_neighbours)).states();
}

const StateSpace& quad_space(int n, int limit) {
    check_limit(n, limit);
    static std::map<int, StateSpace> cache;
    static std::mutex mu;
    return cached(cache, mu, n, [n, limit] { return enumerate_quads(n, limit); });
}

const char* chain_name(ChainKind k) {
    switch (k) {
        case ChainKind::Rotation: return "rotation";
        case ChainKind::FlipNoRoot: return "flip-noroot";
        default: return "flip-root";
    }
}

ChainKind parse_chain(const std::string& s) {
    if (s == "rotation") return ChainKind::Rotation;
    if (s == "flip-noroot") return ChainKind::FlipNoRoot;
    if (s == "flip-root") return ChainKind::FlipWithRoot;
    throw std::invalid_argument("unknown chain '" + s + "'");
}

const StateSpace& state_space(ChainKind k, int n, int limit) {
    return k == ChainKind::Rotation ? map_space(n, limit) : quad_space(n, limit);
}

std::vector<RootedMap> move_targets(ChainKind kind, const RootedMap& x) {
    std::vector<RootedMap> out;
    if (kind == ChainKind::Rotation) {
        for (int c = 0; c < x.num_darts(); ++c) {
            if (c == x.root) continue;
            out.push_back(rotate(x, c, Sign::Plus));
            out.push_back(rotate(x, c, Sign::Minus));
            out.push_back(x);
        }
        return out;
    }
    const bool allow_root = kind == ChainKind::FlipWithRoot;
    for (int e : edge_representatives(x)) {
        if (!allow_root && is_root_edge(x, e)) continue;
        out.push_back(flip(x, e, Sign::Plus, allow_root));
        out.push_back(flip(x, e, Sign::Minus, allow_root));
        out.push_back(x);
    }
    return out;
}

std::map<std::size_t, Rational> transition_row(ChainKind kind, const StateSpace& space, std::size_t x) {
    std::vector<RootedMap> targets = move_targets(kind, space.unrank(x));
    std::map<std::size_t, Rational> row;
    const Rational unit(1, static_cast<long>(targets.size()));
    for (const RootedMap& y : targets) row[space.rank(y)] += unit;
    return row;
}

Rational transition_probability(ChainKind kind, const RootedMap& x, const RootedMap& y) {
    std::vector<RootedMap> targets = move_targets(kind, x);
    MapCode cy = canonical_code(y);
    long hits = 0;
    for (const RootedMap& z : targets)
        if (canonical_code(z) == cy) ++hits;
    return Rational(hits, static_cast<long>(targets.size()));
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform: empty range");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = gen_();
        if (r >= threshold) return r % bound;
    }
}

double Rng::uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

Rng Rng::split() { return Rng(gen_() ^ 0x9e3779b97f4a7c15ULL); }

RootedMap step(ChainKind kind, const RootedMap& x, Rng& rng) {
    if (kind == ChainKind::Rotation) {
        int c = static_cast<int>(rng.uniform(x.num_darts() - 1));
        if (c >= x.root) ++c;
        Sign s = static_cast<Sign>(static_cast<int>(rng.uniform(3)) - 1);
        return rotate(x, c, s);
    }
    const bool allow_root = kind == ChainKind::FlipWithRoot;
    std::vector<int> edges;
    for (int e : edge_representatives(x))
        if (allow_root || !is_root_edge(x, e)) edges.push_back(e);
    int e = edges[rng.uniform(edges.size())];
    Sign s = static_cast<Sign>(static_cast<int>(rng.uniform(3)) - 1);
    return flip(x, e, s, allow_root);
}

namespace {

int face_degree(const RootedMap& x, int d) {
    int k = 1;
    for (int y = x.phi(d); y != d; y = x.phi(y)) ++k;
    return k;
}

// A rotation inside the face with clockwise contour c_0, c_1, ..., c_k that
// cuts one corner off it. A leaf corner on the contour is rotated first, which
// turns its pendant edge into a loop. Otherwise the first choice is m^{c_1,-};
// when the edge it erases is a bridge (or the protected root loop) the next
// corners are tried. A face bounded by bridges only means m is a tree, and then
// any leaf corner is rotated into a loop.
RotationMove shrink_move(const RootedMap& m, int start, bool keep_root_edge) {
    std::vector<int> contour{start};
    for (int y = m.phi(start); y != start; y = m.phi(y)) contour.push_back(y);
    auto erasable = [&](int d) {
        return !is_internal_edge(m, d) && !(keep_root_edge && is_root_edge(m, d));
    };
    const int k = static_cast<int>(contour.size());
    for (int i = 1; i < k; ++i)
        if (contour[i] != m.root && m.sigma[contour[i]] == contour[i]) return {contour[i], Sign::Minus};
    for (int i = 1; i < k; ++i) {
        int c = contour[i];
        if (c == m.root) continue;
        if (erasable(contour[i - 1])) return {c, Sign::Minus};
        if (erasable(c)) return {c, Sign::Plus};
    }
    for (int d = 0; d < m.num_darts(); ++d)
        if (d != m.root && m.sigma[d] == d) return {d, Sign::Minus};
    throw std::logic_error("normalize_to_m0: no shrinking rotation");
}

}  // namespace

std::vector<RotationMove> normalize_to_m0(const RootedMap& m) {
    std::vector<RotationMove> moves;
    RootedMap cur = m;
    const int n = m.num_edges();
    const std::size_t cap = static_cast<std::size_t>(8 * n * n + 8 * n + 8);
    auto apply = [&](RotationMove mv) {
        moves.push_back(mv);
        cur = rotate(cur, mv.corner, mv.sign);
        if (moves.size() > cap) throw std::logic_error("normalize_to_m0 did not terminate");
    };
    while (face_degree(cur, cur.root) > 1) apply(shrink_move(cur, cur.root, false));
    for (;;) {
        int chosen = -1;
        int d = cur.root;
        do {
            if (face_degree(cur, d) > 2) {
                chosen = d;
                break;
            }
            d = cur.sigma[d];
        } while (d != cur.root);
        if (chosen < 0) break;
        apply(shrink_move(cur, chosen, true));
    }
    return moves;
}

}  // namespace planarmaps
