#include "planarmaps/map.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace planarmaps {

namespace {

bool is_permutation_of_range(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

int count_cycles(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    int cycles = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        ++cycles;
        for (int d = static_cast<int>(s); !seen[d]; d = p[d]) seen[d] = 1;
    }
    return cycles;
}

}  // namespace

void validate(const RootedMap& m) {
    const int n = m.num_darts();
    if (static_cast<int>(m.sigma.size()) != n || !is_permutation_of_range(m.alpha) ||
        !is_permutation_of_range(m.sigma))
        throw MapError(MapErrorKind::NotPermutation, "alpha and sigma must be permutations of one dart set");
    if (n == 0 || n % 2 != 0)
        throw MapError(MapErrorKind::NotInvolution, "dart count must be positive and even");
    for (int d = 0; d < n; ++d)
        if (m.alpha[d] == d || m.alpha[m.alpha[d]] != d)
            throw MapError(MapErrorKind::NotInvolution, "alpha is not a fixed-point-free involution");
    if (m.root < 0 || m.root >= n) throw MapError(MapErrorKind::BadRoot, "root dart out of range");

    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int d = stack.back();
        stack.pop_back();
        for (int e : {m.alpha[d], m.sigma[d]}) {
            if (!seen[e]) {
                seen[e] = 1;
                ++reached;
                stack.push_back(e);
            }
        }
    }
    if (reached != n) throw MapError(MapErrorKind::Disconnected, "map is not connected");

    std::vector<int> phi(n);
    for (int d = 0; d < n; ++d) phi[d] = m.sigma[m.alpha[d]];
    int chi = count_cycles(m.sigma) - n / 2 + count_cycles(phi);
    if (chi != 2) throw MapError(MapErrorKind::NonPlanar, "Euler characteristic is " + std::to_string(chi));
}

RootedMap build_map(std::vector<int> alpha, std::vector<int> sigma, int root) {
    RootedMap m{std::move(alpha), std::move(sigma), root};
    validate(m);
    return m;
}

Topology topology(const RootedMap& m) {
    const int n = m.num_darts();
    Topology t;
    t.vertex_of.assign(n, -1);
    t.face_of.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        if (t.vertex_of[s] < 0) {
            int v = static_cast<int>(t.vertices.size());
            t.vertices.emplace_back();
            int d = s;
            do {
                t.vertex_of[d] = v;
                t.vertices[v].push_back(d);
                d = m.sigma[d];
            } while (d != s);
        }
        if (t.face_of[s] < 0) {
            int f = static_cast<int>(t.faces.size());
            t.faces.emplace_back();
            int d = s;
            do {
                t.face_of[d] = f;
                t.faces[f].push_back(d);
                d = m.phi(d);
            } while (d != s);
        }
    }
    t.origin = t.vertex_of[m.root];
    return t;
}

std::vector<int> graph_distance(const Topology& t, const RootedMap& m, int vertex) {
    std::vector<int> dist(t.vertices.size(), -1);
    std::deque<int> queue{vertex};
    dist[vertex] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int d : t.vertices[v]) {
            int u = t.vertex_of[m.alpha[d]];
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

std::vector<int> graph_distance(const RootedMap& m, int vertex) {
    return graph_distance(topology(m), m, vertex);
}

namespace {

std::vector<int> bfs_order(const RootedMap& m) {
    const int n = m.num_darts();
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> label(n, -1);
    label[m.root] = 0;
    order.push_back(m.root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int d = order[i];
        for (int e : {m.sigma[d], m.alpha[d]}) {
            if (label[e] < 0) {
                label[e] = static_cast<int>(order.size());
                order.push_back(e);
            }
        }
    }
    return order;
}

}  // namespace

std::vector<int> canonical_relabelling(const RootedMap& m) {
    std::vector<int> order = bfs_order(m);
    std::vector<int> p(m.num_darts());
    for (std::size_t i = 0; i < order.size(); ++i) p[order[i]] = static_cast<int>(i);
    return p;
}

RootedMap canonical_form(const RootedMap& m) { return relabel(m, canonical_relabelling(m)); }

MapCode canonical_code(const RootedMap& m) {
    RootedMap c = canonical_form(m);
    MapCode code;
    code.reserve(2 * c.num_darts() + 1);
    code.push_back(c.num_darts());
    for (int d = 0; d < c.num_darts(); ++d) {
        code.push_back(c.sigma[d]);
        code.push_back(c.alpha[d]);
    }
    return code;
}

RootedMap decode_code(const MapCode& code) {
    if (code.empty() || static_cast<int>(code.size()) != 2 * code[0] + 1)
        throw ParseError("malformed map code");
    int n = code[0];
    RootedMap m;
    m.alpha.resize(n);
    m.sigma.resize(n);
    for (int d = 0; d < n; ++d) {
        m.sigma[d] = code[1 + 2 * d];
        m.alpha[d] = code[2 + 2 * d];
    }
    m.root = 0;
    validate(m);
    return m;
}

std::size_t MapCodeHash::operator()(const MapCode& c) const {
    std::size_t h = 1469598103934665603ULL;
    for (int x : c) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool same_map(const RootedMap& a, const RootedMap& b) {
    return a.num_darts() == b.num_darts() && canonical_code(a) == canonical_code(b);
}

RootedMap relabel(const RootedMap& m, const std::vector<int>& p) {
    const int n = m.num_darts();
    RootedMap r;
    r.alpha.resize(n);
    r.sigma.resize(n);
    for (int d = 0; d < n; ++d) {
        r.alpha[p[d]] = p[m.alpha[d]];
        r.sigma[p[d]] = p[m.sigma[d]];
    }
    r.root = p[m.root];
    return r;
}

RootedMap single_edge_map() { return RootedMap{{1, 0}, {0, 1}, 0}; }

RootedMap loop_map() { return RootedMap{{1, 0}, {1, 0}, 0}; }

// Loop k uses darts 2k (outgoing side) and 2k+1. Around the vertex the loops
// are nested: 2(n-1), ..., 2, 0, 1, 3, ..., 2n-1 counterclockwise, so that
// loop 0 is innermost and its inner corner is the corner of dart 1.
RootedMap m0(int n) {
    if (n < 1) throw std::invalid_argument("m0 needs n >= 1");
    std::vector<int> cyc;
    for (int k = n - 1; k >= 0; --k) cyc.push_back(2 * k);
    for (int k = 0; k < n; ++k) cyc.push_back(2 * k + 1);
    RootedMap m;
    m.alpha.resize(2 * n);
    m.sigma.resize(2 * n);
    for (int k = 0; k < n; ++k) {
        m.alpha[2 * k] = 2 * k + 1;
        m.alpha[2 * k + 1] = 2 * k;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) m.sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
    m.root = 1;
    return m;
}

std::uint64_t count_maps(int n) {
    // 2 * 3^n * (2n)! / (n! (n+2)!), computed through Catalan numbers.
    std::uint64_t cat = 1;
    for (int k = 0; k < n; ++k) cat = cat * 2 * (2 * k + 1) / (k + 2);
    std::uint64_t p3 = 1;
    for (int k = 0; k < n; ++k) p3 *= 3;
    return 2 * p3 * cat / (n + 2);
}

StateSpace::StateSpace(std::vector<RootedMap> states) {
    std::vector<std::pair<MapCode, RootedMap>> keyed;
    keyed.reserve(states.size());
    for (auto& m : states) keyed.emplace_back(canonical_code(m), canonical_form(m));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [code, m] : keyed) {
        if (!codes_.empty() && codes_.back() == code) continue;
        index_.emplace(code, codes_.size());
        codes_.push_back(code);
        states_.push_back(std::move(m));
    }
}

const RootedMap& StateSpace::unrank(std::size_t i) const {
    if (i >= states_.size()) throw std::out_of_range("unrank index out of range");
    return states_[i];
}

std::size_t StateSpace::rank_of_code(const MapCode& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) throw std::out_of_range("map not in state space");
    return it->second;
}

std::size_t StateSpace::rank(const RootedMap& m) const { return rank_of_code(canonical_code(m)); }

bool StateSpace::contains(const RootedMap& m) const { return index_.count(canonical_code(m)) != 0; }

namespace {

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

std::vector<int> parse_ints(const std::string& s) {
    std::istringstream is(s);
    std::vector<int> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            int x = std::stoi(tok, &used);
            if (used != tok.size()) throw ParseError("bad integer '" + tok + "'");
            out.push_back(x);
        } catch (const std::logic_error&) {
            throw ParseError("bad integer '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

std::string encode_map(const RootedMap& m) {
    return "n=" + std::to_string(m.num_edges()) + " alpha=" + join(m.alpha) + " sigma=" + join(m.sigma) +
           " root=" + std::to_string(m.root);
}

RootedMap decode_map(const std::string& text) {
    auto field = [&](const std::string& key, std::size_t& pos) {
        std::size_t at = text.find(key + "=", pos);
        if (at == std::string::npos) throw ParseError("missing field " + key);
        pos = at + key.size() + 1;
        return pos;
    };
    std::size_t pos = 0;
    std::size_t n_at = field("n", pos);
    std::size_t a_at = field("alpha", pos);
    std::size_t s_at = field("sigma", pos);
    std::size_t r_at = field("root", pos);
    auto slice = [&](std::size_t from, std::size_t to_key) {
        return text.substr(from, to_key - from);
    };
    std::vector<int> nv = parse_ints(slice(n_at, a_at - 6));
    std::vector<int> alpha = parse_ints(slice(a_at, s_at - 6));
    std::vector<int> sigma = parse_ints(slice(s_at, r_at - 5));
    std::vector<int> rv = parse_ints(text.substr(r_at));
    if (nv.size() != 1 || rv.size() != 1) throw ParseError("n and root must be single integers");
    if (static_cast<int>(alpha.size()) != 2 * nv[0] || alpha.size() != sigma.size())
        throw ParseError("permutation length does not match n");
    return build_map(std::move(alpha), std::move(sigma), rv[0]);
}

}  // namespace planarmaps
