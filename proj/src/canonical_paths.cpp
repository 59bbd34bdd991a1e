#include "planarmaps/canonical_paths.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <string>

#include "planarmaps/tutte.hpp"

namespace planarmaps {

std::string path_error(const FlipPath& p) {
    if (p.steps.empty()) return same_map(p.start, p.end) ? "" : "empty path with distinct endpoints";
    if (!same_map(p.start, p.steps.front().state)) return "first state differs from the start";
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const FlipStep& st = p.steps[i];
        if (st.sign == Sign::Eq) return "step " + std::to_string(i) + " has no sign";
        RootedMap next;
        try {
            next = flip(st.state, st.edge, st.sign);
        } catch (const MoveError& e) {
            return "step " + std::to_string(i) + ": " + e.what();
        }
        const RootedMap& want = i + 1 < p.steps.size() ? p.steps[i + 1].state : p.end;
        if (!same_map(next, want)) return "step " + std::to_string(i) + " does not lead to the next state";
    }
    return "";
}

bool is_valid_path(const FlipPath& p) { return path_error(p).empty(); }

FlipPath empty_path(const RootedMap& q) { return FlipPath{q, q, {}}; }

FlipPath reverse_path(const FlipPath& p) {
    FlipPath r{p.end, p.start, {}};
    for (std::size_t i = p.steps.size(); i-- > 0;) {
        const FlipStep& st = p.steps[i];
        r.steps.push_back({flip(st.state, st.edge, st.sign), st.edge, negate(st.sign)});
    }
    return r;
}

void append_path(FlipPath& a, const FlipPath& b) {
    if (!same_map(a.end, b.start)) throw InvalidPath("appended path does not start where the path ends");
    a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
    a.end = b.end;
}

const char* separator_case_name(SeparatorCase k) {
    switch (k) {
        case SeparatorCase::AlreadyThere: return "already-there";
        case SeparatorCase::DegenerateWalk: return "degenerate-walk";
        case SeparatorCase::RootInternal: return "root-internal";
        case SeparatorCase::GeneralFace: return "general-face";
    }
    return "?";
}

namespace {

int origin_vertex(const Topology& t, const RootedMap& q) { return t.vertex_of[q.root]; }

std::vector<int> face_darts(const RootedMap& q, int d) {
    std::vector<int> f{d};
    for (int x = q.phi(d); x != d; x = q.phi(x)) f.push_back(x);
    return f;
}

// Dart of an edge inside the face of d whose other dart is in the same face.
int internal_dart(const RootedMap& q, int d) {
    std::vector<int> f = face_darts(q, d);
    for (int x : f)
        if (std::find(f.begin(), f.end(), q.alpha[x]) != f.end()) return x;
    return -1;
}

// The dart of the pendant edge of e pointing at its degree-1 endpoint.
int towards_leaf(const RootedMap& q, int e) {
    int a = q.alpha[e];
    return q.sigma[a] == a ? e : a;
}

constexpr Sign kRootInternalSign = Sign::Minus;

struct Builder {
    RootedMap cur;
    RootedMap target;
    FlipPath path;
    SeparatorTrace trace;

    void flip_step(int e, Sign s, SeparatorRecord rec) {
        path.steps.push_back({cur, e, s});
        trace.records.push_back(rec);
        cur = flip(cur, e, s);
    }
    bool done() const { return same_map(cur, target); }
};

void degenerate_walk(Builder& b, int eta) {
    const int n = quad_size(b.cur);
    const int cap = 8 * n + 8;
    for (int iter = 0; iter < cap; ++iter) {
        const RootedMap& q = b.cur;
        int x = towards_leaf(q, eta);
        int y = q.sigma[x];
        int z = q.phi(y);
        Topology t = topology(q);
        std::vector<int> dist = graph_distance(t, q, origin_vertex(t, q));
        int v = t.vertex_of[x], w = t.vertex_of[z];
        int e = dist[v] > dist[w] ? x : y;
        b.flip_step(e, Sign::Plus, {x, y, v, w, x});
        if (b.done()) return;
    }
    throw std::logic_error("degenerate walk did not reach the separator");
}

int sigma_pred(const RootedMap& q, int d) {
    int x = d;
    while (q.sigma[x] != d) x = q.sigma[x];
    return x;
}

// The root edge is the pendant edge of the degenerate face: the edges at the
// third vertex w are swung over one by one.
void root_internal(Builder& b, int eta) {
    const RootedMap q = b.cur;
    int x = towards_leaf(q, eta);  // from v to the leaf u
    int y = q.sigma[x];
    int z = q.phi(y);
    Topology t = topology(q);
    const int w = t.vertex_of[z];
    const int deg = t.vertex_degree(w);
    const bool u_is_origin = q.root == q.alpha[x];
    std::vector<int> edges;  // darts leaving w
    for (int k = 0, d = u_is_origin ? z : q.alpha[y]; k < deg; ++k) {
        edges.push_back(d);
        d = u_is_origin ? q.sigma[d] : sigma_pred(q, d);
    }
    const Sign s = u_is_origin ? Sign::Plus : kRootInternalSign;
    for (int d : edges) {
        b.flip_step(d, s, {-1, -1, -1, w, u_is_origin ? b.cur.phi(d) : q.alpha[d]});
        if (b.done()) return;
    }
    throw std::logic_error("root-internal path did not reach the separator");
}

void to_separator(Builder& b, int c);

// A face with at least three distinct vertices: the edges at w are flipped
// away until w is a leaf, then the resulting degenerate face is moved.
void general_face(Builder& b, int c) {
    const RootedMap q = b.cur;
    Topology t = topology(q);
    std::vector<int> f = face_darts(q, c);
    auto vert = [&](int i) { return t.vertex_of[f[(i + 4) % 4]]; };
    int start = 0;
    if (vert(1) == vert(3)) start = 3;
    int d[4];
    for (int i = 0; i < 4; ++i) d[i] = f[(start + i) % 4];
    const int v2 = t.vertex_of[d[1]];
    const bool root_at_v2 = t.vertex_of[q.root] == v2 || t.vertex_of[q.alpha[q.root]] == v2;
    const int dw = root_at_v2 ? d[3] : d[1];
    const int w = t.vertex_of[dw];
    const int deg = t.vertex_degree(w);
    std::vector<int> edges;  // e_1 .. e_deg, clockwise around w
    for (int k = 1, x = sigma_pred(q, dw); k <= deg; ++k, x = sigma_pred(q, x)) edges.push_back(x);
    for (int k = 0; k + 1 < deg; ++k) b.flip_step(edges[k], Sign::Minus, {-1, -1, -1, w, q.alpha[edges[k]]});
    b.trace.face_flips = deg - 1;
    to_separator(b, edges[deg - 1]);
}

void to_separator(Builder& b, int c) {
    if (b.done()) return;
    int eta = internal_dart(b.cur, c);
    if (eta < 0) {
        if (b.trace.kind == SeparatorCase::AlreadyThere) b.trace.kind = SeparatorCase::GeneralFace;
        general_face(b, c);
    } else if (is_root_edge(b.cur, eta)) {
        if (b.trace.kind == SeparatorCase::AlreadyThere) b.trace.kind = SeparatorCase::RootInternal;
        root_internal(b, eta);
    } else {
        if (b.trace.kind == SeparatorCase::AlreadyThere) b.trace.kind = SeparatorCase::DegenerateWalk;
        degenerate_walk(b, eta);
    }
}

}  // namespace

SeparatorPath path_to_separator(const RootedMap& q, int c) {
    if (quad_size(q) < 1) throw std::invalid_argument("path_to_separator needs a nonempty quadrangulation");
    if (c < 0 || c >= q.num_darts()) throw std::out_of_range("corner out of range");
    Builder b{q, glue(sentinel_quad(), collapse(q, c)), empty_path(q), {}};
    to_separator(b, c);
    b.path.end = b.cur;
    return {std::move(b.path), std::move(b.trace)};
}

namespace {

// Internal edge of the face right of d.
int internal_of_face(const RootedMap& q, int d) {
    int x = internal_dart(q, d);
    if (x < 0) throw std::logic_error("expected a degenerate face");
    return x;
}

}  // namespace

TransferPath transfer_path(const RootedMap& left, int c, const RootedMap& right, int cprime) {
    const RootedMap lc = collapse(left, c);
    const RootedMap rc = collapse(right, cprime);
    TransferPath out;
    FlipPath& path = out.path;
    path.start = glue_ex(lc, right).quad;
    path.end = path.start;

    for (const FlipStep& st : path_to_separator(right, cprime).path.steps) {
        Glued g = glue_ex(lc, st.state);
        path.steps.push_back({g.quad, g.right_dart[st.edge], st.sign});
    }
    out.right_phase = path.steps.size();

    RootedMap cur = glue_ex(lc, glue_ex(sentinel_quad(), rc).quad).quad;
    const int eta = cur.phi(cur.root);
    const int eta2 = internal_of_face(cur, cur.alpha[eta]);
    for (int e : {eta, eta2, eta, eta2}) {
        path.steps.push_back({cur, e, Sign::Plus});
        cur = flip(cur, e, Sign::Plus);
    }
    out.central_phase = 4;
    out.after_central = cur;

    FlipPath left_path = reverse_path(path_to_separator(left, c).path);
    for (const FlipStep& st : left_path.steps) {
        Glued g = glue_ex(st.state, rc);
        path.steps.push_back({g.quad, g.left_dart[st.edge], st.sign});
    }
    out.left_phase = left_path.steps.size();
    path.end = glue_ex(left, rc).quad;
    return out;
}

RootedMap pair_reference(const RootedMap& q1, const RootedMap& q2, int limit) {
    const int n = quad_size(q1);
    if (n < 1 || quad_size(q2) != n) throw std::invalid_argument("pair_reference needs two elements of Q_n");
    if (n > limit) throw LimitExceeded("pair_reference: size above limit");
    const StateSpace& qs = quad_space(n, limit);
    const StateSpace& lower = quad_space(n - 1, limit);
    const std::size_t N = qs.size(), M = lower.size();
    std::size_t mixed = (qs.rank(q1) + qs.rank(q2)) % N;
    return lower.unrank(static_cast<std::size_t>(static_cast<std::uint64_t>(mixed) * M / N));
}

int collapse_witness(const RootedMap& q, const RootedMap& target) {
    MapCode want = canonical_code(target);
    for (int c = 0; c < q.num_darts(); ++c)
        if (canonical_code(collapse(q, c)) == want) return c;
    return -1;
}

SplitSequence make_sequence(const RootedMap& q, const RootedMap& anchor, std::vector<RootedMap> lefts,
                            std::vector<RootedMap> rights) {
    SplitSequence s;
    s.source = canonical_form(q);
    s.anchor = canonical_form(anchor);
    for (auto& m : lefts) s.lefts.push_back(canonical_form(m));
    for (auto& m : rights) s.rights.push_back(canonical_form(m));
    const int n = quad_size(s.source);
    if (static_cast<int>(s.lefts.size()) != n || static_cast<int>(s.rights.size()) != n)
        throw SequenceMismatch("sequence lengths do not match the size");
    s.first_witness = collapse_witness(s.source, s.rights[0]);
    for (int i = 0; i + 1 < n; ++i) {
        s.right_witnesses.push_back(collapse_witness(s.rights[i], s.rights[i + 1]));
        s.left_witnesses.push_back(collapse_witness(s.lefts[i + 1], s.lefts[i]));
    }
    check_sequence(s);
    return s;
}

void check_sequence(const SplitSequence& s) {
    const int n = quad_size(s.source);
    if (static_cast<int>(s.lefts.size()) != n || static_cast<int>(s.rights.size()) != n)
        throw SequenceMismatch("sequence lengths do not match the size");
    for (int i = 0; i < n; ++i) {
        if (quad_size(s.lefts[i]) != i) throw SequenceMismatch("left element has the wrong size");
        if (quad_size(s.rights[i]) != n - 1 - i) throw SequenceMismatch("right element has the wrong size");
    }
    if (!same_map(s.lefts.back(), s.anchor)) throw SequenceMismatch("last left element is not the anchor");
    auto check = [](const RootedMap& from, int c, const RootedMap& to) {
        if (c < 0 || !same_map(collapse(from, c), to)) throw SequenceMismatch("witness does not realise the collapse");
    };
    check(s.source, s.first_witness, s.rights[0]);
    if (static_cast<int>(s.right_witnesses.size()) != n - 1 || static_cast<int>(s.left_witnesses.size()) != n - 1)
        throw SequenceMismatch("wrong number of witnesses");
    for (int i = 0; i + 1 < n; ++i) {
        check(s.rights[i], s.right_witnesses[i], s.rights[i + 1]);
        check(s.lefts[i + 1], s.left_witnesses[i], s.lefts[i]);
    }
}

SplitSequence sample_sequences(const RootedMap& q, const RootedMap& anchor, Rng& rng) {
    const int n = quad_size(q);
    if (n < 1 || quad_size(anchor) != n - 1) throw SequenceMismatch("anchor must have one face less than q");
    std::vector<RootedMap> rights{sample_g(q, rng)};
    for (int i = 0; i + 1 < n; ++i) rights.push_back(sample_g(rights.back(), rng));
    std::vector<RootedMap> lefts(n);
    lefts[n - 1] = anchor;
    for (int i = n - 1; i > 0; --i) lefts[i - 1] = sample_g(lefts[i], rng);
    return make_sequence(q, anchor, std::move(lefts), std::move(rights));
}

namespace {

const std::map<std::size_t, Rational>& cached_g_row(const RootedMap& q, int limit) {
    static std::map<std::pair<int, std::size_t>, std::map<std::size_t, Rational>> cache;
    static std::mutex mu;
    const int n = quad_size(q);
    std::size_t r = quad_space(n, limit).rank(q);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, r});
        if (it != cache.end()) return it->second;
    }
    auto row = g_row(q, limit);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(n, r), std::move(row)).first->second;
}

Rational g_lookup(const RootedMap& q, const RootedMap& qprime, int limit) {
    const auto& row = cached_g_row(q, limit);
    auto it = row.find(quad_space(quad_size(qprime), limit).rank(qprime));
    return it == row.end() ? Rational(0) : it->second;
}

// All chains start = x_0 -> x_1 -> ... of length steps under g, with probabilities.
std::vector<std::pair<std::vector<RootedMap>, Rational>> g_chains(const RootedMap& start, int steps, int limit) {
    std::vector<std::pair<std::vector<RootedMap>, Rational>> out{{{}, Rational(1)}};
    for (int k = 0; k < steps; ++k) {
        std::vector<std::pair<std::vector<RootedMap>, Rational>> next;
        for (auto& [chain, p] : out) {
            const RootedMap& from = chain.empty() ? start : chain.back();
            const StateSpace& lower = quad_space(quad_size(from) - 1, limit);
            for (const auto& [r, w] : cached_g_row(from, limit)) {
                auto c = chain;
                c.push_back(lower.unrank(r));
                next.emplace_back(std::move(c), p * w);
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

Rational sequence_probability(const SplitSequence& s, int limit) {
    const int n = quad_size(s.source);
    Rational p = g_lookup(s.source, s.rights[0], limit);
    for (int i = 0; i + 1 < n; ++i)
        p *= g_lookup(s.rights[i], s.rights[i + 1], limit) * g_lookup(s.lefts[i + 1], s.lefts[i], limit);
    return same_map(s.lefts.back(), s.anchor) ? p : Rational(0);
}

std::vector<std::pair<SplitSequence, Rational>> all_sequences(const RootedMap& q, const RootedMap& anchor, int limit) {
    const int n = quad_size(q);
    if (n < 1 || quad_size(anchor) != n - 1) throw SequenceMismatch("anchor must have one face less than q");
    auto rights = g_chains(q, n, limit);
    auto lefts = g_chains(anchor, n - 1, limit);
    std::vector<std::pair<SplitSequence, Rational>> out;
    for (const auto& [rc, rp] : rights)
        for (const auto& [lc, lp] : lefts) {
            std::vector<RootedMap> l(lc.rbegin(), lc.rend());
            l.push_back(anchor);
            out.emplace_back(make_sequence(q, anchor, std::move(l), rc), rp * lp);
        }
    return out;
}

namespace {

struct PathCache {
    std::mutex mu;
    std::map<std::pair<MapCode, int>, FlipPath> separator;
    std::map<std::tuple<MapCode, int, MapCode, int>, FlipPath> transfer;
};

PathCache& path_cache() {
    static PathCache cache;
    return cache;
}

const FlipPath& cached_separator(const RootedMap& q, int c) {
    PathCache& pc = path_cache();
    auto key = std::make_pair(canonical_code(q), c);
    {
        std::lock_guard<std::mutex> lock(pc.mu);
        auto it = pc.separator.find(key);
        if (it != pc.separator.end()) return it->second;
    }
    FlipPath p = path_to_separator(q, c).path;
    std::lock_guard<std::mutex> lock(pc.mu);
    return pc.separator.emplace(std::move(key), std::move(p)).first->second;
}

const FlipPath& cached_transfer(const RootedMap& l, int c, const RootedMap& r, int cprime) {
    PathCache& pc = path_cache();
    auto key = std::make_tuple(canonical_code(l), c, canonical_code(r), cprime);
    {
        std::lock_guard<std::mutex> lock(pc.mu);
        auto it = pc.transfer.find(key);
        if (it != pc.transfer.end()) return it->second;
    }
    FlipPath p = transfer_path(l, c, r, cprime).path;
    std::lock_guard<std::mutex> lock(pc.mu);
    return pc.transfer.emplace(std::move(key), std::move(p)).first->second;
}

// The pieces of psi contributed by one sequence, in path order; reversed
// when the sequence belongs to the end point.
std::vector<FlipPath> sequence_pieces(const SplitSequence& s, bool reversed) {
    const int n = quad_size(s.source);
    std::vector<FlipPath> pieces{cached_separator(s.source, s.first_witness)};
    for (int i = 0; i + 1 < n; ++i)
        pieces.push_back(cached_transfer(s.lefts[i + 1], s.left_witnesses[i], s.rights[i], s.right_witnesses[i]));
    if (reversed) {
        std::reverse(pieces.begin(), pieces.end());
        for (auto& p : pieces) p = reverse_path(p);
    }
    return pieces;
}

void check_anchor(const RootedMap& q, const SplitSequence& s, const RootedMap& ref) {
    if (!same_map(s.source, q)) throw SequenceMismatch("sequence does not start at its quadrangulation");
    if (!same_map(s.anchor, ref)) throw SequenceMismatch("sequence is not anchored at the pair reference");
    check_sequence(s);
}

}  // namespace

FlipPath psi(const RootedMap& q1, const RootedMap& q2, const SplitSequence& s1, const SplitSequence& s2, int limit) {
    RootedMap ref = pair_reference(q1, q2, limit);
    check_anchor(q1, s1, ref);
    check_anchor(q2, s2, ref);
    FlipPath path = empty_path(q1);
    for (const auto& p : sequence_pieces(s1, false)) append_path(path, p);
    for (const auto& p : sequence_pieces(s2, true)) append_path(path, p);
    if (!same_map(path.end, q2)) throw InvalidPath("psi does not end at the second quadrangulation");
    return path;
}

FlipPath sample_canonical_path(const RootedMap& q1, const RootedMap& q2, Rng& rng, int limit) {
    RootedMap ref = pair_reference(q1, q2, limit);
    SplitSequence s1 = sample_sequences(q1, ref, rng);
    SplitSequence s2 = sample_sequences(q2, ref, rng);
    return psi(q1, q2, s1, s2, limit);
}

FlipKey flip_key(const FlipStep& step, int limit) {
    std::vector<int> p = canonical_relabelling(step.state);
    std::size_t r = quad_space(quad_size(step.state), limit).rank(step.state);
    return {r, std::min(p[step.edge], p[step.state.alpha[step.edge]]), static_cast<int>(step.sign)};
}

namespace {

std::set<FlipKey> piece_keys(const std::vector<FlipPath>& pieces, int limit) {
    std::set<FlipKey> keys;
    for (const auto& p : pieces)
        for (const auto& st : p.steps) keys.insert(flip_key(st, limit));
    return keys;
}

}  // namespace

std::map<FlipKey, FlipLoad> exact_congestion(int n, int limit) {
    if (n < 1) throw std::invalid_argument("exact_congestion needs n >= 1");
    if (n > 3 || n > limit) throw LimitExceeded("exact congestion is only available for n <= 3");
    const StateSpace& qs = quad_space(n, limit);

    // For one side: A = P(flip on this side), B = E[length of this side; flip on
    // this side], and the mean length of this side.
    struct Side {
        std::map<FlipKey, std::pair<Rational, Rational>> ab;
        Rational mean_length = 0;
    };
    auto side = [&](const RootedMap& q, const RootedMap& ref, bool reversed) {
        Side out;
        for (const auto& [s, p] : all_sequences(q, ref, limit)) {
            std::vector<FlipPath> pieces = sequence_pieces(s, reversed);
            std::size_t len = 0;
            for (const auto& piece : pieces) len += piece.size();
            Rational pl = p * Rational(len);
            out.mean_length += pl;
            for (const auto& k : piece_keys(pieces, limit)) {
                auto& [a, b] = out.ab[k];
                a += p;
                b += pl;
            }
        }
        return out;
    };

    std::map<FlipKey, FlipLoad> total;
    const std::pair<Rational, Rational> none{Rational(0), Rational(0)};
    for (const auto& q1 : qs.states())
        for (const auto& q2 : qs.states()) {
            RootedMap ref = pair_reference(q1, q2, limit);
            Side x = side(q1, ref, false), y = side(q2, ref, true);
            std::set<FlipKey> keys;
            for (const auto& kv : x.ab) keys.insert(kv.first);
            for (const auto& kv : y.ab) keys.insert(kv.first);
            for (const auto& k : keys) {
                auto ix = x.ab.find(k), iy = y.ab.find(k);
                const auto& [a1, b1] = ix == x.ab.end() ? none : ix->second;
                const auto& [a2, b2] = iy == y.ab.end() ? none : iy->second;
                FlipLoad& load = total[k];
                load.probability += a1 + a2 - a1 * a2;
                load.length_weighted += b1 + a1 * y.mean_length + x.mean_length * a2 + b2 - b1 * a2 - a1 * b2;
            }
        }
    return total;
}

std::map<FlipKey, CongestionEstimate> monte_carlo_congestion(int n, std::size_t samples, Rng& rng, int limit) {
    if (samples == 0) throw std::invalid_argument("monte_carlo_congestion needs samples");
    const StateSpace& qs = quad_space(n, limit);
    std::map<FlipKey, std::size_t> hits;
    std::map<FlipKey, double> lengths;
    for (std::size_t i = 0; i < samples; ++i) {
        const RootedMap& q1 = qs.unrank(rng.uniform(qs.size()));
        const RootedMap& q2 = qs.unrank(rng.uniform(qs.size()));
        FlipPath p = sample_canonical_path(q1, q2, rng, limit);
        std::set<FlipKey> keys;
        for (const auto& st : p.steps) keys.insert(flip_key(st, limit));
        for (const auto& k : keys) {
            ++hits[k];
            lengths[k] += static_cast<double>(p.size());
        }
    }
    const double pairs = static_cast<double>(qs.size()) * static_cast<double>(qs.size());
    std::map<FlipKey, CongestionEstimate> out;
    for (const auto& [k, h] : hits) {
        double f = static_cast<double>(h) / static_cast<double>(samples);
        out[k] = {pairs * f, pairs * std::sqrt(f * (1 - f) / static_cast<double>(samples)),
                  pairs * lengths[k] / static_cast<double>(samples)};
    }
    return out;
}

double congestion_bound(int n) { return 8.0 * std::pow(12.0, n + 1); }

SequenceMarginalCheck check_sequence_marginals(int n, int limit) {
    if (n < 1 || n > limit) throw LimitExceeded("check_sequence_marginals: size out of range");
    // right[j][r]: sum over q in Q_n of P(R_j = r); left[a][l]: sum over q' of P(L_a = l).
    std::vector<std::vector<Rational>> right(n), left(n);
    for (int j = 0; j < n; ++j) right[j].assign(quad_space(n - 1 - j, limit).size(), Rational(0));
    for (int a = 0; a < n; ++a) left[a].assign(quad_space(a, limit).size(), Rational(0));
    for (const auto& q : quad_space(n, limit).states())
        for (const auto& [r, w] : cached_g_row(q, limit)) right[0][r] += w;
    for (int j = 0; j + 1 < n; ++j) {
        const StateSpace& from = quad_space(n - 1 - j, limit);
        for (std::size_t r = 0; r < from.size(); ++r)
            for (const auto& [s, w] : cached_g_row(from.unrank(r), limit)) right[j + 1][s] += right[j][r] * w;
    }
    for (auto& x : left[n - 1]) x = Rational(1);
    for (int a = n - 1; a > 0; --a) {
        const StateSpace& from = quad_space(a, limit);
        for (std::size_t l = 0; l < from.size(); ++l)
            for (const auto& [s, w] : cached_g_row(from.unrank(l), limit)) left[a - 1][s] += left[a][l] * w;
    }
    SequenceMarginalCheck out;
    out.max_ratio = Rational(0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Rational bound = boost::multiprecision::pow(boost::multiprecision::cpp_int(12), 2 * n - b - a - 1);
            for (const auto& pl : left[a])
                for (const auto& pr : right[n - b - 1]) {
                    Rational v = pl * pr;
                    ++out.checked;
                    if (v > bound) ++out.violations;
                    if (v / bound > out.max_ratio) out.max_ratio = v / bound;
                }
        }
    return out;
}

}  // namespace planarmaps
