#include "planarmaps/growth.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>

#include "planarmaps/tutte.hpp"
#include "surgery.hpp"

namespace planarmaps {

namespace {

bool is_sentinel(const RootedMap& q) { return quad_size(q) == 0; }

int vertex_pred(const std::vector<int>& sigma, int d) {
    int x = d;
    while (sigma[x] != d) x = sigma[x];
    return x;
}

}  // namespace

CollapseResult collapse_ex(const RootedMap& q, int c) {
    if (c < 0 || c >= q.num_darts()) throw std::out_of_range("collapse: corner out of range");
    if (quad_size(q) == 1) return {sentinel_quad(), CollapseCase::ToSentinel};
    Topology T = topology(q);
    const std::vector<int>& face = T.faces[T.face_of[c]];
    if (face.size() != 4) throw std::invalid_argument("collapse needs a quadrangulation");
    int pos = 0;
    while (face[pos] != c) ++pos;
    auto at = [&](int i) { return face[(pos + i) % 4]; };
    auto vert = [&](int i) { return T.vertex_of[at(i)]; };

    int start = 0;
    CollapseCase kind = CollapseCase::FourVertices;
    bool degenerate = false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (at(j) == q.alpha[at(i)]) degenerate = true;
    if (degenerate) {
        kind = CollapseCase::Degenerate;
        for (int i = 0; i < 4; ++i)
            if (q.phi(at(i)) == q.alpha[at(i)]) start = i;
    } else if (vert(0) == vert(2) || vert(1) == vert(3)) {
        kind = CollapseCase::ThreeVertices;
        start = vert(0) == vert(2) ? 0 : 1;
    }
    int d[4];
    for (int i = 0; i < 4; ++i) d[i] = at(start + i);

    detail::Surgery s(q);
    std::vector<int> moved;
    for (int x = s.sigma(d[3]); x != s.alpha(d[2]); x = s.sigma(x)) moved.push_back(x);
    int root = s.root();
    if (root == d[3]) root = s.alpha(d[0]);
    else if (root == s.alpha(d[3])) root = d[0];
    else if (root == d[2]) root = s.alpha(d[1]);
    else if (root == s.alpha(d[2])) root = d[1];
    s.kill_edge(d[2]);
    s.kill_edge(d[3]);
    int after = s.alpha(d[0]);
    for (int x : moved) {
        s.detach(x);
        s.insert_after(after, x);
        after = x;
    }
    s.set_root(root);
    return {s.compact(), kind};
}

RootedMap collapse(const RootedMap& q, int c) { return collapse_ex(q, c).quad; }

namespace {

struct CollapseTable {
    // rank of the collapse in Q_{n-1}, per quad rank and corner
    std::vector<std::vector<std::size_t>> image;
};

const CollapseTable& collapse_table(int n, int limit) {
    static std::map<int, CollapseTable> cache;
    static std::mutex mu;
    const StateSpace& qs = quad_space(n, limit);
    const StateSpace& lower = quad_space(n - 1, limit);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    CollapseTable table;
    table.image.resize(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const RootedMap& q = qs.unrank(i);
        for (int c = 0; c < q.num_darts(); ++c) table.image[i].push_back(lower.rank(collapse(q, c)));
    }
    return cache.emplace(n, std::move(table)).first->second;
}

}  // namespace

std::vector<Expansion> expansions(const RootedMap& qprime, int limit) {
    const int n = quad_size(qprime) + 1;
    if (n > limit) throw LimitExceeded("expansions: size above limit");
    const StateSpace& qs = quad_space(n, limit);
    std::size_t target = quad_space(n - 1, limit).rank(qprime);
    const CollapseTable& table = collapse_table(n, limit);
    std::vector<Expansion> out;
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (int c = 0; c < static_cast<int>(table.image[i].size()); ++c)
            if (table.image[i][c] == target) out.push_back({qs.unrank(i), c});
    return out;
}

Rational f_coefficient(int n, int i) {
    if (n < 2 || i < 1 || i > n - 1) throw std::invalid_argument("f_coefficient out of range");
    return Rational(i * (i + 1) * (3 * n - 2 * i - 1)) / Rational((n - 1) * n * (n + 1));
}

namespace {

LabelledTree combine(const LabelledTree& left, int increment, const LabelledTree& right) {
    LabelledTree t;
    const int shift = 1;
    for (int v = 0; v < left.num_vertices(); ++v) {
        t.parent.push_back(v == 0 ? 0 : left.parent[v] + shift);
        t.increment.push_back(v == 0 ? increment : left.increment[v]);
    }
    const int offset = left.num_vertices();
    for (int v = 1; v < right.num_vertices(); ++v) {
        int p = right.parent[v];
        t.parent.push_back(p == 0 ? 0 : p + offset);
        t.increment.push_back(right.increment[v]);
    }
    return t;
}

bool uniform_below(const Rational& p, Rng& rng) {
    using boost::multiprecision::cpp_int;
    cpp_int num = boost::multiprecision::numerator(p);
    cpp_int den = boost::multiprecision::denominator(p);
    if (den > cpp_int(std::numeric_limits<std::uint64_t>::max()))
        throw std::overflow_error("probability denominator too large");
    return cpp_int(rng.uniform(den.convert_to<std::uint64_t>())) < num;
}

}  // namespace

Rational f_weight(const LabelledTree& t, const LabelledTree& tprime) {
    const int n = t.size();
    if (n < 1 || tprime.size() != n - 1) return Rational(0);
    if (n == 1) return Rational(1);
    if (t.increment[1] != tprime.increment[1]) return Rational(0);
    LabelledTree L = left_subtree(t), Lp = left_subtree(tprime);
    LabelledTree R = right_subtree(t), Rp = right_subtree(tprime);
    int i = L.size();
    if (i >= 1 && Lp.size() == i - 1 && R == Rp) return f_coefficient(n, i) * f_weight(L, Lp);
    int j = R.size();
    if (j >= 1 && Rp.size() == j - 1 && L == Lp) return f_coefficient(n, j) * f_weight(R, Rp);
    return Rational(0);
}

LabelledTree sample_f(const LabelledTree& t, Rng& rng) {
    const int n = t.size();
    if (n < 1) throw std::invalid_argument("sample_f needs at least one edge");
    if (n == 1) return single_vertex_tree();
    LabelledTree L = left_subtree(t), R = right_subtree(t);
    const int i = L.size();
    bool go_left = i >= 1 && (R.size() == 0 || uniform_below(f_coefficient(n, i), rng));
    if (go_left) return combine(sample_f(L, rng), t.increment[1], R);
    return combine(L, t.increment[1], sample_f(R, rng));
}

std::vector<CvsPreimage> pointings(const RootedMap& q) {
    std::vector<CvsPreimage> out;
    const int nv = topology(q).num_vertices();
    for (int v = 0; v < nv; ++v) out.push_back(cvs_inverse(q, v));
    return out;
}

Rational g_weight(const RootedMap& q, const RootedMap& qprime) {
    const int n = quad_size(q);
    if (n < 1 || quad_size(qprime) != n - 1) return Rational(0);
    std::vector<CvsPreimage> a = pointings(q), b = pointings(qprime);
    Rational sum(0);
    for (const auto& p : a)
        for (const auto& pp : b)
            if (p.eps == pp.eps) sum += f_weight(p.tree, pp.tree);
    return sum / Rational(n + 2);
}

std::map<std::size_t, Rational> g_row(const RootedMap& q, int limit) {
    const int n = quad_size(q);
    if (n < 1) throw std::invalid_argument("g_row needs a nonempty quadrangulation");
    const StateSpace& lower = quad_space(n - 1, limit);
    std::map<std::size_t, Rational> row;
    for (const auto& p : pointings(q)) {
        std::set<LabelledTree> seen;
        for (const auto& e : leaf_erasures(p.tree)) {
            if (!seen.insert(e.tree).second) continue;
            Rational w = f_weight(p.tree, e.tree);
            if (w == 0) continue;
            std::size_t r = lower.rank(cvs_forward(e.tree, p.eps).pointed.quad);
            row[r] += w / Rational(n + 2);
        }
    }
    return row;
}

RootedMap sample_g(const RootedMap& q, Rng& rng) {
    const int n = quad_size(q);
    if (n < 1) throw std::invalid_argument("sample_g needs a nonempty quadrangulation");
    const int nv = topology(q).num_vertices();
    CvsPreimage p = cvs_inverse(q, static_cast<int>(rng.uniform(nv)));
    LabelledTree t = sample_f(p.tree, rng);
    return canonical_form(cvs_forward(t, p.eps).pointed.quad);
}

namespace {

// g_k rows for every q in Q_k, inverted into columns indexed by q' rank.
const std::vector<std::map<std::size_t, Rational>>& g_columns(int k, int limit) {
    static std::map<int, std::vector<std::map<std::size_t, Rational>>> cache;
    static std::mutex mu;
    const StateSpace& qs = quad_space(k, limit);
    const StateSpace& lower = quad_space(k - 1, limit);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::map<std::size_t, Rational>> cols(lower.size());
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (const auto& [r, w] : g_row(qs.unrank(i), limit)) cols[r][i] = w;
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(k, std::move(cols)).first->second;
}

}  // namespace

std::map<std::size_t, Rational> growth_step_law(const RootedMap& qprime, int limit) {
    const int k = quad_size(qprime) + 1;
    if (k > limit) throw LimitExceeded("growth_step_law: size above limit");
    const StateSpace& qs = quad_space(k, limit);
    const StateSpace& lower = quad_space(k - 1, limit);
    Rational scale = Rational(lower.size()) / Rational(qs.size());
    std::map<std::size_t, Rational> law;
    for (const auto& [r, w] : g_columns(k, limit)[lower.rank(qprime)]) law[r] = w * scale;
    return law;
}

std::size_t sample_index(const std::vector<Rational>& weights, Rng& rng) {
    using boost::multiprecision::cpp_int;
    cpp_int common = 1;
    for (const auto& w : weights) {
        if (w < 0) throw std::invalid_argument("negative weight");
        cpp_int d = boost::multiprecision::denominator(w);
        common = common / boost::multiprecision::gcd(common, d) * d;
    }
    std::vector<cpp_int> scaled;
    cpp_int total = 0;
    for (const auto& w : weights) {
        scaled.push_back(boost::multiprecision::numerator(w) * (common / boost::multiprecision::denominator(w)));
        total += scaled.back();
    }
    if (total == 0) throw std::invalid_argument("all weights are zero");
    // Rejection sampling over whole 64-bit words.
    const unsigned bits = boost::multiprecision::msb(total) + 1;
    cpp_int draw;
    do {
        draw = 0;
        for (unsigned b = 0; b < bits; b += 64) draw = (draw << 64) | cpp_int(rng.next());
        draw &= (cpp_int(1) << bits) - 1;
    } while (draw >= total);
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        if (draw < scaled[i]) return i;
        draw -= scaled[i];
    }
    return scaled.size() - 1;
}

RootedMap grow_uniform(int n, Rng& rng, int limit) {
    if (n < 1) throw std::invalid_argument("grow_uniform needs n >= 1");
    if (n > limit) throw LimitExceeded("grow_uniform: size above limit");
    RootedMap q = sentinel_quad();
    for (int k = 1; k <= n; ++k) {
        std::vector<std::size_t> ranks;
        std::vector<Rational> weights;
        for (const auto& [r, w] : growth_step_law(q, limit)) {
            ranks.push_back(r);
            weights.push_back(w);
        }
        q = quad_space(k, limit).unrank(ranks[sample_index(weights, rng)]);
    }
    return q;
}

std::vector<Rational> grow_distribution(int n, int limit) {
    if (n > limit) throw LimitExceeded("grow_distribution: size above limit");
    std::vector<Rational> dist{Rational(1)};
    for (int k = 1; k <= n; ++k) {
        const StateSpace& lower = quad_space(k - 1, limit);
        std::vector<Rational> next(quad_space(k, limit).size(), Rational(0));
        for (std::size_t r = 0; r < lower.size(); ++r)
            for (const auto& [s, w] : growth_step_law(lower.unrank(r), limit)) next[s] += dist[r] * w;
        dist = std::move(next);
    }
    return dist;
}

Glued glue_ex(const RootedMap& left, const RootedMap& right) {
    const bool ls = is_sentinel(left), rs = is_sentinel(right);
    const int a = left.num_darts(), b = right.num_darts();
    const int total = a + b + (ls ? 0 : 2) + (rs ? 0 : 2);
    std::vector<int> alpha(total), sigma(total);
    Glued g;
    for (int d = 0; d < a; ++d) {
        alpha[d] = left.alpha[d];
        sigma[d] = left.sigma[d];
        g.left_dart.push_back(d);
    }
    for (int d = 0; d < b; ++d) {
        alpha[a + d] = right.alpha[d] + a;
        sigma[a + d] = right.sigma[d] + a;
        g.right_dart.push_back(a + d);
    }
    int next = a + b;
    // Adds a parallel copy p of rho with sigma(p) = rho, bounding a 2-gon right of rho.
    auto doubled = [&](int rho) {
        int p = next, pb = next + 1;
        next += 2;
        alpha[p] = pb;
        alpha[pb] = p;
        int prev = vertex_pred(sigma, rho);
        sigma[prev] = p;
        sigma[p] = rho;
        int ar = alpha[rho];
        sigma[pb] = sigma[ar];
        sigma[ar] = pb;
        return p;
    };
    const int rho_l = left.root, rho_r = right.root + a;
    const int copy_l = ls ? rho_l : doubled(rho_l);
    const int copy_r = rs ? rho_r : doubled(rho_r);
    std::swap(sigma[copy_l], sigma[copy_r]);
    g.quad = RootedMap{std::move(alpha), std::move(sigma), rho_r};
    return g;
}

RootedMap glue(const RootedMap& left, const RootedMap& right) {
    return canonical_form(glue_ex(left, right).quad);
}

namespace {

// Component of start after dropping the darts in skip, relabelled in
// increasing order of the old labels.
RootedMap extract_component(const std::vector<int>& alpha, const std::vector<int>& sigma, int start,
                            const std::vector<char>& skip, std::vector<char>& seen) {
    std::vector<int> stack{start}, darts;
    seen[start] = 1;
    while (!stack.empty()) {
        int d = stack.back();
        stack.pop_back();
        darts.push_back(d);
        for (int e : {alpha[d], sigma[d]})
            if (!skip[e] && !seen[e]) {
                seen[e] = 1;
                stack.push_back(e);
            }
    }
    std::sort(darts.begin(), darts.end());
    std::vector<int> index(alpha.size(), -1);
    for (std::size_t i = 0; i < darts.size(); ++i) index[darts[i]] = static_cast<int>(i);
    RootedMap m;
    for (int d : darts) {
        m.alpha.push_back(index[alpha[d]]);
        m.sigma.push_back(index[sigma[d]]);
    }
    m.root = index[start];
    return m;
}

void remove_from_vertex(std::vector<int>& sigma, int d) {
    int prev = vertex_pred(sigma, d);
    sigma[prev] = sigma[d];
    sigma[d] = d;
}

}  // namespace

std::optional<SplitPair> split(const RootedMap& q) {
    if (quad_size(q) < 1) return std::nullopt;
    const int rho_r = q.root;
    const int d1 = q.phi(rho_r), d2 = q.phi(d1), d3 = q.phi(d2);
    bool at_origin = false;
    for (int x = q.sigma[rho_r];; x = q.sigma[x]) {
        if (x == d2) at_origin = true;
        if (x == rho_r) break;
    }
    if (!at_origin || d2 == rho_r) return std::nullopt;
    const int copy_r = q.alpha[d1], rho_l = d2, copy_l = q.alpha[d3];
    std::vector<int> alpha = q.alpha, sigma = q.sigma;
    std::swap(sigma[copy_l], sigma[copy_r]);
    std::vector<char> skip(alpha.size(), 0);
    if (copy_l != rho_l) {
        remove_from_vertex(sigma, copy_l);
        remove_from_vertex(sigma, alpha[copy_l]);
        skip[copy_l] = skip[alpha[copy_l]] = 1;
    }
    if (copy_r != rho_r) {
        remove_from_vertex(sigma, copy_r);
        remove_from_vertex(sigma, alpha[copy_r]);
        skip[copy_r] = skip[alpha[copy_r]] = 1;
    }
    std::vector<char> seen(alpha.size(), 0);
    RootedMap left = extract_component(alpha, sigma, rho_l, skip, seen);
    if (seen[rho_r]) return std::nullopt;
    RootedMap right = extract_component(alpha, sigma, rho_r, skip, seen);
    for (const RootedMap* m : {&left, &right}) {
        try {
            validate(*m);
        } catch (const MapError&) {
            return std::nullopt;
        }
        if (!is_sentinel(*m) && !is_quadrangulation(*m)) return std::nullopt;
    }
    if (!same_map(glue_ex(left, right).quad, q)) return std::nullopt;
    return SplitPair{canonical_form(left), canonical_form(right)};
}

}  // namespace planarmaps
