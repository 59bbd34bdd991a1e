#include "planarmaps/cvs.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "planarmaps/tutte.hpp"

namespace planarmaps {

std::vector<std::vector<int>> LabelledTree::children() const {
    std::vector<std::vector<int>> ch(parent.size());
    for (int v = 1; v < num_vertices(); ++v) ch[parent[v]].push_back(v);
    return ch;
}

std::vector<int> LabelledTree::labels() const {
    std::vector<int> l(parent.size(), 0);
    for (int v = 1; v < num_vertices(); ++v) l[v] = l[parent[v]] + increment[v];
    return l;
}

int LabelledTree::subtree_end(int v) const {
    // Past v, the first vertex whose parent precedes v leaves the subtree.
    int e = v + 1;
    while (e < num_vertices() && parent[e] >= v) ++e;
    return e;
}

LabelledTree single_vertex_tree() { return LabelledTree{}; }

void validate_tree(const LabelledTree& t) {
    if (t.parent.empty() || t.parent[0] != -1 || t.increment.size() != t.parent.size() || t.increment[0] != 0)
        throw std::invalid_argument("malformed labelled tree");
    for (int v = 1; v < t.num_vertices(); ++v) {
        if (t.parent[v] < 0 || t.parent[v] >= v) throw std::invalid_argument("vertices are not in preorder");
        if (t.increment[v] < -1 || t.increment[v] > 1) throw std::invalid_argument("increment outside {-1,0,1}");
        // In preorder the parent of v is v-1 or an ancestor of v-1.
        int a = v - 1;
        while (a >= 0 && a != t.parent[v]) a = t.parent[a];
        if (a < 0) throw std::invalid_argument("vertices are not in preorder");
    }
}

namespace {

void dyck_shapes(int n, std::vector<int>& parent, int cur, int open, int closed,
                 std::vector<std::vector<int>>& out) {
    if (closed == n) {
        out.push_back(parent);
        return;
    }
    if (open < n) {
        parent.push_back(cur);
        dyck_shapes(n, parent, static_cast<int>(parent.size()) - 1, open + 1, closed, out);
        parent.pop_back();
    }
    if (closed < open) dyck_shapes(n, parent, parent[cur], open, closed + 1, out);
}

}  // namespace

std::vector<LabelledTree> enumerate_trees(int n, int limit) {
    if (n > limit) throw LimitExceeded("n = " + std::to_string(n) + " exceeds the limit " + std::to_string(limit));
    if (n < 0) throw std::invalid_argument("enumerate_trees needs n >= 0");
    std::vector<std::vector<int>> shapes;
    std::vector<int> parent{-1};
    dyck_shapes(n, parent, 0, 0, 0, shapes);
    std::vector<LabelledTree> out;
    for (const auto& p : shapes) {
        std::vector<int> digits(n, 0);
        for (;;) {
            LabelledTree t;
            t.parent = p;
            t.increment.assign(n + 1, 0);
            for (int v = 1; v <= n; ++v) t.increment[v] = digits[v - 1] - 1;
            out.push_back(std::move(t));
            int k = n - 1;
            while (k >= 0 && digits[k] == 2) digits[k--] = 0;
            if (k < 0) break;
            ++digits[k];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t count_trees(int n) {
    std::uint64_t cat = 1;
    for (int k = 0; k < n; ++k) cat = cat * 2 * (2 * k + 1) / (k + 2);
    for (int k = 0; k < n; ++k) cat *= 3;
    return cat;
}

namespace {

LabelledTree extract(const LabelledTree& t, const std::vector<int>& keep) {
    std::vector<int> index(t.num_vertices(), -1);
    LabelledTree r;
    r.parent.clear();
    r.increment.clear();
    for (int v : keep) {
        index[v] = static_cast<int>(r.parent.size());
        int p = t.parent[v] >= 0 ? index[t.parent[v]] : -1;
        r.parent.push_back(p);
        r.increment.push_back(p < 0 ? 0 : t.increment[v]);
    }
    return r;
}

}  // namespace

LabelledTree left_subtree(const LabelledTree& t) {
    if (t.size() < 1) throw std::invalid_argument("left_subtree of a single vertex");
    std::vector<int> keep;
    for (int v = 1; v < t.subtree_end(1); ++v) keep.push_back(v);
    return extract(t, keep);
}

LabelledTree right_subtree(const LabelledTree& t) {
    if (t.size() < 1) throw std::invalid_argument("right_subtree of a single vertex");
    std::vector<int> keep{0};
    for (int v = t.subtree_end(1); v < t.num_vertices(); ++v) keep.push_back(v);
    return extract(t, keep);
}

std::vector<LeafErasure> leaf_erasures(const LabelledTree& t) {
    std::vector<char> has_child(t.num_vertices(), 0);
    for (int v = 1; v < t.num_vertices(); ++v) has_child[t.parent[v]] = 1;
    std::vector<LeafErasure> out;
    for (int v = 1; v < t.num_vertices(); ++v) {
        if (has_child[v]) continue;
        std::vector<int> keep;
        for (int u = 0; u < t.num_vertices(); ++u)
            if (u != v) keep.push_back(u);
        out.push_back({v, extract(t, keep)});
    }
    return out;
}

std::string encode_tree(const LabelledTree& t) {
    auto ch = t.children();
    std::string shape;
    std::function<void(int)> rec = [&](int v) {
        shape += '(';
        for (int c : ch[v]) rec(c);
        shape += ')';
    };
    rec(0);
    std::string inc;
    for (int v = 1; v < t.num_vertices(); ++v) inc += t.increment[v] < 0 ? '-' : t.increment[v] > 0 ? '+' : '0';
    return shape + " / " + inc;
}

LabelledTree decode_tree(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw ParseError("tree text needs 'shape / increments'");
    std::string shape, inc;
    for (char ch : s.substr(0, slash))
        if (ch != ' ') shape += ch;
    for (char ch : s.substr(slash + 1))
        if (ch != ' ') inc += ch;
    LabelledTree t;
    t.parent.clear();
    t.increment.clear();
    std::vector<int> stack;
    for (char ch : shape) {
        if (ch == '(') {
            t.parent.push_back(stack.empty() ? -1 : stack.back());
            t.increment.push_back(0);
            stack.push_back(static_cast<int>(t.parent.size()) - 1);
        } else if (ch == ')') {
            if (stack.empty()) throw ParseError("unbalanced tree shape");
            stack.pop_back();
        } else {
            throw ParseError("unexpected character in tree shape");
        }
    }
    if (!stack.empty() || t.parent.empty() || std::count(t.parent.begin(), t.parent.end(), -1) != 1)
        throw ParseError("tree shape must be one balanced group");
    if (static_cast<int>(inc.size()) != t.size()) throw ParseError("increment count does not match the shape");
    for (int v = 1; v < t.num_vertices(); ++v) {
        char ch = inc[v - 1];
        if (ch == '-') t.increment[v] = -1;
        else if (ch == '0') t.increment[v] = 0;
        else if (ch == '+') t.increment[v] = 1;
        else throw ParseError("increments must be '-', '0' or '+'");
    }
    return t;
}

RootedMap tree_map(const LabelledTree& t) {
    const int n = t.size();
    if (n == 0) throw std::invalid_argument("tree_map needs at least one edge");
    auto ch = t.children();
    auto down = [](int v) { return 2 * (v - 1); };
    auto up = [](int v) { return 2 * (v - 1) + 1; };
    RootedMap m;
    m.alpha.resize(2 * n);
    m.sigma.resize(2 * n);
    for (int v = 1; v <= n; ++v) {
        m.alpha[down(v)] = up(v);
        m.alpha[up(v)] = down(v);
    }
    for (int v = 0; v <= n; ++v) {
        std::vector<int> cyc;
        if (v > 0) cyc.push_back(up(v));
        for (int c : ch[v]) cyc.push_back(down(c));
        for (std::size_t i = 0; i < cyc.size(); ++i) m.sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
    m.root = down(1);
    return m;
}

bool PointedQuad::operator==(const PointedQuad& o) const {
    PointedQuad a = canonical_pointed(*this), b = canonical_pointed(o);
    return a.quad == b.quad && a.delta == b.delta;
}

PointedQuad canonical_pointed(const PointedQuad& p) {
    std::vector<int> relabel_to = canonical_relabelling(p.quad);
    PointedQuad r;
    r.quad = relabel(p.quad, relabel_to);
    r.delta = relabel_to[p.delta];
    int d = p.quad.sigma[p.delta];
    while (d != p.delta) {
        r.delta = std::min(r.delta, relabel_to[d]);
        d = p.quad.sigma[d];
    }
    return r;
}

CvsImage cvs_forward(const LabelledTree& t, int eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be 1 or -1");
    const int n = t.size();
    CvsImage img;
    if (n == 0) {
        img.pointed.quad = single_edge_map();
        img.pointed.delta = eps == 1 ? 1 : 0;
        img.vertex_dart = {eps == 1 ? 0 : 1};
        return img;
    }
    RootedMap tm = tree_map(t);
    std::vector<int> lab = t.labels();
    auto tail = [&](int x) { return x % 2 == 0 ? t.parent[x / 2 + 1] : x / 2 + 1; };

    const int k = 2 * n;
    std::vector<int> contour(k), pos(k);
    contour[0] = tm.root;
    for (int i = 1; i < k; ++i) contour[i] = tm.phi(contour[i - 1]);
    for (int i = 0; i < k; ++i) pos[contour[i]] = i;
    const int lmin = *std::min_element(lab.begin(), lab.end());

    std::vector<int> target(k, -1);
    for (int i = 0; i < k; ++i) {
        int li = lab[tail(contour[i])];
        if (li == lmin) continue;
        for (int s = 1; s < k; ++s) {
            int j = (i + s) % k;
            if (lab[tail(contour[j])] == li - 1) {
                target[i] = j;
                break;
            }
        }
    }
    std::vector<std::vector<int>> incoming(k);
    for (int s = 1; s < k; ++s)
        for (int j = 0; j < k; ++j) {
            int i = ((j - s) % k + k) % k;
            if (target[i] == j) incoming[j].push_back(i);
        }

    RootedMap& q = img.pointed.quad;
    q.alpha.resize(2 * k);
    q.sigma.resize(2 * k);
    for (int i = 0; i < k; ++i) {
        q.alpha[2 * i] = 2 * i + 1;
        q.alpha[2 * i + 1] = 2 * i;
    }
    auto close_cycle = [&](const std::vector<int>& cyc) {
        for (std::size_t i = 0; i < cyc.size(); ++i) q.sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
    };
    img.vertex_dart.assign(n + 1, -1);
    auto ch = t.children();
    for (int v = 0; v <= n; ++v) {
        std::vector<int> tree_darts;
        if (v > 0) tree_darts.push_back(2 * (v - 1) + 1);
        for (int c : ch[v]) tree_darts.push_back(2 * (c - 1));
        std::vector<int> cyc;
        for (int x : tree_darts) {
            int c = pos[x];
            for (int i : incoming[c]) cyc.push_back(2 * i + 1);
            cyc.push_back(2 * c);
        }
        close_cycle(cyc);
        img.vertex_dart[v] = 2 * pos[tree_darts.front()];
    }
    std::vector<int> at_delta;
    for (int i = k - 1; i >= 0; --i)
        if (target[i] < 0) at_delta.push_back(2 * i + 1);
    close_cycle(at_delta);
    q.root = eps == 1 ? 0 : 1;
    img.pointed.delta = at_delta.front();
    return img;
}

CvsPreimage cvs_inverse(const RootedMap& q, int delta) {
    Topology T = topology(q);
    if (delta < 0 || delta >= T.num_vertices()) throw std::out_of_range("pointed vertex out of range");
    CvsPreimage out;
    if (quad_size(q) == 0) {
        out.eps = delta == T.vertex_of[q.alpha[q.root]] ? 1 : -1;
        return out;
    }
    std::vector<int> dist = graph_distance(T, q, delta);
    const int nd = q.num_darts();

    // Tree darts 2k and 2k+1 form tree edge k; each sits in one quad corner.
    std::vector<int> corner_tree(nd, -1), tree_vertex;
    auto add_edge = [&](int x, int y) {
        int a = static_cast<int>(tree_vertex.size());
        corner_tree[x] = a;
        corner_tree[y] = a + 1;
        tree_vertex.push_back(T.vertex_of[x]);
        tree_vertex.push_back(T.vertex_of[y]);
    };
    for (const auto& f : T.faces) {
        if (f.size() != 4) throw std::invalid_argument("cvs_inverse needs a quadrangulation");
        int l[4], top = -1, count = 0;
        for (int i = 0; i < 4; ++i) l[i] = dist[T.vertex_of[f[i]]];
        int mx = *std::max_element(l, l + 4);
        for (int i = 0; i < 4; ++i)
            if (l[i] == mx) {
                if (top < 0) top = i;
                ++count;
            }
        if (count == 2) add_edge(f[top], f[top + 2]);
        else add_edge(f[top], f[(top + 3) % 4]);
    }

    const int nt = static_cast<int>(tree_vertex.size());
    std::vector<int> tsigma(nt);
    for (int v = 0; v < T.num_vertices(); ++v) {
        std::vector<int> cyc;
        for (int x : T.vertices[v])
            if (corner_tree[x] >= 0) cyc.push_back(corner_tree[x]);
        for (std::size_t i = 0; i < cyc.size(); ++i) tsigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
    auto talpha = [](int a) { return a ^ 1; };

    int u = T.vertex_of[q.root], w = T.vertex_of[q.alpha[q.root]];
    int y = q.root;
    out.eps = 1;
    if (dist[u] < dist[w]) {
        out.eps = -1;
        y = q.alpha[q.root];
    }
    int root_dart = -1;
    for (int x = q.sigma[y];; x = q.sigma[x]) {
        if (corner_tree[x] >= 0) {
            root_dart = corner_tree[x];
            break;
        }
        if (x == y) throw std::logic_error("cvs_inverse: root vertex carries no tree edge");
    }

    LabelledTree& t = out.tree;
    std::function<void(int, int, int)> expand = [&](int me, int first, int stop) {
        for (int d = first; d != stop; d = tsigma[d]) {
            int child = static_cast<int>(t.parent.size());
            t.parent.push_back(me);
            t.increment.push_back(dist[tree_vertex[talpha(d)]] - dist[tree_vertex[d]]);
            int back = talpha(d);
            expand(child, tsigma[back], back);
        }
    };
    // The root's children start at root_dart and run once around.
    {
        int d = root_dart;
        do {
            int child = static_cast<int>(t.parent.size());
            t.parent.push_back(0);
            t.increment.push_back(dist[tree_vertex[talpha(d)]] - dist[tree_vertex[d]]);
            int back = talpha(d);
            expand(child, tsigma[back], back);
            d = tsigma[d];
        } while (d != root_dart);
    }
    return out;
}

}  // namespace planarmaps
