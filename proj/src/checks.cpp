#include "planarmaps/checks.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "planarmaps/canonical_paths.hpp"
#include "planarmaps/cvs.hpp"
#include "planarmaps/growth.hpp"
#include "planarmaps/spectra.hpp"
#include "planarmaps/tutte.hpp"

namespace planarmaps {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the first failure of a suite; later failures only bump the count.
struct Suite {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++checked;
        if (ok) return;
        if (failed++ == 0) first_failure = what;
    }

    CheckResult finish(int id, const std::string& name, Clock::time_point t0, const std::string& summary) const {
        CheckResult r;
        r.id = id;
        r.name = name;
        r.passed = failed == 0;
        std::ostringstream os;
        os << summary << "; " << checked - failed << "/" << checked << " checks hold";
        if (failed) os << "; first failure: " << first_failure;
        r.detail = os.str();
        r.seconds = seconds_since(t0);
        return r;
    }
};

std::uint64_t formula_count(int n) {
    Rational r = 2;
    for (int i = 0; i < n; ++i) r *= 3;
    for (int i = n + 1; i <= 2 * n; ++i) r *= i;  // (2n)! / n!
    for (int i = 2; i <= n + 2; ++i) r /= i;      // / (n+2)!
    return static_cast<std::uint64_t>(numerator(r));
}

std::string describe(const RootedMap& m) { return encode_map(m); }

}  // namespace

VerifyLevel parse_level(const std::string& s) {
    if (s == "quick") return VerifyLevel::Quick;
    if (s == "full") return VerifyLevel::Full;
    throw std::invalid_argument("unknown verify level: " + s);
}

CheckResult check_enumeration(int max_n, double time_budget_seconds) {
    auto t0 = Clock::now();
    Suite s;
    std::ostringstream sizes;
    for (int n = 1; n <= max_n; ++n) {
        std::uint64_t want = formula_count(n);
        std::size_t maps = map_space(n).size(), quads = quad_space(n).size();
        s.expect(maps == want, "|M_" + std::to_string(n) + "| = " + std::to_string(maps));
        s.expect(quads == want, "|Q_" + std::to_string(n) + "| = " + std::to_string(quads));
        s.expect(count_maps(n) == want, "count_maps(" + std::to_string(n) + ")");
        sizes << (n > 1 ? " " : "") << maps;
    }
    double elapsed = seconds_since(t0);
    std::ostringstream budget;
    budget << "enumeration took " << elapsed << " s, budget " << time_budget_seconds << " s";
    s.expect(elapsed < time_budget_seconds, budget.str());
    return s.finish(1, "enumeration", t0, "|M_n| = |Q_n| = " + sizes.str() + "; " + budget.str());
}

CheckResult check_tutte(int max_n) {
    auto t0 = Clock::now();
    Suite s;
    for (int n = 1; n <= max_n; ++n) {
        const StateSpace& qs = quad_space(n);
        std::set<std::size_t> images;
        for (const RootedMap& m : map_space(n).states()) {
            TutteImage img = tutte_forward(m);
            bool is_quad = is_quadrangulation(img.quad) && quad_size(img.quad) == n && qs.contains(img.quad);
            s.expect(is_quad, "forward image is not in Q_n for " + describe(m));
            if (!is_quad) continue;
            images.insert(qs.rank(img.quad));
            s.expect(same_map(tutte_inverse(img.quad), m), "inverse(forward(m)) != m for " + describe(m));
            Topology mt = topology(m), qt = topology(img.quad);
            s.expect(qt.num_vertices() == mt.num_vertices() + mt.num_faces(), "vertex count of image");
            std::set<int> faces;
            bool paired = true;
            for (int d = 0; d < m.num_darts(); ++d) {
                paired = paired && img.dart_to_face[d] == img.dart_to_face[m.alpha[d]];
                faces.insert(img.dart_to_face[d]);
            }
            s.expect(paired && static_cast<int>(faces.size()) == n && *faces.rbegin() == qt.num_faces() - 1,
                     "edge to face correspondence is not bijective for " + describe(m));
        }
        s.expect(images.size() == qs.size(), "forward map is not onto Q_" + std::to_string(n));
        for (const RootedMap& q : qs.states())
            s.expect(same_map(tutte_forward(tutte_inverse(q)).quad, q), "forward(inverse(q)) != q for " + describe(q));
    }
    return s.finish(2, "tutte bijection", t0, "round trips on M_n and Q_n for n <= " + std::to_string(max_n));
}

CheckResult check_commutation(int n, const FlipFn& flip_fn) {
    auto t0 = Clock::now();
    Suite s;
    for (const RootedMap& q : quad_space(n).states()) {
        std::vector<int> quad_to_map;
        RootedMap m = tutte_inverse(q, &quad_to_map);
        for (int e : edge_representatives(q)) {
            if (is_root_edge(q, e)) continue;
            int c = quad_to_map[real_dart(q, e)];
            for (Sign sg : {Sign::Plus, Sign::Minus})
                s.expect(same_map(tutte_inverse(flip_fn(q, e, sg)), rotate(m, c, sg)),
                         "Phi(q^{e,s}) != Phi(q)^{c,s} for " + describe(q) + " e=" + std::to_string(e) + " s=" +
                             sign_char(sg));
        }
    }
    return s.finish(3, "flip/rotation commutation", t0, "all non-root flips of Q_" + std::to_string(n));
}

CheckResult check_cvs(int tree_n, int pointed_n) {
    auto t0 = Clock::now();
    Suite s;
    for (int n = 1; n <= tree_n; ++n) {
        std::size_t images = 0;
        for (const LabelledTree& t : enumerate_trees(n))
            for (int eps : {1, -1}) {
                ++images;
                CvsImage img = cvs_forward(t, eps);
                const RootedMap& q = img.pointed.quad;
                Topology T = topology(q);
                s.expect(is_quadrangulation(q) && quad_size(q) == n && T.num_vertices() == n + 2,
                         "image is not a quadrangulation of size n: " + encode_tree(t));
                int dv = T.vertex_of[img.pointed.delta];
                CvsPreimage back = cvs_inverse(q, dv);
                s.expect(back.tree == t && back.eps == eps, "inverse(forward(t, eps)) != (t, eps) for " + encode_tree(t));
                std::vector<int> dist = graph_distance(T, q, dv);
                std::vector<int> lab = t.labels();
                int root = T.vertex_of[img.vertex_dart[0]];
                bool identity = true;
                for (int v = 0; v < t.num_vertices(); ++v)
                    identity = identity && lab[v] == dist[T.vertex_of[img.vertex_dart[v]]] - dist[root];
                s.expect(identity, "label identity fails for " + encode_tree(t));
            }
        s.expect(images == static_cast<std::size_t>(n + 2) * quad_space(n).size(),
                 "2 |LT_n| != (n + 2) |Q_n| at n = " + std::to_string(n));
    }
    for (int n = 1; n <= pointed_n; ++n)
        for (const RootedMap& q : quad_space(n).states()) {
            Topology T = topology(q);
            for (int v = 0; v < T.num_vertices(); ++v) {
                CvsPreimage pre = cvs_inverse(q, v);
                CvsImage img = cvs_forward(pre.tree, pre.eps);
                s.expect(canonical_pointed(img.pointed) == canonical_pointed(PointedQuad{q, T.vertices[v].front()}),
                         "forward(inverse(q, v)) != (q, v) for " + describe(q));
            }
        }
    return s.finish(4, "CVS bijection", t0,
                    "trees up to " + std::to_string(tree_n) + " edges, pointed Q_n up to " + std::to_string(pointed_n));
}

CheckResult check_growth_weights(int max_n, int ratio_n) {
    auto t0 = Clock::now();
    Suite s;
    for (int n = 1; n <= max_n; ++n) {
        for (const LabelledTree& t : enumerate_trees(n)) {
            Rational sum = 0;
            std::set<LabelledTree> seen;
            for (const LeafErasure& e : leaf_erasures(t))
                if (seen.insert(e.tree).second) sum += f_weight(t, e.tree);
            s.expect(sum == 1, "sum of f_n(t, .) is " + to_string(sum) + " for " + encode_tree(t));
        }
        const StateSpace& qs = quad_space(n);
        const StateSpace& lower = quad_space(n - 1);
        std::vector<Rational> column(lower.size(), Rational(0));
        for (const RootedMap& q : qs.states()) {
            std::set<std::size_t> collapses;
            for (int c = 0; c < q.num_darts(); ++c) collapses.insert(lower.rank(collapse(q, c)));
            Rational sum = 0;
            for (const auto& [r, w] : g_row(q)) {
                sum += w;
                column[r] += w;
                s.expect(w == 0 || collapses.count(r), "g_n(q, q') > 0 without a collapse for " + describe(q));
                if (n <= 3) s.expect(g_weight(q, lower.unrank(r)) == w, "g row differs from the double sum");
            }
            s.expect(sum == 1, "sum of g_n(q, .) is " + to_string(sum) + " for " + describe(q));
        }
        Rational want = Rational(qs.size()) / Rational(lower.size());
        for (std::size_t r = 0; r < column.size(); ++r)
            s.expect(column[r] == want, "sum of g_n(., q') is " + to_string(column[r]) + ", want " + to_string(want));
    }
    for (int k = 1; k <= ratio_n; ++k)
        s.expect(quad_space(k).size() <= 12 * quad_space(k - 1).size(),
                 "|Q_k| / |Q_{k-1}| > 12 at k = " + std::to_string(k));
    return s.finish(5, "growth distributions", t0,
                    "f and g identities for n <= " + std::to_string(max_n) + ", ratio for k <= " + std::to_string(ratio_n));
}

CheckResult check_collapse_lemma(int max_n) {
    auto t0 = Clock::now();
    Suite s;
    std::size_t pairs = 0;
    for (int n = 1; n <= max_n; ++n)
        for (const LabelledTree& t : enumerate_trees(n)) {
            std::set<LabelledTree> seen;
            for (const LeafErasure& e : leaf_erasures(t)) {
                if (!seen.insert(e.tree).second || f_weight(t, e.tree) == 0) continue;
                for (int eps : {1, -1}) {
                    ++pairs;
                    RootedMap q = cvs_forward(t, eps).pointed.quad;
                    RootedMap target = n == 1 ? sentinel_quad() : cvs_forward(e.tree, eps).pointed.quad;
                    bool found = false;
                    for (int c = 0; c < q.num_darts() && !found; ++c) found = same_map(collapse(q, c), target);
                    s.expect(found, "no collapse relates " + encode_tree(t) + " and " + encode_tree(e.tree));
                }
            }
        }
    return s.finish(6, "collapse lemma", t0,
                    std::to_string(pairs) + " weighted erasure pairs for n <= " + std::to_string(max_n));
}

CheckResult check_chains(int max_n, int normalize_n) {
    auto t0 = Clock::now();
    Suite s;
    for (ChainKind kind : {ChainKind::Rotation, ChainKind::FlipNoRoot, ChainKind::FlipWithRoot})
        for (int n = 1; n <= max_n; ++n) {
            MatrixCheck c = check_matrix(transition_matrix(kind, n));
            std::string where = std::string(chain_name(kind)) + " n=" + std::to_string(n);
            s.expect(c.row_sums_one, "row sums differ from 1 for " + where);
            s.expect(c.symmetric, "matrix is not symmetric for " + where);
            s.expect(c.lazy, "diagonal below 1/3 for " + where);
            s.expect(c.connected, "support is not connected for " + where);
        }
    RootedMap target = m0(normalize_n);
    for (const RootedMap& m : map_space(normalize_n).states()) {
        RootedMap cur = m;
        bool legal = true;
        try {
            for (const RotationMove& mv : normalize_to_m0(m)) cur = rotate(cur, mv.corner, mv.sign, true);
        } catch (const std::exception&) {
            legal = false;
        }
        s.expect(legal && same_map(cur, target), "normalize_to_m0 misses m0 from " + describe(m));
    }
    return s.finish(7, "chain structure", t0,
                    "three chains for n <= " + std::to_string(max_n) + ", normalisation on M_" +
                        std::to_string(normalize_n));
}

CheckResult check_spectra(int max_n) {
    auto t0 = Clock::now();
    Suite s;
    std::ostringstream os;
    os.precision(12);
    for (int n = 1; n <= max_n; ++n) {
        TransitionMatrix r = transition_matrix(ChainKind::Rotation, n);
        TransitionMatrix f = transition_matrix(ChainKind::FlipNoRoot, n);
        double gr = spectral_gap(r), gf = spectral_gap(f);
        std::string at = " at n = " + std::to_string(n);
        s.expect(std::abs(gr - gf) <= 1e-10, "rotation and flip gaps differ" + at);
        s.expect(gr > 0 && gf > 0, "gap is not positive" + at);
        for (const TransitionMatrix* m : {&r, &f}) {
            double gap = m == &r ? gr : gf;
            int t = mixing_time(*m, 0.25);
            double bound = std::ceil(std::log(4.0 * static_cast<double>(m->size())) / gap);
            s.expect(t <= bound, "mixing time above the relaxation bound" + at);
            if (m == &r) os << (n > 1 ? "; " : "") << "n=" << n << " gap=" << gr << " tmix=" << t;
        }
    }
    return s.finish(8, "spectral equality", t0, os.str());
}

CheckResult check_paths(int n, const std::vector<int>& psi_sizes, int pairs, std::uint64_t seed) {
    auto t0 = Clock::now();
    Suite s;
    std::size_t longest_separator = 0, longest_transfer = 0;
    for (const RootedMap& q : quad_space(n).states())
        for (int c = 0; c < q.num_darts(); ++c) {
            SeparatorPath sp = path_to_separator(q, c);
            RootedMap target = collapse(q, c);
            std::string where = describe(q) + " c=" + std::to_string(c);
            s.expect(is_valid_path(sp.path), "invalid separator path for " + where + ": " + path_error(sp.path));
            s.expect(same_map(sp.path.start, q) && same_map(sp.path.end, glue(sentinel_quad(), target)),
                     "separator path endpoints wrong for " + where);
            s.expect(sp.path.size() <= static_cast<std::size_t>(8 * n), "separator path longer than 8n for " + where);
            bool invariant = sp.trace.records.size() == sp.path.size();
            for (std::size_t i = 0; invariant && i < sp.path.size(); ++i)
                invariant = same_map(collapse(sp.path.steps[i].state, sp.trace.records[i].corner), target);
            s.expect(invariant, "collapse invariant broken along the separator path for " + where);
            longest_separator = std::max(longest_separator, sp.path.size());
        }
    for (int l = 1; l < n; ++l) {
        int r = n - l;
        for (const RootedMap& left : quad_space(l).states())
            for (int c = 0; c < left.num_darts(); ++c) {
                RootedMap lc = collapse(left, c);
                for (const RootedMap& right : quad_space(r).states())
                    for (int cp = 0; cp < right.num_darts(); ++cp) {
                        TransferPath tp = transfer_path(left, c, right, cp);
                        RootedMap rc = collapse(right, cp);
                        std::string where = "transfer l=" + std::to_string(l) + " c=" + std::to_string(c) +
                                            " r=" + std::to_string(r) + " c'=" + std::to_string(cp);
                        s.expect(is_valid_path(tp.path), "invalid " + where + ": " + path_error(tp.path));
                        s.expect(same_map(tp.path.start, glue(lc, right)) && same_map(tp.path.end, glue(left, rc)),
                                 "endpoints wrong for " + where);
                        s.expect(tp.central_phase == 4, "central phase is not 4 flips for " + where);
                        s.expect(same_map(tp.after_central, glue(glue(sentinel_quad(), lc), rc)),
                                 "state after the central phase wrong for " + where);
                        s.expect(tp.path.size() <= static_cast<std::size_t>(16 * n + 4), "transfer too long for " + where);
                        longest_transfer = std::max(longest_transfer, tp.path.size());
                    }
            }
    }
    Rng rng(seed);
    std::ostringstream os;
    os << "n=" << n << " longest separator " << longest_separator << ", longest transfer " << longest_transfer;
    for (int m : psi_sizes) {
        const StateSpace& qs = quad_space(m);
        std::size_t longest = 0;
        for (int k = 0; k < pairs; ++k) {
            const RootedMap& q1 = qs.unrank(rng.uniform(qs.size()));
            const RootedMap& q2 = qs.unrank(rng.uniform(qs.size()));
            FlipPath p = sample_canonical_path(q1, q2, rng);
            s.expect(is_valid_path(p) && same_map(p.start, q1) && same_map(p.end, q2),
                     "invalid canonical path at n = " + std::to_string(m) + ": " + path_error(p));
            s.expect(p.size() <= static_cast<std::size_t>(32 * m * m),
                     "canonical path longer than 32n^2 at n = " + std::to_string(m));
            longest = std::max(longest, p.size());
        }
        os << "; Psi n=" << m << " longest " << longest << " of bound " << 32 * m * m;
    }
    return s.finish(9, "path machinery", t0, os.str());
}

Rational congestion_max_n3() { return Rational(28967, 16); }

CheckResult check_congestion(int n) {
    auto t0 = Clock::now();
    Suite s;
    SequenceMarginalCheck marg = check_sequence_marginals(n);
    s.expect(marg.violations == 0, std::to_string(marg.violations) + " sequence marginals exceed 12^(2n-b-a-1)");
    std::map<FlipKey, FlipLoad> loads = exact_congestion(n);
    Rational worst = 0;
    for (const auto& [key, load] : loads) worst = std::max(worst, load.probability);
    Rational bound = 8;
    for (int i = 0; i <= n; ++i) bound *= 12;
    s.expect(worst <= bound, "congestion " + to_string(worst) + " exceeds 8 * 12^(n+1)");
    if (n == 3) s.expect(worst == congestion_max_n3(), "congestion maximum moved from the frozen value");
    DscBound dsc = dsc_lower_bound(n, loads);
    double gap = spectral_gap(transition_matrix(ChainKind::FlipNoRoot, n));
    s.expect(dsc.sharp > 0 && dsc.sharp <= gap, "canonical-path bound is not below the gap");
    s.expect(dsc.closed_form > 0 && dsc.closed_form <= dsc.sharp, "closed form exceeds the sharp bound");
    std::ostringstream os;
    os << "n=" << n << " max congestion " << worst << " (" << to_double(worst) << ") of bound " << bound
       << "; max marginal ratio " << marg.max_ratio << " over " << marg.checked << " tuples; dsc " << dsc.sharp
       << " <= gap " << gap;
    return s.finish(10, "congestion", t0, os.str());
}

double chi_square_p_value(const std::vector<std::uint64_t>& counts) {
    if (counts.size() < 2) return 1.0;
    double total = 0;
    for (auto c : counts) total += static_cast<double>(c);
    double expected = total / static_cast<double>(counts.size());
    double stat = 0;
    for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

CheckResult check_grower(int exact_n, int chi_n, int samples, std::uint64_t seed) {
    auto t0 = Clock::now();
    Suite s;
    for (int n = 1; n <= exact_n; ++n) {
        std::vector<Rational> law = grow_distribution(n);
        Rational u = Rational(1) / Rational(law.size());
        s.expect(std::all_of(law.begin(), law.end(), [&](const Rational& p) { return p == u; }),
                 "grower law is not uniform at n = " + std::to_string(n));
    }
    const StateSpace& qs = quad_space(chi_n);
    std::vector<std::uint64_t> counts(qs.size(), 0);
    Rng rng(seed);
    for (int k = 0; k < samples; ++k) ++counts[qs.rank(grow_uniform(chi_n, rng))];
    double p = chi_square_p_value(counts);
    s.expect(p > 0.001, "chi-square p-value " + std::to_string(p) + " at most 0.001");
    std::ostringstream os;
    os << "exact uniformity for n <= " << exact_n << "; chi-square on Q_" << chi_n << " with " << samples
       << " samples, p = " << p;
    return s.finish(11, "uniform grower", t0, os.str());
}

std::vector<CheckResult> run_checks(VerifyLevel level, std::uint64_t seed,
                                    const std::function<void(const CheckResult&)>& on_result) {
    const bool full = level == VerifyLevel::Full;
    std::vector<std::function<CheckResult()>> suites = {
        [&] { return check_enumeration(full ? 5 : 4, 60.0); },
        [&] { return check_tutte(full ? 4 : 3); },
        [&] { return check_commutation(3, [](const RootedMap& q, int e, Sign sg) { return flip(q, e, sg); }); },
        [&] { return check_cvs(full ? 4 : 3, 3); },
        [&] { return check_growth_weights(full ? 4 : 3, full ? 5 : 4); },
        [&] { return check_collapse_lemma(full ? 4 : 3); },
        [&] { return check_chains(full ? 4 : 3, full ? 4 : 3); },
        [&] { return check_spectra(full ? 4 : 3); },
        [&] { return check_paths(3, full ? std::vector<int>{4, 5} : std::vector<int>{3, 4}, full ? 1000 : 100, seed); },
        [&] { return check_congestion(3); },
        [&] { return check_grower(3, full ? 4 : 3, full ? 100000 : 20000, seed + 1); },
    };
    std::vector<CheckResult> out;
    for (auto& run : suites) {
        CheckResult r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r.id = static_cast<int>(out.size()) + 1;
            r.name = "suite " + std::to_string(r.id);
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace planarmaps
