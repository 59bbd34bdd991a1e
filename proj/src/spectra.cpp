#include "planarmaps/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace planarmaps {

Rational TransitionMatrix::at(std::size_t x, std::size_t y) const {
    auto it = rows.at(x).find(y);
    return it == rows[x].end() ? Rational(0) : it->second;
}

TransitionMatrix transition_matrix(ChainKind kind, int n, int limit) {
    if (n > limit) throw LimitExceeded("transition_matrix: size above limit");
    const StateSpace& space = state_space(kind, n, limit);
    TransitionMatrix m;
    m.kind = kind;
    m.n = n;
    m.rows.resize(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) m.rows[x] = transition_row(kind, space, x);
    return m;
}

MatrixCheck check_matrix(const TransitionMatrix& m) {
    MatrixCheck c;
    const Rational third(1, 3);
    for (std::size_t x = 0; x < m.size(); ++x) {
        Rational sum(0);
        for (const auto& [y, p] : m.rows[x]) {
            sum += p;
            if (m.at(y, x) != p) c.symmetric = false;
        }
        if (sum != 1) c.row_sums_one = false;
        if (m.at(x, x) < third) c.lazy = false;
    }
    std::vector<char> seen(m.size(), 0);
    std::vector<std::size_t> stack;
    if (!m.rows.empty()) {
        stack.push_back(0);
        seen[0] = 1;
    }
    std::size_t reached = stack.size();
    while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (const auto& [y, p] : m.rows[x])
            if (p > 0 && !seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
    }
    c.connected = reached == m.size();
    return c;
}

std::vector<double> symmetric_eigenvalues(DenseMatrix a, double tol, int max_sweeps) {
    const std::size_t n = a.size();
    double norm = 0;
    for (const auto& row : a)
        for (double v : row) norm += v * v;
    norm = std::sqrt(norm);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (std::sqrt(2 * off) <= tol * std::max(norm, 1.0)) {
            std::vector<double> ev(n);
            for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
            std::sort(ev.rbegin(), ev.rend());
            return ev;
        }
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p][q];
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = a[q][p] = 0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    double arp = a[r][p], arq = a[r][q];
                    a[r][p] = a[p][r] = c * arp - s * arq;
                    a[r][q] = a[q][r] = s * arp + c * arq;
                }
            }
    }
    throw ConvergenceFailure("Jacobi sweeps did not converge");
}

namespace {

std::vector<std::vector<std::pair<std::size_t, double>>> float_rows(const TransitionMatrix& m) {
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(m.size());
    for (std::size_t x = 0; x < m.size(); ++x)
        for (const auto& [y, p] : m.rows[x]) rows[x].emplace_back(y, to_double(p));
    return rows;
}

void remove_mean(std::vector<double>& v) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

double normalise(std::vector<double>& v) {
    double s = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (double& x : v) x /= s;
    return s;
}

}  // namespace

double deflated_top_eigenvalue(const TransitionMatrix& m, double tol, int max_iter) {
    const std::size_t n = m.size();
    if (n < 2) throw std::invalid_argument("need at least two states");
    auto rows = float_rows(m);
    // Power iteration on (P + I) / 2, whose spectrum is non-negative for a lazy chain.
    std::vector<double> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(1.0 + 3.0 * static_cast<double>(i));
    remove_mean(v);
    normalise(v);
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t x = 0; x < n; ++x) {
            double s = v[x];
            for (const auto& [y, p] : rows[x]) s += p * v[y];
            w[x] = s / 2;
        }
        remove_mean(w);
        double lambda = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
        double res = 0;
        for (std::size_t i = 0; i < n; ++i) res += (w[i] - lambda * v[i]) * (w[i] - lambda * v[i]);
        v.swap(w);
        normalise(v);
        if (std::sqrt(res) < tol) return 2 * lambda - 1;
    }
    throw ConvergenceFailure("deflated power iteration did not converge");
}

double spectral_gap(const TransitionMatrix& m) {
    const std::size_t n = m.size();
    if (n < 2) return 1.0;
    if (n > kDenseLimit) return 1 - deflated_top_eigenvalue(m);
    DenseMatrix a(n, std::vector<double>(n, 0.0));
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& [y, p] : m.rows[x]) a[x][y] = to_double(p);
    return 1 - symmetric_eigenvalues(std::move(a))[1];
}

std::vector<double> tv_profile(const TransitionMatrix& m, int steps) {
    const std::size_t n = m.size();
    auto rows = float_rows(m);
    const double u = 1.0 / static_cast<double>(n);
    DenseMatrix d(n, std::vector<double>(n, 0.0)), next = d;
    for (std::size_t x = 0; x < n; ++x) d[x][x] = 1;
    auto worst = [&] {
        double tv = 0;
        for (const auto& row : d) {
            double s = 0;
            for (double p : row) s += std::abs(p - u);
            tv = std::max(tv, s / 2);
        }
        return tv;
    };
    std::vector<double> out{worst()};
    for (int t = 0; t < steps; ++t) {
        for (std::size_t x = 0; x < n; ++x) {
            std::fill(next[x].begin(), next[x].end(), 0.0);
            for (std::size_t z = 0; z < n; ++z) {
                double dz = d[x][z];
                if (dz == 0) continue;
                for (const auto& [y, p] : rows[z]) next[x][y] += dz * p;
            }
        }
        d.swap(next);
        out.push_back(worst());
    }
    return out;
}

int mixing_time(const TransitionMatrix& m, double eps, int max_steps) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
    const std::size_t n = m.size();
    auto rows = float_rows(m);
    const double u = 1.0 / static_cast<double>(n);
    DenseMatrix d(n, std::vector<double>(n, 0.0)), next = d;
    for (std::size_t x = 0; x < n; ++x) d[x][x] = 1;
    double prev = 1;
    for (int t = 0; t <= max_steps; ++t) {
        double tv = 0;
        for (const auto& row : d) {
            double s = 0;
            for (double p : row) s += std::abs(p - u);
            tv = std::max(tv, s / 2);
        }
        if (tv > prev + 1e-12) throw std::logic_error("total variation increased along the chain");
        if (tv <= eps) return t;
        prev = tv;
        for (std::size_t x = 0; x < n; ++x) {
            std::fill(next[x].begin(), next[x].end(), 0.0);
            for (std::size_t z = 0; z < n; ++z) {
                double dz = d[x][z];
                if (dz == 0) continue;
                for (const auto& [y, p] : rows[z]) next[x][y] += dz * p;
            }
        }
        d.swap(next);
    }
    throw LimitExceeded("mixing_time: step budget exhausted");
}

double dsc_closed_form(int n, int limit) {
    const double states = static_cast<double>(quad_space(n, limit).size());
    return states / (6.0 * n * 32.0 * n * n * 8.0 * std::pow(12.0, n + 1));
}

namespace {

DscBound dsc_from(int n, const std::map<FlipKey, double>& loads, int limit) {
    const StateSpace& qs = quad_space(n, limit);
    const double states = static_cast<double>(qs.size());
    double worst = 0;
    for (const auto& [key, load] : loads) {
        const auto& [rank, edge, sign] = key;
        const RootedMap& q = qs.unrank(rank);
        RootedMap next = flip(q, edge, static_cast<Sign>(sign));
        double p = to_double(transition_probability(ChainKind::FlipNoRoot, q, next));
        worst = std::max(worst, load / (states * p));
    }
    DscBound b;
    b.worst_flip_ratio = worst;
    b.sharp = worst > 0 ? 1 / worst : 0;
    b.closed_form = dsc_closed_form(n, limit);
    return b;
}

}  // namespace

DscBound dsc_lower_bound(int n, const std::map<FlipKey, FlipLoad>& loads, int limit) {
    std::map<FlipKey, double> w;
    for (const auto& [k, l] : loads) w[k] = to_double(l.length_weighted);
    return dsc_from(n, w, limit);
}

DscBound dsc_lower_bound(int n, const std::map<FlipKey, CongestionEstimate>& loads, int limit) {
    std::map<FlipKey, double> w;
    for (const auto& [k, l] : loads) w[k] = l.length_weighted;
    return dsc_from(n, w, limit);
}

SpectralReport spectral_report(ChainKind kind, int n, double eps, int limit) {
    TransitionMatrix m = transition_matrix(kind, n, limit);
    SpectralReport r;
    r.n = n;
    r.states = m.size();
    r.gap = spectral_gap(m);
    r.mixing_time = mixing_time(m, eps);
    return r;
}

}  // namespace planarmaps
