#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "planarmaps/canonical_paths.hpp"
#include "planarmaps/dynamics.hpp"
#include "planarmaps/rational.hpp"

namespace planarmaps {

// Exact transition matrix of a chain on its enumerated state space, rows
// indexed by rank.
struct TransitionMatrix {
    ChainKind kind = ChainKind::Rotation;
    int n = 0;
    std::vector<std::map<std::size_t, Rational>> rows;

    std::size_t size() const { return rows.size(); }
    Rational at(std::size_t x, std::size_t y) const;
};

TransitionMatrix transition_matrix(ChainKind kind, int n, int limit = kDefaultLimit);

struct MatrixCheck {
    bool row_sums_one = true;
    bool symmetric = true;
    bool lazy = true;  // every diagonal entry is at least 1/3
    bool connected = true;
    bool ok() const { return row_sums_one && symmetric && lazy && connected; }
};

MatrixCheck check_matrix(const TransitionMatrix& m);

class ConvergenceFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using DenseMatrix = std::vector<std::vector<double>>;

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
std::vector<double> symmetric_eigenvalues(DenseMatrix a, double tol = 1e-12, int max_sweeps = 100);

// Largest eigenvalue of the matrix restricted to vectors orthogonal to the
// constant vector (the matrix must be symmetric and stochastic).
double deflated_top_eigenvalue(const TransitionMatrix& m, double tol = 1e-12, int max_iter = 2000000);

// Matrices up to this size are diagonalised densely.
constexpr std::size_t kDenseLimit = 1500;

// 1 - lambda_2.
double spectral_gap(const TransitionMatrix& m);

// Worst-case total variation distance to uniform after t steps, for t = 0, 1, ...
// until it is at most eps; returns the first such t.
int mixing_time(const TransitionMatrix& m, double eps = 0.25, int max_steps = 1000000);
std::vector<double> tv_profile(const TransitionMatrix& m, int steps);

struct DscBound {
    double sharp = 0;        // 1 / max over flips of (length-weighted load) / (|Q_n| p)
    double closed_form = 0;  // |Q_n| / (6n * 32n^2 * 8 * 12^(n+1))
    double worst_flip_ratio = 0;
};

// Lower bounds on the flip chain gap from the canonical-path loads.
DscBound dsc_lower_bound(int n, const std::map<FlipKey, FlipLoad>& loads, int limit = kDefaultLimit);
DscBound dsc_lower_bound(int n, const std::map<FlipKey, CongestionEstimate>& loads, int limit = kDefaultLimit);
double dsc_closed_form(int n, int limit = kDefaultLimit);

struct SpectralReport {
    int n = 0;
    std::size_t states = 0;
    double gap = 0;
    int mixing_time = 0;
};

SpectralReport spectral_report(ChainKind kind, int n, double eps = 0.25, int limit = kDefaultLimit);

}  // namespace planarmaps
