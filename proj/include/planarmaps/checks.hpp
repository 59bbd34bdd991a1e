#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "planarmaps/dynamics.hpp"
#include "planarmaps/map.hpp"
#include "planarmaps/rational.hpp"

namespace planarmaps {

// Outcome of one exhaustive or statistical verification suite.
struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

enum class VerifyLevel { Quick, Full };

VerifyLevel parse_level(const std::string& s);

// |M_n| and |Q_n| for n = 1..max_n against 2 * 3^n (2n)! / (n! (n+2)!).
CheckResult check_enumeration(int max_n, double time_budget_seconds);
// Round trips of the Tutte bijection on M_n and Q_n and the edge/face correspondence.
CheckResult check_tutte(int max_n);

using FlipFn = std::function<RootedMap(const RootedMap&, int, Sign)>;
// Phi(q^{e,s}) = Phi(q)^{c,s} for every q in Q_n, non-root e and sign.
CheckResult check_commutation(int n, const FlipFn& flip_fn);

// CVS round trips on trees with at most tree_n edges and pointed
// quadrangulations with at most pointed_n faces, and the label identity.
CheckResult check_cvs(int tree_n, int pointed_n);
// f sums, properties (i)-(iii) of g and the |Q_k| / |Q_{k-1}| <= 12 ratio.
CheckResult check_growth_weights(int max_n, int ratio_n);
// f_n(t, t') > 0 implies collapse-neighbouring CVS images.
CheckResult check_collapse_lemma(int max_n);
// Exact matrix structure of the three chains and normalisation to m0(n).
CheckResult check_chains(int max_n, int normalize_n);
// Rotation and flip gaps agree, are positive, and mixing times are consistent.
CheckResult check_spectra(int max_n);
// Separator paths and transfer paths exhaustively at size n, and Psi on
// random pairs at the given sizes.
CheckResult check_paths(int n, const std::vector<int>& psi_sizes, int pairs, std::uint64_t seed);
// Sequence marginal bound, exact congestion bound and the gap comparison at size n.
CheckResult check_congestion(int n);
// Exact uniformity of the grower for n <= exact_n and a chi-square test at chi_n.
CheckResult check_grower(int exact_n, int chi_n, int samples, std::uint64_t seed);

// Frozen exact maximum of the per-flip congestion at n = 3.
Rational congestion_max_n3();

double chi_square_p_value(const std::vector<std::uint64_t>& counts);

// Runs every suite at the given level, reporting each result as it finishes.
std::vector<CheckResult> run_checks(VerifyLevel level, std::uint64_t seed,
                                    const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace planarmaps
