#pragma once

#include <map>
#include <optional>
#include <vector>

#include "planarmaps/cvs.hpp"
#include "planarmaps/dynamics.hpp"
#include "planarmaps/map.hpp"
#include "planarmaps/rational.hpp"

namespace planarmaps {

enum class CollapseCase { ToSentinel, FourVertices, ThreeVertices, Degenerate };

struct CollapseResult {
    RootedMap quad;
    CollapseCase kind;
};

// coll(q, c): the face of c is squashed onto one of its diagonals. With four
// distinct vertices the two edges at c are identified (as are the two edges
// opposite c); otherwise the face is squashed onto its repeated vertex,
// whatever c. Every q with one face collapses to the sentinel.
CollapseResult collapse_ex(const RootedMap& q, int c);
RootedMap collapse(const RootedMap& q, int c);

struct Expansion {
    RootedMap quad;  // element of Q_n, canonical form
    int corner;
};

// All (q, c) with collapse(q, c) = q', for q' in Q_{n-1}.
std::vector<Expansion> expansions(const RootedMap& qprime, int limit = kDefaultLimit);

// Exact leaf-erasure weights on labelled trees.
Rational f_coefficient(int n, int i);
Rational f_weight(const LabelledTree& t, const LabelledTree& tprime);
LabelledTree sample_f(const LabelledTree& t, Rng& rng);

// All CVS preimages of q, indexed by vertex of topology(q).
std::vector<CvsPreimage> pointings(const RootedMap& q);

// g_n(q, q') by its defining double sum over pointings.
Rational g_weight(const RootedMap& q, const RootedMap& qprime);
// Row g_n(q, .) as rank in Q_{n-1} -> weight, computed from leaf erasures.
std::map<std::size_t, Rational> g_row(const RootedMap& q, int limit = kDefaultLimit);
RootedMap sample_g(const RootedMap& q, Rng& rng);

// Column weights g_k(q, q') |Q_{k-1}| / |Q_k| over q in Q_k: the law of the
// next quadrangulation in the grower.
std::map<std::size_t, Rational> growth_step_law(const RootedMap& qprime, int limit = kDefaultLimit);
RootedMap grow_uniform(int n, Rng& rng, int limit = kDefaultLimit);
// Exact law of grow_uniform(n) over ranks of Q_n.
std::vector<Rational> grow_distribution(int n, int limit = kDefaultLimit);

// Index drawn with probability proportional to the given non-negative weights.
std::size_t sample_index(const std::vector<Rational>& weights, Rng& rng);

struct Glued {
    RootedMap quad;
    std::vector<int> left_dart;   // dart of L -> dart of L.R
    std::vector<int> right_dart;  // dart of R -> dart of L.R
};

// L.R: both root edges are doubled (except for the sentinel), the origins are
// identified and the new face is bounded by the two 2-cycles; the root of R
// is kept and the root of L forgotten.
Glued glue_ex(const RootedMap& left, const RootedMap& right);
RootedMap glue(const RootedMap& left, const RootedMap& right);

struct SplitPair {
    RootedMap left;
    RootedMap right;
};

// Recovers (L, R) with glue(L, R) = q, or nothing when q is not of that form.
std::optional<SplitPair> split(const RootedMap& q);

}  // namespace planarmaps
