#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "planarmaps/dynamics.hpp"
#include "planarmaps/growth.hpp"
#include "planarmaps/map.hpp"
#include "planarmaps/rational.hpp"

namespace planarmaps {

struct FlipStep {
    RootedMap state;
    int edge = 0;  // a dart of the flipped edge, labelled as in state
    Sign sign = Sign::Plus;
};

// Steps may use different dart labellings; consecutive states are compared
// as rooted maps.
struct FlipPath {
    RootedMap start;
    RootedMap end;
    std::vector<FlipStep> steps;

    std::size_t size() const { return steps.size(); }
};

class InvalidPath : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Empty string when the path is valid, otherwise a description of the first
// broken step.
std::string path_error(const FlipPath& p);
bool is_valid_path(const FlipPath& p);

FlipPath empty_path(const RootedMap& q);
FlipPath reverse_path(const FlipPath& p);
// Appends b to a; the end of a must be the start of b.
void append_path(FlipPath& a, const FlipPath& b);

enum class SeparatorCase { AlreadyThere, DegenerateWalk, RootInternal, GeneralFace };

const char* separator_case_name(SeparatorCase k);

// One step of the path to the separator: the flipped edge, and the corner
// whose collapse stays equal to coll(q, c).
struct SeparatorRecord {
    int eta = -1;        // internal edge of the current degenerate face (walk steps)
    int eta_tilde = -1;  // edge after eta counterclockwise around v (walk steps)
    int v = -1;          // vertex indices in topology(state)
    int w = -1;
    int corner = -1;
};

struct SeparatorTrace {
    SeparatorCase kind = SeparatorCase::AlreadyThere;
    int face_flips = 0;  // flips made before the degenerate walk (general faces)
    std::vector<SeparatorRecord> records;  // parallel to the path steps
};

struct SeparatorPath {
    FlipPath path;
    SeparatorTrace trace;
};

// P(q, c): a flip path from q to glue(sentinel, collapse(q, c)).
SeparatorPath path_to_separator(const RootedMap& q, int c);

struct TransferPath {
    FlipPath path;
    std::size_t right_phase = 0;
    std::size_t central_phase = 0;
    std::size_t left_phase = 0;
    RootedMap after_central;
};

// From glue(collapse(L, c), R) to glue(L, collapse(R, c')).
TransferPath transfer_path(const RootedMap& left, int c, const RootedMap& right, int cprime);

// F(q1, q2) in Q_{n-1}, by rank mixing.
RootedMap pair_reference(const RootedMap& q1, const RootedMap& q2, int limit = kDefaultLimit);

// Smallest corner c of q with collapse(q, c) = target, or -1.
int collapse_witness(const RootedMap& q, const RootedMap& target);

// (L_i . R_i) for i = 0..n-1 with L_0 = R_{n-1} = sentinel, L_{n-1} = anchor,
// and the corners realising every collapse.
struct SplitSequence {
    RootedMap source;  // q
    RootedMap anchor;  // q'
    std::vector<RootedMap> lefts;
    std::vector<RootedMap> rights;
    int first_witness = -1;              // collapse(q, .) = R_0
    std::vector<int> right_witnesses;    // collapse(R_i, .) = R_{i+1}
    std::vector<int> left_witnesses;     // collapse(L_{i+1}, .) = L_i
};

class SequenceMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

SplitSequence make_sequence(const RootedMap& q, const RootedMap& anchor, std::vector<RootedMap> lefts,
                            std::vector<RootedMap> rights);
SplitSequence sample_sequences(const RootedMap& q, const RootedMap& anchor, Rng& rng);
// Probability of the sequence under the product of g weights.
Rational sequence_probability(const SplitSequence& s, int limit = kDefaultLimit);
// Every sequence with positive probability, with its probability.
std::vector<std::pair<SplitSequence, Rational>> all_sequences(const RootedMap& q, const RootedMap& anchor,
                                                              int limit = kDefaultLimit);
void check_sequence(const SplitSequence& s);

FlipPath psi(const RootedMap& q1, const RootedMap& q2, const SplitSequence& s1, const SplitSequence& s2,
             int limit = kDefaultLimit);

// Random path from q1 to q2: both sequences anchored at pair_reference(q1, q2).
FlipPath sample_canonical_path(const RootedMap& q1, const RootedMap& q2, Rng& rng, int limit = kDefaultLimit);

// A flip (q, e, s) identified by rank of q in Q_n, canonical dart of e
// (the smaller one) and sign.
using FlipKey = std::tuple<std::size_t, int, int>;
FlipKey flip_key(const FlipStep& step, int limit = kDefaultLimit);

// Sums over (q1, q2) of the probability that the random path contains a flip,
// and of the same event weighted by the path length.
struct FlipLoad {
    Rational probability;
    Rational length_weighted;
};

std::map<FlipKey, FlipLoad> exact_congestion(int n, int limit = kDefaultLimit);

struct CongestionEstimate {
    double value = 0;
    double std_error = 0;
    double length_weighted = 0;
};

// Monte Carlo estimates: |Q_n|^2 times the frequency with which a uniform
// pair's path contains each flip.
std::map<FlipKey, CongestionEstimate> monte_carlo_congestion(int n, std::size_t samples, Rng& rng,
                                                             int limit = kDefaultLimit);

double congestion_bound(int n);  // 8 * 12^(n+1)

// max over (a, b, l, r) of sum_{q, q'} P(L_a = l, R_{n-b-1} = r) together with
// the number of tuples exceeding 12^(2n-b-a-1).
struct SequenceMarginalCheck {
    Rational max_ratio;  // largest sum / 12^(2n-b-a-1)
    std::size_t violations = 0;
    std::size_t checked = 0;
};
SequenceMarginalCheck check_sequence_marginals(int n, int limit = kDefaultLimit);

}  // namespace planarmaps
