#pragma once

#include <cstdint>
#include <vector>

#include "planarmaps/map.hpp"
#include "planarmaps/rational.hpp"

namespace oracle {

// Counts computed directly from factorials, independent of the library.
inline planarmaps::Rational factorial(int n) {
    planarmaps::Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline std::uint64_t rooted_maps(int n) {
    planarmaps::Rational r = 2;
    for (int i = 0; i < n; ++i) r *= 3;
    r = r * factorial(2 * n) / (factorial(n) * factorial(n + 2));
    return static_cast<std::uint64_t>(numerator(r));
}

inline std::uint64_t catalan(int n) {
    return static_cast<std::uint64_t>(numerator(factorial(2 * n) / (factorial(n) * factorial(n + 1))));
}

// Number of cycles of a permutation given as an image vector.
inline int cycles(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    int c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        ++c;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = 1;
    }
    return c;
}

inline std::vector<int> face_permutation(const planarmaps::RootedMap& m) {
    std::vector<int> f(m.alpha.size());
    for (std::size_t d = 0; d < f.size(); ++d) f[d] = m.phi(static_cast<int>(d));
    return f;
}

inline int euler(const planarmaps::RootedMap& m) {
    return cycles(m.sigma) - m.num_edges() + cycles(face_permutation(m));
}

}  // namespace oracle
