#pragma once

#include <vector>

#include "planarmaps/map.hpp"

namespace planarmaps::detail {

// Mutable rotation system used for local surgery. Darts can be detached from
// their vertex, re-inserted next to another dart, created and killed; compact()
// drops killed darts and returns the surviving map with darts renumbered in
// increasing order of their old labels.
class Surgery {
public:
    explicit Surgery(const RootedMap& m);

    int alpha(int d) const { return alpha_[d]; }
    int sigma(int d) const { return sigma_[d]; }
    int sigma_inv(int d) const { return sigma_inv_[d]; }
    int phi(int d) const { return sigma_[alpha_[d]]; }
    int phi_inv(int d) const { return alpha_[sigma_inv_[d]]; }
    int root() const { return root_; }
    void set_root(int d) { root_ = d; }
    bool alive(int d) const { return alive_[d] != 0; }
    int size() const { return static_cast<int>(alpha_.size()); }

    // Removes d from its vertex cycle; d becomes a singleton cycle.
    void detach(int d);
    // Places detached dart d immediately after x (counterclockwise).
    void insert_after(int x, int d);
    // Places detached dart d immediately before x, i.e. into the corner of x.
    void insert_before(int x, int d) { insert_after(sigma_inv_[x], d); }
    // New edge with both darts detached; returns the first dart.
    int new_edge();
    // Detaches both darts of the edge of d and marks them dead.
    void kill_edge(int d);

    RootedMap compact(std::vector<int>* old_to_new = nullptr) const;

private:
    std::vector<int> alpha_, sigma_, sigma_inv_;
    std::vector<char> alive_;
    int root_;
};

}  // namespace planarmaps::detail
