#include "surgery.hpp"

#include <stdexcept>

namespace planarmaps::detail {

Surgery::Surgery(const RootedMap& m)
    : alpha_(m.alpha), sigma_(m.sigma), sigma_inv_(m.sigma.size()), alive_(m.alpha.size(), 1), root_(m.root) {
    for (int d = 0; d < size(); ++d) sigma_inv_[sigma_[d]] = d;
}

void Surgery::detach(int d) {
    int p = sigma_inv_[d], s = sigma_[d];
    if (p == d) return;
    sigma_[p] = s;
    sigma_inv_[s] = p;
    sigma_[d] = d;
    sigma_inv_[d] = d;
}

void Surgery::insert_after(int x, int d) {
    if (sigma_[d] != d) throw std::logic_error("insert_after: dart is not detached");
    int s = sigma_[x];
    sigma_[x] = d;
    sigma_inv_[d] = x;
    sigma_[d] = s;
    sigma_inv_[s] = d;
}

int Surgery::new_edge() {
    int a = size(), b = a + 1;
    alpha_.push_back(b);
    alpha_.push_back(a);
    sigma_.push_back(a);
    sigma_.push_back(b);
    sigma_inv_.push_back(a);
    sigma_inv_.push_back(b);
    alive_.push_back(1);
    alive_.push_back(1);
    return a;
}

void Surgery::kill_edge(int d) {
    int e = alpha_[d];
    detach(d);
    detach(e);
    alive_[d] = 0;
    alive_[e] = 0;
}

RootedMap Surgery::compact(std::vector<int>* old_to_new) const {
    std::vector<int> map(size(), -1);
    int next = 0;
    for (int d = 0; d < size(); ++d)
        if (alive_[d]) map[d] = next++;
    RootedMap m;
    m.alpha.resize(next);
    m.sigma.resize(next);
    for (int d = 0; d < size(); ++d) {
        if (!alive_[d]) continue;
        m.alpha[map[d]] = map[alpha_[d]];
        m.sigma[map[d]] = map[sigma_[d]];
    }
    if (!alive_[root_]) throw std::logic_error("compact: root dart was killed");
    m.root = map[root_];
    if (old_to_new) *old_to_new = std::move(map);
    return m;
}

}  // namespace planarmaps::detail
