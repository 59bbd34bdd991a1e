#include "planarmaps/tutte.hpp"

#include <stdexcept>


namespace planarmaps {

bool is_quadrangulation(const RootedMap& m) {
    if (m.num_darts() == 2 && m.sigma[0] == 0) return true;
    Topology t = topology(m);
    for (const auto& f : t.faces)
        if (f.size() != 4) return false;
    return true;
}

int quad_size(const RootedMap& q) { return q.num_darts() == 2 && q.sigma[0] == 0 ? 0 : q.num_darts() / 4; }

TutteImage tutte_forward(const RootedMap& m) {
    const int n = m.num_darts();
    std::vector<int> phi_inv(n);
    for (int d = 0; d < n; ++d) phi_inv[m.phi(d)] = d;

    TutteImage img;
    RootedMap& q = img.quad;
    q.alpha.resize(2 * n);
    q.sigma.resize(2 * n);
    for (int d = 0; d < n; ++d) {
        q.alpha[2 * d] = 2 * d + 1;
        q.alpha[2 * d + 1] = 2 * d;
        q.sigma[2 * d] = 2 * m.sigma[d];
        q.sigma[2 * d + 1] = 2 * phi_inv[d] + 1;
    }
    q.root = 2 * m.root;

    Topology t = topology(q);
    img.dart_to_face.assign(n, -1);
    // Map dart d lies in the corner of quad dart 2 sigma(d).
    for (int d = 0; d < n; ++d) img.dart_to_face[d] = t.face_of[2 * m.sigma[d]];
    img.real_vertex.assign(t.num_vertices(), 0);
    for (int d = 0; d < n; ++d) img.real_vertex[t.vertex_of[2 * d]] = 1;
    return img;
}

std::vector<char> real_vertices(const RootedMap& q) {
    Topology t = topology(q);
    std::vector<int> dist = graph_distance(t, q, t.origin);
    std::vector<char> real(dist.size());
    for (std::size_t v = 0; v < dist.size(); ++v) real[v] = dist[v] % 2 == 0;
    return real;
}

int real_dart(const RootedMap& q, int e) {
    Topology t = topology(q);
    std::vector<int> dist = graph_distance(t, q, t.origin);
    return dist[t.vertex_of[e]] % 2 == 0 ? e : q.alpha[e];
}

RootedMap tutte_inverse(const RootedMap& q, std::vector<int>* quad_to_map) {
    const int n = q.num_darts();
    Topology t = topology(q);
    std::vector<int> dist = graph_distance(t, q, t.origin);
    std::vector<int> sigma_inv(n);
    for (int d = 0; d < n; ++d) sigma_inv[q.sigma[d]] = d;

    std::vector<int> label(n, -1);
    int count = 0;
    for (int d = 0; d < n; ++d)
        if (dist[t.vertex_of[d]] % 2 == 0) label[d] = count++;

    RootedMap m;
    m.alpha.resize(count);
    m.sigma.resize(count);
    for (int x = 0; x < n; ++x) {
        if (label[x] < 0) continue;
        int y = sigma_inv[q.phi(q.phi(q.sigma[x]))];
        if (label[y] < 0) throw std::logic_error("tutte_inverse: not a quadrangulation");
        m.sigma[label[x]] = label[q.sigma[x]];
        m.alpha[label[x]] = label[y];
    }
    m.root = label[q.root];
    if (quad_to_map) *quad_to_map = std::move(label);
    return m;
}

}  // namespace planarmaps
