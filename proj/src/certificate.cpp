#include <mogami/core.hpp>

namespace mogami {

std::string_view to_string(BallCertificate::Status s) {
    switch (s) {
    case BallCertificate::Status::Certified: return "Certified";
    case BallCertificate::Status::Refuted: return "Refuted";
    case BallCertificate::Status::Unknown: return "Unknown";
    }
    return "?";
}

std::optional<std::string> ball_refutation(const Pseudomanifold& p) {
    if (p.num_tets() == 0) {
        return "empty complex";
    }
    if (!strongly_connected(p)) {
        return "disconnected";
    }
    if (int chi = euler_characteristic(p); chi != 1) {
        return "euler characteristic " + std::to_string(chi);
    }
    Homology h = homology_ranks(p);
    for (std::size_t i = 1; i < 4; ++i) {
        if (h.betti[i] != 0) {
            return "betti number b" + std::to_string(i) + " = " + std::to_string(h.betti[i]);
        }
    }
    if (!h.h1_torsion.empty()) {
        return "H1 has torsion";
    }
    if (!singular_boundary_vertices(p).empty()) {
        return "boundary has a singular vertex";
    }
    BoundaryComplex b = boundary(p);
    if (b.triangles.empty() || b.num_components != 1 || !b.closed || b.euler_characteristic != 2) {
        return "boundary is not a 2-sphere";
    }
    for (std::size_t v = 0; v < p.num_classes(0); ++v) {
        VertexLink l = vertex_link(p, static_cast<int>(v));
        bool ok = p.is_boundary(0, static_cast<int>(v)) ? l.is_disk() : l.is_sphere();
        if (!ok) {
            return "link of vertex " + std::to_string(v) + " is not a disk or sphere";
        }
    }
    if (!is_simplicial(p)) {
        return "not a simplicial complex";
    }
    return std::nullopt;
}

} // namespace mogami
