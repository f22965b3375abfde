#include <mogami/core.hpp>

#include "union_find.hpp"

#include <algorithm>

namespace mogami {

namespace {

constexpr std::array<std::array<int, 2>, 6> kEdgeCorners{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

} // namespace

std::array<int, 3> face_corners(int face) {
    std::array<int, 3> out{};
    std::size_t k = 0;
    for (int c = 0; c < 4; ++c) {
        if (c != face) {
            out[k++] = c;
        }
    }
    return out;
}

int edge_index(int x, int y) {
    if (x > y) {
        std::swap(x, y);
    }
    for (int e = 0; e < 6; ++e) {
        if (kEdgeCorners[static_cast<std::size_t>(e)][0] == x &&
            kEdgeCorners[static_cast<std::size_t>(e)][1] == y) {
            return e;
        }
    }
    return -1;
}

std::array<int, 2> edge_corners(int edge) { return kEdgeCorners[static_cast<std::size_t>(edge)]; }

Perm4 pairing_perm(const Pairing& p) {
    auto src = face_corners(p.a.face);
    std::array<int, 4> img{};
    img[static_cast<std::size_t>(p.a.face)] = p.b.face;
    for (std::size_t i = 0; i < 3; ++i) {
        img[static_cast<std::size_t>(src[i])] = p.corr[i];
    }
    return Perm4(img[0], img[1], img[2], img[3]);
}

Pairing make_pairing(FacetRef a, FacetRef b, const Perm4& perm) {
    Pairing p{a, b, {}};
    auto src = face_corners(a.face);
    for (std::size_t i = 0; i < 3; ++i) {
        p.corr[i] = perm[src[i]];
    }
    return p;
}

namespace {

Pairing normalized(const Pairing& p) {
    if (p.a < p.b) {
        return p;
    }
    return make_pairing(p.b, p.a, pairing_perm(p).inverse());
}

} // namespace

Pseudomanifold Pseudomanifold::build(std::size_t num_tets, std::span<const Pairing> pairings) {
    Pseudomanifold out;
    out.num_tets_ = num_tets;
    out.partner_.assign(num_tets * 4, -1);
    out.perm_.assign(num_tets * 4, Perm4());
    for (const Pairing& raw : pairings) {
        if (raw.a.tet >= num_tets || raw.b.tet >= num_tets || raw.a.face < 0 || raw.a.face > 3 ||
            raw.b.face < 0 || raw.b.face > 3) {
            throw Error(ErrorCode::BadReference, "facet reference out of range");
        }
        if (raw.a == raw.b) {
            throw Error(ErrorCode::SelfPairedFacet,
                        "facet " + std::to_string(raw.a.tet) + "." + std::to_string(raw.a.face) +
                            " paired with itself");
        }
        // corr must be a bijection onto the corners of b.face
        int seen = 0;
        for (int c : raw.corr) {
            if (c < 0 || c > 3 || c == raw.b.face) {
                throw Error(ErrorCode::BadCorr, "corr entry outside target face");
            }
            seen |= 1 << c;
        }
        if (seen != (0xF & ~(1 << raw.b.face))) {
            throw Error(ErrorCode::BadCorr, "corr is not a bijection");
        }
        Pairing p = normalized(raw);
        for (FacetRef f : {p.a, p.b}) {
            if (out.partner_[f.index()] >= 0) {
                throw Error(ErrorCode::DuplicateFacet, "facet " + std::to_string(f.tet) + "." +
                                                           std::to_string(f.face) +
                                                           " occurs in two pairings");
            }
        }
        Perm4 g = pairing_perm(p);
        out.partner_[p.a.index()] = static_cast<int>(p.b.index());
        out.partner_[p.b.index()] = static_cast<int>(p.a.index());
        out.perm_[p.a.index()] = g;
        out.perm_[p.b.index()] = g.inverse();
        out.pairings_.push_back(p);
    }
    std::sort(out.pairings_.begin(), out.pairings_.end(),
              [](const Pairing& x, const Pairing& y) { return x.a < y.a; });
    out.derive();
    return out;
}

void Pseudomanifold::derive() {
    const std::size_t n = num_tets_;
    detail::UnionFind vuf(4 * n), euf(6 * n), tuf(4 * n), cuf(n);
    for (const Pairing& p : pairings_) {
        Perm4 g = pairing_perm(p);
        cuf.unite(p.a.tet, p.b.tet);
        tuf.unite(p.a.index(), p.b.index());
        for (int c : face_corners(p.a.face)) {
            vuf.unite(p.a.tet * 4 + static_cast<std::size_t>(c),
                      p.b.tet * 4 + static_cast<std::size_t>(g[c]));
        }
        auto fc = face_corners(p.a.face);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                int x = fc[i];
                int y = fc[j];
                int gx = g[x];
                int gy = g[y];
                int par = gx > gy ? 1 : 0;
                euf.unite(p.a.tet * 6 + static_cast<std::size_t>(edge_index(x, y)),
                          p.b.tet * 6 + static_cast<std::size_t>(edge_index(gx, gy)), par);
            }
        }
    }

    std::size_t nv = 0, ne = 0, nt = 0;
    vertex_of_ = detail::number_classes(vuf, nv);
    edge_of_ = detail::number_classes(euf, ne);
    triangle_of_ = detail::number_classes(tuf, nt);
    component_ = detail::number_classes(cuf, num_components_);

    edge_flip_.assign(6 * n, 0);
    edge_self_reversed_.assign(ne, 0);
    // parity relative to the class representative (its first member)
    std::vector<int> rep_parity(ne, -1);
    for (std::size_t i = 0; i < 6 * n; ++i) {
        auto [root, par] = euf.find_with_parity(i);
        (void)root;
        int cls = edge_of_[i];
        if (rep_parity[static_cast<std::size_t>(cls)] < 0) {
            rep_parity[static_cast<std::size_t>(cls)] = par;
        }
        edge_flip_[i] = static_cast<char>(par ^ rep_parity[static_cast<std::size_t>(cls)]);
        if (euf.conflict(i)) {
            edge_self_reversed_[static_cast<std::size_t>(cls)] = 1;
        }
    }

    for (auto& v : classes_) {
        v.clear();
    }
    classes_[0].resize(nv);
    classes_[1].resize(ne);
    classes_[2].resize(nt);
    for (int d = 0; d < 3; ++d) {
        for (auto& fc : classes_[static_cast<std::size_t>(d)]) {
            fc.dim = d;
        }
    }
    for (std::size_t t = 0; t < n; ++t) {
        for (int c = 0; c < 4; ++c) {
            classes_[0][static_cast<std::size_t>(vertex_of_[t * 4 + static_cast<std::size_t>(c)])]
                .members.push_back({t, c});
            classes_[2][static_cast<std::size_t>(triangle_of_[t * 4 + static_cast<std::size_t>(c)])]
                .members.push_back({t, c});
        }
        for (int e = 0; e < 6; ++e) {
            classes_[1][static_cast<std::size_t>(edge_of_[t * 6 + static_cast<std::size_t>(e)])]
                .members.push_back({t, e});
        }
    }
    // boundary flags from unpaired facets
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            std::size_t slot = t * 4 + static_cast<std::size_t>(f);
            if (partner_[slot] >= 0) {
                continue;
            }
            classes_[2][static_cast<std::size_t>(triangle_of_[slot])].boundary = true;
            auto fc = face_corners(f);
            for (int c : fc) {
                classes_[0][static_cast<std::size_t>(vertex_of_[t * 4 + static_cast<std::size_t>(c)])]
                    .boundary = true;
            }
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = i + 1; j < 3; ++j) {
                    classes_[1][static_cast<std::size_t>(
                                    edge_of_[t * 6 + static_cast<std::size_t>(edge_index(fc[i], fc[j]))])]
                        .boundary = true;
                }
            }
        }
    }
}

bool Pseudomanifold::is_paired(FacetRef f) const { return partner_.at(f.index()) >= 0; }

std::optional<Gluing> Pseudomanifold::gluing(FacetRef f) const {
    int other = partner_.at(f.index());
    if (other < 0) {
        return std::nullopt;
    }
    auto o = static_cast<std::size_t>(other);
    return Gluing{FacetRef{o / 4, static_cast<int>(o % 4)}, perm_[f.index()]};
}

std::size_t Pseudomanifold::num_classes(int dim) const {
    return classes_.at(static_cast<std::size_t>(dim)).size();
}

const std::vector<FaceClass>& Pseudomanifold::face_classes(int dim) const {
    return classes_.at(static_cast<std::size_t>(dim));
}

int Pseudomanifold::vertex_class(std::size_t tet, int corner) const {
    return vertex_of_.at(tet * 4 + static_cast<std::size_t>(corner));
}

int Pseudomanifold::edge_class(std::size_t tet, int edge) const {
    return edge_of_.at(tet * 6 + static_cast<std::size_t>(edge));
}

bool Pseudomanifold::edge_reversed(std::size_t tet, int edge) const {
    return edge_flip_.at(tet * 6 + static_cast<std::size_t>(edge)) != 0;
}

bool Pseudomanifold::edge_self_reversed(int edge_class) const {
    return edge_self_reversed_.at(static_cast<std::size_t>(edge_class)) != 0;
}

int Pseudomanifold::triangle_class(FacetRef f) const { return triangle_of_.at(f.index()); }

std::array<int, 3> Pseudomanifold::triangle_vertices(int tri) const {
    const SubFace& rep = classes_[2].at(static_cast<std::size_t>(tri)).members.front();
    auto fc = face_corners(rep.local);
    return {vertex_class(rep.tet, fc[0]), vertex_class(rep.tet, fc[1]), vertex_class(rep.tet, fc[2])};
}

std::array<int, 3> Pseudomanifold::triangle_edges(int tri) const {
    const SubFace& rep = classes_[2].at(static_cast<std::size_t>(tri)).members.front();
    auto fc = face_corners(rep.local);
    return {edge_class(rep.tet, edge_index(fc[1], fc[2])), edge_class(rep.tet, edge_index(fc[0], fc[2])),
            edge_class(rep.tet, edge_index(fc[0], fc[1]))};
}

std::array<int, 2> Pseudomanifold::edge_vertices(int edge) const {
    const SubFace& rep = classes_[1].at(static_cast<std::size_t>(edge)).members.front();
    auto ec = edge_corners(rep.local);
    return {vertex_class(rep.tet, ec[0]), vertex_class(rep.tet, ec[1])};
}

bool Pseudomanifold::is_boundary(int dim, int cls) const {
    return classes_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(cls)).boundary;
}

std::vector<FacetRef> Pseudomanifold::boundary_facets() const {
    std::vector<FacetRef> out;
    for (std::size_t i = 0; i < partner_.size(); ++i) {
        if (partner_[i] < 0) {
            out.push_back({i / 4, static_cast<int>(i % 4)});
        }
    }
    return out;
}

int Pseudomanifold::component_of(std::size_t tet) const { return component_.at(tet); }

Pseudomanifold Pseudomanifold::with_pairing(const Pairing& p) const {
    std::vector<Pairing> all = pairings_;
    all.push_back(p);
    return build(num_tets_, all);
}

Pseudomanifold Pseudomanifold::without_pairing(FacetRef f) const {
    std::vector<Pairing> all;
    all.reserve(pairings_.size());
    bool removed = false;
    for (const Pairing& p : pairings_) {
        if (p.a == f || p.b == f) {
            removed = true;
            continue;
        }
        all.push_back(p);
    }
    if (!removed) {
        throw Error(ErrorCode::NotInterior, "facet is not paired");
    }
    return build(num_tets_, all);
}

std::optional<std::size_t> Pseudomanifold::pairing_of_triangle(int tri) const {
    const FaceClass& fc = classes_[2].at(static_cast<std::size_t>(tri));
    if (fc.boundary) {
        return std::nullopt;
    }
    FacetRef f{fc.members.front().tet, fc.members.front().local};
    for (std::size_t i = 0; i < pairings_.size(); ++i) {
        if (pairings_[i].a == f || pairings_[i].b == f) {
            return i;
        }
    }
    return std::nullopt;
}

Pseudomanifold relabel(const Pseudomanifold& p, std::span<const std::size_t> tet_map,
                       std::span<const Perm4> corner_maps) {
    std::vector<Pairing> out;
    out.reserve(p.num_pairings());
    for (const Pairing& q : p.pairings()) {
        Perm4 g = pairing_perm(q);
        const Perm4& ma = corner_maps[q.a.tet];
        const Perm4& mb = corner_maps[q.b.tet];
        Perm4 ng = mb * g * ma.inverse();
        FacetRef na{tet_map[q.a.tet], ma[q.a.face]};
        FacetRef nb{tet_map[q.b.tet], mb[q.b.face]};
        out.push_back(make_pairing(na, nb, ng));
    }
    return Pseudomanifold::build(p.num_tets(), out);
}

Pseudomanifold component(const Pseudomanifold& p, int comp) {
    std::vector<std::size_t> new_index(p.num_tets(), static_cast<std::size_t>(-1));
    std::size_t count = 0;
    for (std::size_t t = 0; t < p.num_tets(); ++t) {
        if (p.component_of(t) == comp) {
            new_index[t] = count++;
        }
    }
    std::vector<Pairing> out;
    for (const Pairing& q : p.pairings()) {
        if (p.component_of(q.a.tet) != comp) {
            continue;
        }
        out.push_back(Pairing{{new_index[q.a.tet], q.a.face}, {new_index[q.b.tet], q.b.face}, q.corr});
    }
    return Pseudomanifold::build(count, out);
}

Pseudomanifold disjoint_union(const Pseudomanifold& a, const Pseudomanifold& b) {
    std::vector<Pairing> out = a.pairings();
    const std::size_t shift = a.num_tets();
    for (const Pairing& q : b.pairings()) {
        out.push_back(Pairing{{q.a.tet + shift, q.a.face}, {q.b.tet + shift, q.b.face}, q.corr});
    }
    return Pseudomanifold::build(a.num_tets() + b.num_tets(), out);
}

} // namespace mogami
