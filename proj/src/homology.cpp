#include <mogami/core.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>

namespace mogami {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<BigInt>>;

struct SmithResult {
    std::size_t rank = 0;
    std::vector<BigInt> invariant_factors;   // nonzero, normalized d1 | d2 | ...
};

SmithResult smith(Matrix m) {
    SmithResult out;
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m.front().size();
    std::vector<BigInt> diag;
    std::size_t k = 0;
    while (k < rows && k < cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        std::size_t pr = rows, pc = cols;
        BigInt best = 0;
        for (std::size_t r = k; r < rows; ++r) {
            for (std::size_t c = k; c < cols; ++c) {
                if (m[r][c] != 0 && (best == 0 || abs(m[r][c]) < best)) {
                    best = abs(m[r][c]);
                    pr = r;
                    pc = c;
                }
            }
        }
        if (pr == rows) {
            break;
        }
        std::swap(m[k], m[pr]);
        for (std::size_t r = 0; r < rows; ++r) {
            std::swap(m[r][k], m[r][pc]);
        }
        bool clean = true;
        for (std::size_t r = k + 1; r < rows; ++r) {
            if (m[r][k] == 0) {
                continue;
            }
            BigInt q = m[r][k] / m[k][k];
            for (std::size_t c = k; c < cols; ++c) {
                m[r][c] -= q * m[k][c];
            }
            if (m[r][k] != 0) {
                clean = false;
            }
        }
        for (std::size_t c = k + 1; c < cols; ++c) {
            if (m[k][c] == 0) {
                continue;
            }
            BigInt q = m[k][c] / m[k][k];
            for (std::size_t r = k; r < rows; ++r) {
                m[r][c] -= q * m[r][k];
            }
            if (m[k][c] != 0) {
                clean = false;
            }
        }
        if (!clean) {
            continue;   // a smaller remainder exists; pick a new pivot
        }
        diag.push_back(abs(m[k][k]));
        ++k;
    }
    out.rank = diag.size();
    // normalize the diagonal to invariant factors
    for (std::size_t i = 0; i < diag.size(); ++i) {
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            BigInt g = gcd(diag[i], diag[j]);
            BigInt l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    out.invariant_factors = std::move(diag);
    return out;
}

} // namespace

Homology homology_ranks(const Pseudomanifold& p) {
    const std::size_t nv = p.num_classes(0);
    const std::size_t ne = p.num_classes(1);
    const std::size_t nt = p.num_classes(2);
    const std::size_t nn = p.num_tets();

    // an edge glued to itself reversed folds onto a half-edge ending at a new
    // midpoint vertex; triangles then cross it with coefficient zero
    std::vector<int> midpoint(ne, -1);
    std::size_t nv_all = nv;
    for (std::size_t e = 0; e < ne; ++e) {
        if (p.edge_self_reversed(static_cast<int>(e))) {
            midpoint[e] = static_cast<int>(nv_all++);
        }
    }

    Matrix d1(nv_all, std::vector<BigInt>(ne, 0));
    for (std::size_t e = 0; e < ne; ++e) {
        auto ev = p.edge_vertices(static_cast<int>(e));
        if (midpoint[e] >= 0) {
            d1[static_cast<std::size_t>(midpoint[e])][e] += 1;
            d1[static_cast<std::size_t>(ev[0])][e] -= 1;
        } else {
            d1[static_cast<std::size_t>(ev[1])][e] += 1;
            d1[static_cast<std::size_t>(ev[0])][e] -= 1;
        }
    }

    Matrix d2(ne, std::vector<BigInt>(nt, 0));
    for (std::size_t t = 0; t < nt; ++t) {
        const SubFace& rep = p.face_classes(2)[t].members.front();
        auto fc = face_corners(rep.local);
        // boundary of [p,q,r] = [q,r] - [p,r] + [p,q]
        const std::array<std::array<int, 2>, 3> sides{{{fc[1], fc[2]}, {fc[0], fc[2]}, {fc[0], fc[1]}}};
        const std::array<int, 3> signs{1, -1, 1};
        for (std::size_t i = 0; i < 3; ++i) {
            int le = edge_index(sides[i][0], sides[i][1]);
            int cls = p.edge_class(rep.tet, le);
            if (midpoint[static_cast<std::size_t>(cls)] >= 0) {
                continue;
            }
            int s = signs[i] * (p.edge_reversed(rep.tet, le) ? -1 : 1);
            d2[static_cast<std::size_t>(cls)][t] += s;
        }
    }

    Matrix d3(nt, std::vector<BigInt>(nn, 0));
    for (std::size_t tet = 0; tet < nn; ++tet) {
        for (int f = 0; f < 4; ++f) {
            FacetRef facet{tet, f};
            int cls = p.triangle_class(facet);
            const SubFace& rep = p.face_classes(2)[static_cast<std::size_t>(cls)].members.front();
            int orient = 1;
            if (!(rep.tet == tet && rep.local == f)) {
                // this facet is the partner of the representative
                auto gl = p.gluing({rep.tet, rep.local});
                auto rc = face_corners(rep.local);
                std::array<int, 3> img{gl->perm[rc[0]], gl->perm[rc[1]], gl->perm[rc[2]]};
                orient = triple_sign(face_corners(f), img);
            }
            int s = (f % 2 == 0 ? 1 : -1) * orient;
            d3[static_cast<std::size_t>(cls)][tet] += s;
        }
    }

    auto s1 = smith(std::move(d1));
    auto s2 = smith(d2);
    auto s3 = smith(std::move(d3));

    Homology h;
    h.betti[0] = static_cast<long>(nv_all) - static_cast<long>(s1.rank);
    h.betti[1] = static_cast<long>(ne) - static_cast<long>(s1.rank) - static_cast<long>(s2.rank);
    h.betti[2] = static_cast<long>(nt) - static_cast<long>(s2.rank) - static_cast<long>(s3.rank);
    h.betti[3] = static_cast<long>(nn) - static_cast<long>(s3.rank);
    for (const BigInt& d : s2.invariant_factors) {
        if (d > 1) {
            h.h1_torsion.push_back(d.str());
        }
    }
    return h;
}

} // namespace mogami
