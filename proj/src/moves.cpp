#include <mogami/moves.hpp>

#include <algorithm>

namespace mogami {

namespace {

constexpr std::array<std::array<int, 3>, 6> kTriplePerms{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

void require_boundary(const Pseudomanifold& p, FacetRef f) {
    if (f.tet >= p.num_tets() || f.face < 0 || f.face > 3) {
        throw Error(ErrorCode::BadReference, "facet out of range");
    }
    if (p.is_paired(f)) {
        throw Error(ErrorCode::NotBoundary,
                    "facet " + std::to_string(f.tet) + "." + std::to_string(f.face) + " is already paired");
    }
}

void require_pair(const Pseudomanifold& p, FacetRef f1, FacetRef f2) {
    require_boundary(p, f1);
    require_boundary(p, f2);
    if (f1 == f2) {
        throw Error(ErrorCode::SameFacet, "cannot glue a facet to itself");
    }
}

/// Orientation of corner x on local edge {x, y} relative to the class
/// representative: 0 = tail, 1 = head, -1 when the class is self-reversed.
int end_of(const Pseudomanifold& p, std::size_t tet, int x, int y) {
    int e = edge_index(x, y);
    if (p.edge_self_reversed(p.edge_class(tet, e))) {
        return -1;
    }
    bool tail = x < y;
    if (p.edge_reversed(tet, e)) {
        tail = !tail;
    }
    return tail ? 0 : 1;
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> facet_vertices(const Pseudomanifold& p, FacetRef f) {
    std::vector<int> out;
    for (int c : face_corners(f.face)) {
        out.push_back(p.vertex_class(f.tet, c));
    }
    return sorted_unique(out);
}

std::vector<int> facet_edges(const Pseudomanifold& p, FacetRef f) {
    auto fc = face_corners(f.face);
    return sorted_unique({p.edge_class(f.tet, edge_index(fc[1], fc[2])),
                          p.edge_class(f.tet, edge_index(fc[0], fc[2])),
                          p.edge_class(f.tet, edge_index(fc[0], fc[1]))});
}

std::vector<int> common(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

std::string_view to_string(GluingKind k) {
    switch (k) {
    case GluingKind::Unite: return "Unite";
    case GluingKind::Fold: return "Fold";
    case GluingKind::LC: return "LC";
    case GluingKind::Mogami: return "Mogami";
    case GluingKind::Healing: return "Healing";
    case GluingKind::Other: return "Other";
    }
    return "?";
}

std::string_view to_string(UngluingKind k) {
    switch (k) {
    case UngluingKind::Split: return "Split";
    case UngluingKind::Spread: return "Spread";
    case UngluingKind::Other: return "Unglue";
    }
    return "?";
}

std::string_view to_string(ScriptMode m) {
    switch (m) {
    case ScriptMode::LC: return "LC";
    case ScriptMode::Mogami: return "MOGAMI";
    case ScriptMode::Free: return "FREE";
    }
    return "?";
}

Intersection triangle_intersection(const Pseudomanifold& p, FacetRef f1, FacetRef f2) {
    return {common(facet_vertices(p, f1), facet_vertices(p, f2)), common(facet_edges(p, f1), facet_edges(p, f2))};
}

Pseudomanifold glue(const Pseudomanifold& p, FacetRef f1, FacetRef f2, const std::array<int, 3>& corr) {
    require_pair(p, f1, f2);
    return p.with_pairing(Pairing{f1, f2, corr});
}

GluingKind classify_gluing(const Pseudomanifold& p, FacetRef f1, FacetRef f2) {
    require_pair(p, f1, f2);
    if (p.component_of(f1.tet) != p.component_of(f2.tet)) {
        return GluingKind::Unite;
    }
    Intersection in = triangle_intersection(p, f1, f2);
    switch (in.edges.size()) {
    case 1: return GluingKind::Fold;
    case 2: return GluingKind::Healing;
    case 3: return GluingKind::LC;
    default: break;
    }
    return in.vertices.empty() ? GluingKind::Other : GluingKind::Mogami;
}

bool is_strict_fold(const Pseudomanifold& p, FacetRef f1, FacetRef f2) {
    if (classify_gluing(p, f1, f2) != GluingKind::Fold) {
        return false;
    }
    return triangle_intersection(p, f1, f2).vertices.size() == 2;
}

bool respects_shared_edges(const Pseudomanifold& p, FacetRef f1, FacetRef f2, const std::array<int, 3>& corr) {
    auto shared = triangle_intersection(p, f1, f2).edges;
    auto fc = face_corners(f1.face);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            int e = p.edge_class(f1.tet, edge_index(fc[i], fc[j]));
            if (!std::binary_search(shared.begin(), shared.end(), e)) {
                continue;
            }
            if (p.edge_class(f2.tet, edge_index(corr[i], corr[j])) != e) {
                return false;
            }
            if (end_of(p, f1.tet, fc[i], fc[j]) != end_of(p, f2.tet, corr[i], corr[j])) {
                return false;
            }
        }
    }
    return true;
}

bool fixes_shared_vertex(const Pseudomanifold& p, FacetRef f1, FacetRef f2, const std::array<int, 3>& corr) {
    auto fc = face_corners(f1.face);
    for (std::size_t i = 0; i < 3; ++i) {
        if (p.vertex_class(f1.tet, fc[i]) == p.vertex_class(f2.tet, corr[i])) {
            return true;
        }
    }
    return false;
}

std::optional<std::array<int, 3>> derived_corr(const Pseudomanifold& p, FacetRef f1, FacetRef f2) {
    auto fc1 = face_corners(f1.face);
    auto fc2 = face_corners(f2.face);
    std::optional<std::array<int, 3>> best;
    int best_score = -1;
    for (const auto& pi : kTriplePerms) {
        std::array<int, 3> corr{fc2[static_cast<std::size_t>(pi[0])], fc2[static_cast<std::size_t>(pi[1])],
                                fc2[static_cast<std::size_t>(pi[2])]};
        if (!respects_shared_edges(p, f1, f2, corr)) {
            continue;
        }
        int score = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            if (p.vertex_class(f1.tet, fc1[i]) == p.vertex_class(f2.tet, corr[i])) {
                ++score;
            }
        }
        if (score > best_score) {
            best_score = score;
            best = corr;
        }
    }
    return best;
}

Pseudomanifold unite(const Pseudomanifold& p, FacetRef f1, FacetRef f2, const std::array<int, 3>& corr) {
    if (classify_gluing(p, f1, f2) != GluingKind::Unite) {
        throw Error(ErrorCode::KindMismatch, "facets lie in one component; not a unite");
    }
    return glue(p, f1, f2, corr);
}

Pseudomanifold fold(const Pseudomanifold& p, FacetRef f1, FacetRef f2) {
    GluingKind k = classify_gluing(p, f1, f2);
    if (k != GluingKind::Fold) {
        throw Error(ErrorCode::KindMismatch, "not a fold: " + std::string(to_string(k)));
    }
    auto corr = derived_corr(p, f1, f2);
    if (!corr) {
        throw Error(ErrorCode::KindMismatch, "shared edge cannot be matched with itself");
    }
    return glue(p, f1, f2, *corr);
}

Pseudomanifold lc_glue(const Pseudomanifold& p, FacetRef f1, FacetRef f2) {
    GluingKind k = classify_gluing(p, f1, f2);
    if (k != GluingKind::Fold && k != GluingKind::Healing && k != GluingKind::LC) {
        throw Error(ErrorCode::KindMismatch, "not an LC gluing: " + std::string(to_string(k)));
    }
    auto corr = derived_corr(p, f1, f2);
    if (!corr) {
        throw Error(ErrorCode::KindMismatch, "shared edges cannot be matched with themselves");
    }
    return glue(p, f1, f2, *corr);
}

Pseudomanifold mogami_glue(const Pseudomanifold& p, FacetRef f1, FacetRef f2,
                           std::optional<std::array<int, 3>> corr) {
    GluingKind k = classify_gluing(p, f1, f2);
    if (k == GluingKind::Unite || k == GluingKind::Other) {
        throw Error(ErrorCode::KindMismatch, "triangles do not intersect");
    }
    if (corr) {
        if (!fixes_shared_vertex(p, f1, f2, *corr)) {
            throw Error(ErrorCode::KindMismatch, "corr does not fix a shared vertex");
        }
        return glue(p, f1, f2, *corr);
    }
    if (k == GluingKind::Mogami) {
        throw Error(ErrorCode::AmbiguousCorr, "triangles share only vertices; corr required");
    }
    auto derived = derived_corr(p, f1, f2);
    if (!derived) {
        throw Error(ErrorCode::KindMismatch, "shared edges cannot be matched with themselves");
    }
    return glue(p, f1, f2, *derived);
}

Pseudomanifold healing(const Pseudomanifold& p, FacetRef f1, FacetRef f2) {
    GluingKind k = classify_gluing(p, f1, f2);
    if (k != GluingKind::Healing) {
        throw Error(ErrorCode::KindMismatch, "not a wound: " + std::string(to_string(k)));
    }
    auto corr = derived_corr(p, f1, f2);
    if (!corr) {
        throw Error(ErrorCode::NotHealable, "the two shared edges cannot both be matched with themselves");
    }
    return glue(p, f1, f2, *corr);
}

std::vector<Wound> wounds(const Pseudomanifold& p) {
    std::vector<Wound> out;
    auto facets = p.boundary_facets();
    for (std::size_t i = 0; i < facets.size(); ++i) {
        for (std::size_t j = i + 1; j < facets.size(); ++j) {
            if (p.component_of(facets[i].tet) != p.component_of(facets[j].tet)) {
                continue;
            }
            if (triangle_intersection(p, facets[i], facets[j]).edges.size() != 2) {
                continue;
            }
            if (auto corr = derived_corr(p, facets[i], facets[j])) {
                out.push_back({facets[i], facets[j], *corr});
            }
        }
    }
    return out;
}

int interior_edge_count(const Pseudomanifold& p, int tri) {
    int count = 0;
    for (int e : p.triangle_edges(tri)) {
        if (!p.is_boundary(1, e)) {
            ++count;
        }
    }
    return count;
}

UngluingKind classify_ungluing(const Pseudomanifold& p, int tri) {
    if (tri < 0 || static_cast<std::size_t>(tri) >= p.num_classes(2)) {
        throw Error(ErrorCode::BadReference, "triangle class out of range");
    }
    if (p.is_boundary(2, tri)) {
        throw Error(ErrorCode::NotInterior, "triangle " + std::to_string(tri) + " is a boundary triangle");
    }
    switch (interior_edge_count(p, tri)) {
    case 0: return UngluingKind::Split;
    case 1: return UngluingKind::Spread;
    default: return UngluingKind::Other;
    }
}

Pseudomanifold unglue(const Pseudomanifold& p, int tri) {
    classify_ungluing(p, tri);
    auto idx = p.pairing_of_triangle(tri);
    return p.without_pairing(p.pairings()[*idx].a);
}

Pseudomanifold split(const Pseudomanifold& p, int tri) {
    UngluingKind k = classify_ungluing(p, tri);
    if (k != UngluingKind::Split) {
        throw Error(ErrorCode::KindMismatch, "triangle has interior edges; not a split");
    }
    return unglue(p, tri);
}

Pseudomanifold spread(const Pseudomanifold& p, int tri) {
    UngluingKind k = classify_ungluing(p, tri);
    if (k != UngluingKind::Spread) {
        throw Error(ErrorCode::KindMismatch, "triangle does not have exactly one interior edge");
    }
    return unglue(p, tri);
}

namespace {

[[noreturn]] void reject(std::size_t index, const std::string& why) {
    throw Error(ErrorCode::StepRejected, "step " + std::to_string(index) + ": " + why);
}

} // namespace

ReplayResult replay(const MoveScript& script, const ReplayOptions& opts) {
    ReplayResult out;
    out.result = script.initial;
    bool prefix = true;   // still inside the leading run of unites
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        Pseudomanifold& p = out.result;
        if (const auto* g = std::get_if<GluingStep>(&script.steps[i])) {
            GluingKind kind{};
            try {
                kind = classify_gluing(p, g->f1, g->f2);
            } catch (const Error& e) {
                reject(i, e.what());
            }
            StepTrace tr;
            tr.kind = std::string(to_string(kind));
            tr.same_tet = g->f1.tet == g->f2.tet;
            tr.strict_fold = kind == GluingKind::Fold && is_strict_fold(p, g->f1, g->f2);
            if (opts.forbid_same_tet && tr.same_tet) {
                reject(i, "both facets belong to tetrahedron " + std::to_string(g->f1.tet));
            }
            if (g->unite && kind != GluingKind::Unite) {
                reject(i, "declared unite but the gluing is " + tr.kind);
            }
            if (!g->unite && kind == GluingKind::Unite) {
                reject(i, "gluing joins two components; declare it with U");
            }
            if (kind != GluingKind::Unite) {
                prefix = false;
            }
            if (script.mode != ScriptMode::Free) {
                const bool lc_kind =
                    kind == GluingKind::Fold || kind == GluingKind::Healing || kind == GluingKind::LC;
                if (kind == GluingKind::Unite && !prefix) {
                    reject(i, "unite after the initial tree was completed");
                }
                if (kind == GluingKind::Other) {
                    reject(i, "triangles do not intersect");
                }
                if (kind == GluingKind::Mogami && script.mode == ScriptMode::LC) {
                    reject(i, "Mogami gluing is not an LC gluing");
                }
                if (lc_kind && !respects_shared_edges(p, g->f1, g->f2, g->corr)) {
                    reject(i, "corr does not identify the shared edges with themselves");
                }
                if (kind == GluingKind::Mogami && !fixes_shared_vertex(p, g->f1, g->f2, g->corr)) {
                    reject(i, "corr does not fix a shared vertex");
                }
            }
            try {
                p = glue(p, g->f1, g->f2, g->corr);
            } catch (const Error& e) {
                reject(i, e.what());
            }
            out.trace.push_back(tr);
        } else {
            const auto& u = std::get<UngluingStep>(script.steps[i]);
            if (script.mode != ScriptMode::Free) {
                reject(i, "ungluing is not admitted in " + std::string(to_string(script.mode)) + " mode");
            }
            UngluingKind kind{};
            try {
                kind = classify_ungluing(p, u.triangle);
            } catch (const Error& e) {
                reject(i, e.what());
            }
            if (kind != u.kind) {
                reject(i, "declared " + std::string(to_string(u.kind)) + " but triangle admits " +
                              std::string(to_string(kind)));
            }
            p = unglue(p, u.triangle);
            out.trace.push_back({std::string(to_string(kind)), false, false});
        }
    }
    return out;
}

} // namespace mogami
