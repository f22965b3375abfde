#include <mogami/core.hpp>

#include "union_find.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mogami {

namespace {

/// Link-vertex id of the end of local edge {c, x} sitting at corner c.
int edge_end(const Pseudomanifold& p, std::size_t tet, int c, int x) {
    int e = edge_index(c, x);
    int cls = p.edge_class(tet, e);
    if (p.edge_self_reversed(cls)) {
        return 2 * cls;
    }
    bool at_tail = c < x;  // local orientation runs from the smaller corner
    if (p.edge_reversed(tet, e)) {
        at_tail = !at_tail;
    }
    return 2 * cls + (at_tail ? 0 : 1);
}

struct LinkGraph {
    std::map<int, int> local;                 // edge-end id -> dense index
    std::vector<std::pair<int, int>> edges;   // dense endpoints

    int node(int id) {
        auto [it, inserted] = local.emplace(id, static_cast<int>(local.size()));
        return it->second;
    }
};

std::vector<LinkComponent> components_of(LinkGraph& g) {
    const std::size_t n = g.local.size();
    detail::UnionFind uf(n);
    std::vector<int> degree(n, 0);
    for (auto [a, b] : g.edges) {
        uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        ++degree[static_cast<std::size_t>(a)];
        ++degree[static_cast<std::size_t>(b)];
    }
    std::size_t count = 0;
    std::vector<int> comp = detail::number_classes(uf, count);
    std::vector<LinkComponent> out(count);
    for (auto [id, idx] : g.local) {
        auto& c = out[static_cast<std::size_t>(comp[static_cast<std::size_t>(idx)])];
        c.edge_ends.push_back(id);
        ++c.num_vertices;
        int d = degree[static_cast<std::size_t>(idx)];
        if (d > 2) {
            c.kind = LinkComponent::Kind::Branched;
        } else if (d < 2 && c.kind == LinkComponent::Kind::Cycle) {
            c.kind = LinkComponent::Kind::Path;
        }
    }
    for (auto [a, b] : g.edges) {
        ++out[static_cast<std::size_t>(comp[static_cast<std::size_t>(a)])].num_edges;
        (void)b;
    }
    return out;
}

} // namespace

BoundaryComplex boundary(const Pseudomanifold& p) {
    BoundaryComplex out;
    std::map<int, int> edge_slot;
    for (FacetRef f : p.boundary_facets()) {
        out.triangles.push_back(p.triangle_class(f));
        auto fc = face_corners(f.face);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                int e = p.edge_class(f.tet, edge_index(fc[i], fc[j]));
                auto [it, inserted] = edge_slot.emplace(e, static_cast<int>(out.edges.size()));
                if (inserted) {
                    out.edges.push_back(e);
                    out.edge_degree.push_back(0);
                }
                ++out.edge_degree[static_cast<std::size_t>(it->second)];
            }
        }
    }
    std::sort(out.triangles.begin(), out.triangles.end());
    for (std::size_t v = 0; v < p.num_classes(0); ++v) {
        if (p.is_boundary(0, static_cast<int>(v))) {
            out.vertices.push_back(static_cast<int>(v));
        }
    }
    out.closed = std::all_of(out.edge_degree.begin(), out.edge_degree.end(), [](int d) { return d == 2; });
    int self_rev = 0;
    for (int e : out.edges) {
        if (p.edge_self_reversed(e)) {
            ++self_rev;
        }
    }
    out.euler_characteristic = static_cast<int>(out.vertices.size()) + self_rev -
                               static_cast<int>(out.edges.size()) + static_cast<int>(out.triangles.size());

    // components through shared vertices of boundary triangles
    detail::UnionFind uf(p.num_classes(0));
    for (FacetRef f : p.boundary_facets()) {
        auto fc = face_corners(f.face);
        int v0 = p.vertex_class(f.tet, fc[0]);
        for (std::size_t i = 1; i < 3; ++i) {
            uf.unite(static_cast<std::size_t>(v0), static_cast<std::size_t>(p.vertex_class(f.tet, fc[i])));
        }
    }
    std::set<std::size_t> roots;
    for (int v : out.vertices) {
        roots.insert(uf.find(static_cast<std::size_t>(v)));
    }
    out.num_components = roots.size();
    return out;
}

std::vector<LinkComponent> boundary_link(const Pseudomanifold& p, int vertex) {
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= p.num_classes(0)) {
        throw Error(ErrorCode::BadReference, "vertex class out of range");
    }
    if (!p.is_boundary(0, vertex)) {
        throw Error(ErrorCode::InteriorVertex, "vertex " + std::to_string(vertex) + " is interior");
    }
    LinkGraph g;
    for (FacetRef f : p.boundary_facets()) {
        auto fc = face_corners(f.face);
        for (std::size_t i = 0; i < 3; ++i) {
            int c = fc[i];
            if (p.vertex_class(f.tet, c) != vertex) {
                continue;
            }
            int a = fc[(i + 1) % 3];
            int b = fc[(i + 2) % 3];
            int na = g.node(edge_end(p, f.tet, c, a));
            int nb = g.node(edge_end(p, f.tet, c, b));
            g.edges.emplace_back(na, nb);
        }
    }
    return components_of(g);
}

std::vector<int> singular_boundary_vertices(const Pseudomanifold& p) {
    std::vector<int> out;
    for (std::size_t v = 0; v < p.num_classes(0); ++v) {
        if (!p.is_boundary(0, static_cast<int>(v))) {
            continue;
        }
        auto comps = boundary_link(p, static_cast<int>(v));
        if (comps.size() != 1 || comps.front().kind != LinkComponent::Kind::Cycle) {
            out.push_back(static_cast<int>(v));
        }
    }
    return out;
}

namespace {

std::vector<SimplicialWitness> collect_violations(const Pseudomanifold& p, bool first_only) {
    std::vector<SimplicialWitness> boundary_pairs, triangle_pairs, degenerate, edge_pairs, tet_pairs;

    for (std::size_t e = 0; e < p.num_classes(1); ++e) {
        auto ev = p.edge_vertices(static_cast<int>(e));
        if (ev[0] == ev[1]) {
            degenerate.push_back({1, static_cast<int>(e), -1});
        }
    }

    std::map<std::array<int, 3>, int> tri_by_vertices;
    for (std::size_t t = 0; t < p.num_classes(2); ++t) {
        auto tv = p.triangle_vertices(static_cast<int>(t));
        std::sort(tv.begin(), tv.end());
        auto [it, inserted] = tri_by_vertices.emplace(tv, static_cast<int>(t));
        if (!inserted) {
            SimplicialWitness w{2, it->second, static_cast<int>(t)};
            if (p.is_boundary(2, it->second) && p.is_boundary(2, static_cast<int>(t))) {
                boundary_pairs.push_back(w);
            } else {
                triangle_pairs.push_back(w);
            }
        }
    }

    std::map<std::array<int, 2>, int> edge_by_vertices;
    for (std::size_t e = 0; e < p.num_classes(1); ++e) {
        auto ev = p.edge_vertices(static_cast<int>(e));
        std::sort(ev.begin(), ev.end());
        auto [it, inserted] = edge_by_vertices.emplace(ev, static_cast<int>(e));
        if (!inserted) {
            edge_pairs.push_back({1, it->second, static_cast<int>(e)});
        }
    }

    std::map<std::array<int, 4>, int> tet_by_vertices;
    for (std::size_t t = 0; t < p.num_tets(); ++t) {
        std::array<int, 4> tv{};
        for (int c = 0; c < 4; ++c) {
            tv[static_cast<std::size_t>(c)] = p.vertex_class(t, c);
        }
        std::sort(tv.begin(), tv.end());
        auto [it, inserted] = tet_by_vertices.emplace(tv, static_cast<int>(t));
        if (!inserted) {
            tet_pairs.push_back({3, it->second, static_cast<int>(t)});
        }
    }

    std::vector<SimplicialWitness> out;
    for (auto* bucket : {&boundary_pairs, &triangle_pairs, &degenerate, &edge_pairs, &tet_pairs}) {
        out.insert(out.end(), bucket->begin(), bucket->end());
        if (first_only && !out.empty()) {
            out.resize(1);
            return out;
        }
    }
    return out;
}

} // namespace

std::optional<SimplicialWitness> simplicial_violation(const Pseudomanifold& p) {
    auto all = collect_violations(p, true);
    if (all.empty()) {
        return std::nullopt;
    }
    return all.front();
}

std::vector<SimplicialWitness> simplicial_violations(const Pseudomanifold& p) {
    return collect_violations(p, false);
}

bool is_simplicial(const Pseudomanifold& p) { return !simplicial_violation(p).has_value(); }

std::vector<int> interior_vertices(const Pseudomanifold& p) {
    std::vector<int> out;
    for (std::size_t v = 0; v < p.num_classes(0); ++v) {
        if (!p.is_boundary(0, static_cast<int>(v))) {
            out.push_back(static_cast<int>(v));
        }
    }
    return out;
}

DualGraph dual_graph(const Pseudomanifold& p) {
    DualGraph g;
    g.num_nodes = p.num_tets();
    for (std::size_t i = 0; i < p.pairings().size(); ++i) {
        const Pairing& q = p.pairings()[i];
        g.arcs.push_back({q.a.tet, q.b.tet, i});
    }
    return g;
}

bool strongly_connected(const Pseudomanifold& p) { return p.num_tets() > 0 && p.num_components() == 1; }

bool link_strongly_connected(const Pseudomanifold& p, int vertex) {
    // link triangles are corner occurrences of the vertex; adjacency through
    // interior facets containing the corner
    std::vector<CornerRef> occ;
    for (const SubFace& m : p.face_classes(0).at(static_cast<std::size_t>(vertex)).members) {
        occ.push_back({m.tet, m.local});
    }
    if (occ.empty()) {
        return false;
    }
    std::set<CornerRef> seen{occ.front()};
    std::vector<CornerRef> stack{occ.front()};
    while (!stack.empty()) {
        CornerRef cur = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            if (f == cur.corner) {
                continue;
            }
            auto gl = p.gluing({cur.tet, f});
            if (!gl) {
                continue;
            }
            CornerRef next{gl->other.tet, gl->perm[cur.corner]};
            if (seen.insert(next).second) {
                stack.push_back(next);
            }
        }
    }
    return seen.size() == occ.size();
}

bool VertexLink::is_disk() const {
    return euler_characteristic() == 1 && num_boundary_edges > 0 && num_boundary_cycles == 1 &&
           boundary_is_cycles;
}

bool VertexLink::is_sphere() const { return euler_characteristic() == 2 && num_boundary_edges == 0; }

VertexLink vertex_link(const Pseudomanifold& p, int vertex) {
    VertexLink out;
    const auto& members = p.face_classes(0).at(static_cast<std::size_t>(vertex)).members;
    out.num_triangles = members.size();
    std::set<int> ends;
    std::size_t paired_sides = 0;
    LinkGraph boundary_graph;
    for (const SubFace& m : members) {
        int c = m.local;
        for (int x = 0; x < 4; ++x) {
            if (x != c) {
                ends.insert(edge_end(p, m.tet, c, x));
            }
        }
        for (int f = 0; f < 4; ++f) {
            if (f == c) {
                continue;
            }
            if (p.is_paired({m.tet, f})) {
                ++paired_sides;
            } else {
                ++out.num_boundary_edges;
                std::array<int, 2> others{};
                std::size_t k = 0;
                for (int x = 0; x < 4; ++x) {
                    if (x != c && x != f) {
                        others[k++] = x;
                    }
                }
                int na = boundary_graph.node(edge_end(p, m.tet, c, others[0]));
                int nb = boundary_graph.node(edge_end(p, m.tet, c, others[1]));
                boundary_graph.edges.emplace_back(na, nb);
            }
        }
    }
    out.num_vertices = ends.size();
    out.num_edges = paired_sides / 2 + out.num_boundary_edges;
    auto comps = components_of(boundary_graph);
    out.num_boundary_cycles = comps.size();
    out.boundary_is_cycles = std::all_of(comps.begin(), comps.end(), [](const LinkComponent& c) {
        return c.kind == LinkComponent::Kind::Cycle;
    });
    return out;
}

int euler_characteristic(const Pseudomanifold& p) {
    int self_rev = 0;
    for (std::size_t e = 0; e < p.num_classes(1); ++e) {
        if (p.edge_self_reversed(static_cast<int>(e))) {
            ++self_rev;
        }
    }
    return static_cast<int>(p.num_classes(0)) + self_rev - static_cast<int>(p.num_classes(1)) +
           static_cast<int>(p.num_classes(2)) - static_cast<int>(p.num_tets());
}

} // namespace mogami
