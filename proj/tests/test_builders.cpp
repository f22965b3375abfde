#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mogami/builders.hpp>

#include "support.hpp"

using namespace mogami;

namespace {

std::size_t link_components(const Pseudomanifold& p, int v) {
    return boundary_link(p, v).size();
}

bool all_cycles(const std::vector<LinkComponent>& comps) {
    return std::all_of(comps.begin(), comps.end(),
                       [](const LinkComponent& c) { return c.kind == LinkComponent::Kind::Cycle; });
}

/// Face counts of a labeled triangle list: vertices, edges, boundary edges.
struct SurfaceCounts {
    std::size_t v = 0, e = 0, boundary_edges = 0;
};

/// Vertices are counted after normalization: a label splits into one vertex
/// per edge-connected fan of triangles around it.
SurfaceCounts count_surface(const std::vector<std::array<std::string, 3>>& tris) {
    std::set<std::string> vs;
    std::map<std::pair<std::string, std::string>, int> deg;
    for (const auto& t : tris) {
        vs.insert(t.begin(), t.end());
        for (int i = 0; i < 3; ++i) {
            auto x = t[static_cast<std::size_t>(i)], y = t[static_cast<std::size_t>((i + 1) % 3)];
            if (y < x) {
                std::swap(x, y);
            }
            ++deg[{x, y}];
        }
    }
    SurfaceCounts c;
    for (const auto& x : vs) {
        std::vector<std::size_t> around;
        for (std::size_t i = 0; i < tris.size(); ++i) {
            if (std::count(tris[i].begin(), tris[i].end(), x) > 0) {
                around.push_back(i);
            }
        }
        std::vector<int> comp(around.size(), -1);
        for (std::size_t s0 = 0; s0 < around.size(); ++s0) {
            if (comp[s0] >= 0) {
                continue;
            }
            ++c.v;
            comp[s0] = static_cast<int>(s0);
            std::vector<std::size_t> stack{s0};
            while (!stack.empty()) {
                auto i = stack.back();
                stack.pop_back();
                for (std::size_t j = 0; j < around.size(); ++j) {
                    int common = 0;
                    for (const auto& y : tris[around[i]]) {
                        common += std::count(tris[around[j]].begin(), tris[around[j]].end(), y) > 0 ? 1 : 0;
                    }
                    if (comp[j] < 0 && common == 2) {
                        comp[j] = static_cast<int>(s0);
                        stack.push_back(j);
                    }
                }
            }
        }
    }
    c.e = deg.size();
    for (const auto& [e, d] : deg) {
        c.boundary_edges += d == 1 ? 1 : 0;
    }
    return c;
}

/// Triangles of a 4x4 torus grid, each square cut along one diagonal.
std::vector<std::array<std::string, 3>> torus_grid() {
    auto lab = [](int i, int j) { return "g" + std::to_string((i + 4) % 4) + std::to_string((j + 4) % 4); };
    std::vector<std::array<std::string, 3>> out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out.push_back({lab(i, j), lab(i + 1, j), lab(i + 1, j + 1)});
            out.push_back({lab(i, j), lab(i, j + 1), lab(i + 1, j + 1)});
        }
    }
    return out;
}

bool edge_connected(const std::vector<std::array<std::string, 3>>& tris) {
    if (tris.empty()) {
        return false;
    }
    std::vector<bool> seen(tris.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    auto share_edge = [](const auto& s, const auto& t) {
        int common = 0;
        for (const auto& x : s) {
            common += std::count(t.begin(), t.end(), x) > 0 ? 1 : 0;
        }
        return common == 2;
    };
    while (!stack.empty()) {
        auto i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < tris.size(); ++j) {
            if (!seen[j] && share_edge(tris[i], tris[j])) {
                seen[j] = true;
                stack.push_back(j);
            }
        }
    }
    return std::find(seen.begin(), seen.end(), false) == seen.end();
}

} // namespace

TEST_CASE("trees of tetrahedra") {
    auto one = tree_of_tetrahedra(TreeSpec{});
    CHECK(one.complex().num_tets() == 1);
    CHECK(one.script.steps.empty());

    auto path3 = tree_of_tetrahedra(TreeSpec::path(3));
    auto g = dual_graph(path3.complex());
    CHECK(g.arcs.size() == 2);
    std::vector<int> degree(3, 0);
    for (const auto& a : g.arcs) {
        ++degree[a.from];
        ++degree[a.to];
    }
    CHECK(std::count(degree.begin(), degree.end(), 1) == 2);

    auto path4 = tree_of_tetrahedra(TreeSpec::path(4)).complex();
    auto star4 = tree_of_tetrahedra(TreeSpec::star(4)).complex();
    CHECK(signature(path4) != signature(star4));
    CHECK_FALSE(testing::brute_isomorphic(path4, star4));
    CHECK(ball_certificate(star4).status == BallCertificate::Status::Certified);

    TreeSpec reuse;
    reuse.children = {{0, 2, Perm4{}}, {0, 2, Perm4{}}};
    CHECK_THROWS_WITH_AS(tree_of_tetrahedra(reuse), doctest::Contains("FacetReuse"), Error);
    TreeSpec forward;
    forward.children = {{1, 0, Perm4{}}};
    CHECK_THROWS_AS(tree_of_tetrahedra(forward), Error);
}

TEST_CASE("tree spec text and random specs replay to their own complex") {
    auto spec = read_tree_spec("0 0 1 0 2 3\n# comment\n1 2 0 1 2 3\n");
    CHECK(spec.num_tets() == 3);
    CHECK_THROWS_WITH_AS(read_tree_spec("0 0 1 1 2 3\n"), doctest::Contains("ParseError"), Error);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        TreeSpec s;
        std::vector<std::pair<std::size_t, int>> free{{0, 0}, {0, 1}, {0, 2}, {0, 3}};
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        for (std::size_t t = 1; t < n; ++t) {
            auto k = std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng);
            auto [parent, facet] = free[k];
            free.erase(free.begin() + static_cast<long>(k));
            Perm4 perm = testing::random_perm(rng);
            s.children.push_back({parent, facet, perm});
            for (int f = 0; f < 4; ++f) {
                if (f != perm[facet]) {
                    free.emplace_back(t, f);
                }
            }
        }
        auto b = tree_of_tetrahedra(s);
        CHECK(b.complex().num_pairings() == n - 1);
        CHECK(signature(replay(b.script).result) == signature(b.complex()));
        CHECK(b.complex().num_classes(2) == 3 * n + 1);
    }
}

TEST_CASE("cone over two triangles is a tree of two tetrahedra") {
    auto b = cone(to_pseudo({{{"a", "b", "c"}}, {{"b", "c", "d"}}}));
    CHECK(b.complex().num_tets() == 2);
    CHECK(b.complex().num_pairings() == 1);
    CHECK(signature(b.complex()) == signature(tree_of_tetrahedra(TreeSpec::path(2)).complex()));
}

TEST_CASE("cone rejects bases that are not strongly connected") {
    CHECK_THROWS_WITH_AS(cone(to_pseudo({{{"a", "b", "c"}}, {{"d", "e", "f"}}})),
                         doctest::Contains("NotStronglyConnected"), Error);
    // meeting at a vertex is not enough
    CHECK_THROWS_WITH_AS(cone(to_pseudo({{{"a", "b", "c"}}, {{"a", "d", "e"}}})),
                         doctest::Contains("NotStronglyConnected"), Error);
    CHECK_THROWS_AS(to_pseudo({{{"a", "b", "c"}}, {{"a", "b", "d"}}, {{"a", "b", "e"}}}), Error);
    CHECK_THROWS_AS(cone(to_pseudo({{{"a", "b", "c"}}}), "a"), Error);
}

TEST_CASE("cones over strongly connected surfaces: Mogami scripts and apex links") {
    std::mt19937_64 rng(8);
    auto grid = torus_grid();
    std::size_t tested = 0;
    for (int trial = 0; trial < 120 && tested < 40; ++trial) {
        std::vector<std::array<std::string, 3>> tris;
        for (const auto& t : grid) {
            if (std::uniform_int_distribution<int>(0, 3)(rng) != 0) {
                tris.push_back(t);
            }
        }
        if (!edge_connected(tris)) {
            CHECK_THROWS_AS(cone(to_pseudo(tris)), Error);
            continue;
        }
        ++tested;
        auto b = cone(to_pseudo(tris));
        auto r = replay(b.script);
        CHECK(signature(r.result) == signature(b.complex()));
        for (const auto& step : r.trace) {
            CHECK(step.kind != "Other");
        }
        auto counts = count_surface(tris);
        auto link = vertex_link(b.complex(), b.labeled.vertex("v"));
        CHECK(link.num_triangles == tris.size());
        CHECK(link.num_edges == counts.e);
        CHECK(link.num_vertices == counts.v);
        CHECK(link.num_boundary_edges == counts.boundary_edges);
    }
    CHECK(tested >= 10);
    // the whole torus: the apex link is closed
    auto full = cone(to_pseudo(grid));
    auto link = vertex_link(full.complex(), full.labeled.vertex("v"));
    CHECK(link.num_boundary_edges == 0);
    CHECK(link.euler_characteristic() == 0);
}

TEST_CASE("cone over a triangulated annulus") {
    auto f = fixture("figure4_annulus_cone");
    const auto& p = f.base.complex();
    CHECK(p.num_tets() == 16);
    CHECK(p.num_classes(0) == 13);
    auto r = replay(f.base.script);
    CHECK(std::any_of(r.trace.begin(), r.trace.end(), [](const StepTrace& s) { return s.kind == "Mogami"; }));
    CHECK(is_simplicial(p));
    auto link = boundary_link(p, f.base.labeled.vertex("v"));
    REQUIRE(link.size() == 2);
    CHECK(all_cycles(link));
    CHECK(link[0].num_edges == 4);
    CHECK(link[1].num_edges == 4);

    auto after = replay(f.scenario);
    CHECK(after.trace.front().kind == "Fold");
    CHECK(after.trace.front().same_tet);
    const auto& q = after.result;
    CHECK_FALSE(is_simplicial(q));
    auto w = simplicial_violation(q);
    REQUIRE(w.has_value());
    CHECK(w->dim == 2);
    // the two triangles on {a, b, w}: both are boundary triangles
    auto tv1 = q.triangle_vertices(w->first);
    auto tv2 = q.triangle_vertices(w->second);
    std::sort(tv1.begin(), tv1.end());
    std::sort(tv2.begin(), tv2.end());
    CHECK(tv1 == tv2);
    LabeledComplex lq{q, f.base.labeled.corner_labels};
    std::array<int, 3> abw{lq.vertex("p0"), lq.vertex("p1"), lq.vertex("w0")};
    std::sort(abw.begin(), abw.end());
    CHECK(tv1 == abw);
    CHECK(q.is_boundary(2, w->first));
    CHECK(q.is_boundary(2, w->second));
}

TEST_CASE("union of two cones pinches the boundary at v") {
    auto f = fixture("figure2_union");
    const auto& p = f.base.complex();
    CHECK(p.num_tets() == 8);
    CHECK(p.num_pairings() == 3 + 3 + 2 + 2);   // two path trees, two closures, two interface triangles
    auto r = replay(f.base.script);
    CHECK(signature(r.result) == signature(p));
    int v = f.base.labeled.vertex("v");
    CHECK(link_components(p, v) == 2);
    auto singular = singular_boundary_vertices(p);
    CHECK(std::find(singular.begin(), singular.end(), v) != singular.end());
}

TEST_CASE("union_mogami: containment, single triangle, interface errors") {
    auto a = cone(to_pseudo({{{"m", "a", "b"}}, {{"m", "b", "c"}}, {{"m", "c", "d"}}, {{"m", "d", "a"}}}), "v");
    auto b = cone(to_pseudo({{{"n", "a", "b"}}, {{"n", "b", "c"}}, {{"n", "c", "d"}}, {{"n", "d", "a"}}}), "v");
    std::size_t off = a.complex().num_tets();
    auto fa = a.labeled.boundary_facet({"v", "a", "b"});
    auto fb = b.labeled.boundary_facet({"v", "a", "b"});
    auto corr_ab = [&](FacetRef x, FacetRef y, const std::map<std::string, std::string>& m = {}) {
        std::vector<std::array<std::string, 4>> joint = a.labeled.corner_labels;
        joint.insert(joint.end(), b.labeled.corner_labels.begin(), b.labeled.corner_labels.end());
        LabeledComplex l{disjoint_union(a.complex(), b.complex()), joint};
        return l.corr(x, {y.tet + off, y.face}, m);
    };

    auto single = union_mogami(a, b, {{fa, fb, corr_ab(fa, fb)}});
    auto direct = unite(disjoint_union(a.complex(), b.complex()), fa, {fb.tet + off, fb.face}, corr_ab(fa, fb));
    CHECK(signature(single.complex()) == signature(direct));
    std::size_t unites = 0;
    for (const auto& s : single.script.steps) {
        unites += std::get<GluingStep>(s).unite ? 1 : 0;
    }
    CHECK(unites == 3 + 3 + 1);

    // A and B survive as subcomplexes: their pairings are kept
    const auto& pc = single.complex();
    for (const auto& pr : a.complex().pairings()) {
        CHECK(pc.is_paired(pr.a));
        CHECK(pc.gluing(pr.a)->other == pr.b);
    }
    for (const auto& pr : b.complex().pairings()) {
        FacetRef x{pr.a.tet + off, pr.a.face};
        CHECK(pc.is_paired(x));
        CHECK(pc.gluing(x)->other == FacetRef{pr.b.tet + off, pr.b.face});
    }

    auto fa_base = a.labeled.boundary_facet({"m", "c", "d"});
    auto fb_base = b.labeled.boundary_facet({"n", "c", "d"});
    CHECK_THROWS_WITH_AS(union_mogami(a, b, {{fa, fb, corr_ab(fa, fb)}, {fa_base, fb_base, {0, 1, 2}}}),
                         doctest::Contains("InterfaceNotConnected"), Error);

    // v*cd glued with a corr that carries v elsewhere: connected, but no
    // fixed shared vertex at its turn
    auto fa2 = a.labeled.boundary_facet({"v", "c", "d"});
    auto fb2 = b.labeled.boundary_facet({"v", "c", "d"});
    auto rotated = corr_ab(fa2, fb2, {{"v", "c"}, {"c", "d"}, {"d", "v"}});
    CHECK_THROWS_WITH_AS(union_mogami(a, b, {{fa, fb, corr_ab(fa, fb)}, {fa2, fb2, rotated}}),
                         doctest::Contains("NoIncidenceOrder"), Error);
}

TEST_CASE("Mogami gluing then healing, and the LC reordering") {
    auto f = fixture("figure1_ball");
    const auto& base = f.base.complex();
    CHECK(base.num_tets() == 7);
    CHECK(interior_vertices(base).empty());
    CHECK(ball_certificate(base).status == BallCertificate::Status::Certified);
    int v = f.base.labeled.vertex("v");

    REQUIRE(f.scenario.steps.size() == 2);
    auto vertex_pair = std::get<GluingStep>(f.scenario.steps[0]);
    auto heal_pair = std::get<GluingStep>(f.scenario.steps[1]);
    CHECK(classify_gluing(base, vertex_pair.f1, vertex_pair.f2) == GluingKind::Mogami);
    CHECK(classify_gluing(base, heal_pair.f1, heal_pair.f2) == GluingKind::Fold);

    auto after_glue = glue(base, vertex_pair.f1, vertex_pair.f2, vertex_pair.corr);
    auto link = boundary_link(after_glue, v);
    REQUIRE(link.size() == 2);
    std::vector<std::size_t> sizes{link[0].num_edges, link[1].num_edges};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{2, 3});   // the digon and the triangle
    CHECK(wounds(after_glue).size() >= 1);
    CHECK_FALSE(is_simplicial(after_glue));

    auto r = replay(f.scenario);
    CHECK(r.trace[0].kind == "Mogami");
    CHECK(r.trace[1].kind == "Healing");
    CHECK(link_components(r.result, v) == 1);

    MoveScript reversed = f.scenario;
    std::swap(reversed.steps[0], reversed.steps[1]);
    reversed.mode = ScriptMode::LC;
    auto rr = replay(reversed);
    CHECK(rr.trace[0].kind == "Fold");
    CHECK(rr.trace[1].kind == "Fold");
    CHECK(signature(rr.result) == signature(r.result));
}

TEST_CASE("non-homeomorphic fold: three link cycles") {
    auto f = fixture("ex_nonhom_scenario");
    const auto& base = f.base.complex();
    CHECK(base.num_tets() == 18);
    CHECK(ball_certificate(base).status == BallCertificate::Status::Certified);
    auto l = f.base.labeled;
    REQUIRE(f.scenario.steps.size() == 3);

    MoveScript two = f.scenario;
    two.steps.pop_back();
    auto p = replay(two).result;
    LabeledComplex lp{p, l.corner_labels};
    int v = lp.vertex("v"), w = lp.vertex("w");
    CHECK(link_components(p, v) == 2);
    CHECK(link_components(p, w) == 2);

    auto r = replay(f.scenario);
    CHECK(r.trace[0].kind == "Mogami");
    CHECK(r.trace[1].kind == "Mogami");
    CHECK(r.trace[2].kind == "Fold");
    CHECK(r.trace[2].strict_fold);
    LabeledComplex lq{r.result, l.corner_labels};
    auto link = boundary_link(r.result, lq.vertex("v"));
    CHECK(link.size() == 3);
    CHECK(all_cycles(link));
    CHECK(lq.vertex("v") == lq.vertex("w"));
}

TEST_CASE("fixtures are deterministic and replay to their base") {
    for (const auto& name : fixture_names()) {
        auto a = fixture(name);
        auto b = fixture(name);
        CHECK(a.name == name);
        CHECK(write_pair(a.base.complex()) == write_pair(b.base.complex()));
        CHECK(write_script(a.scenario) == write_script(b.scenario));
        CHECK(signature(replay(a.base.script).result) == signature(a.base.complex()));
    }
    CHECK_THROWS_AS(fixture("nope"), Error);
}
