#include <mogami/builders.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace mogami {

namespace {

std::vector<std::array<std::string, 4>> class_labels(const Pseudomanifold& p) {
    std::vector<std::array<std::string, 4>> out(p.num_tets());
    for (std::size_t t = 0; t < p.num_tets(); ++t) {
        for (int c = 0; c < 4; ++c) {
            out[t][static_cast<std::size_t>(c)] = "v" + std::to_string(p.vertex_class(t, c));
        }
    }
    return out;
}

Pseudomanifold separate_tets(std::size_t n) {
    return Pseudomanifold::build(n, std::span<const Pairing>{});
}

/// Corner of tetrahedron `to` carrying the label of corner `c` of `from`.
std::array<int, 3> label_corr(const std::vector<std::array<std::string, 4>>& labels, FacetRef from, FacetRef to) {
    std::array<int, 3> corr{};
    auto fc = face_corners(from.face);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& want = labels[from.tet][static_cast<std::size_t>(fc[i])];
        int hit = -1;
        for (int c : face_corners(to.face)) {
            if (labels[to.tet][static_cast<std::size_t>(c)] == want) {
                hit = c;
            }
        }
        if (hit < 0) {
            throw Error(ErrorCode::BadCorr, "label '" + want + "' missing on the target facet");
        }
        corr[i] = hit;
    }
    return corr;
}

GluingStep shifted(GluingStep g, std::size_t offset) {
    g.f1.tet += offset;
    g.f2.tet += offset;
    return g;
}

} // namespace

TreeSpec TreeSpec::path(std::size_t n) {
    TreeSpec s;
    int used = 3;   // facet of the current end already glued to its parent
    for (std::size_t t = 1; t < n; ++t) {
        int f = (used + 1) % 4;
        s.children.push_back({t - 1, f, Perm4{}});
        used = f;
    }
    return s;
}

TreeSpec TreeSpec::star(std::size_t n) {
    if (n > 5) {
        throw Error(ErrorCode::BadReference, "a star has at most 4 leaves");
    }
    TreeSpec s;
    for (std::size_t t = 1; t < n; ++t) {
        s.children.push_back({0, static_cast<int>(t - 1), Perm4{}});
    }
    return s;
}

TreeSpec read_tree_spec(const std::string& text) {
    TreeSpec s;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<long> v;
        for (long x; ls >> x;) {
            v.push_back(x);
        }
        if (v.empty() && ls.eof()) {
            continue;
        }
        if (v.size() != 6 || !ls.eof() || v[0] < 0) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'parent facet g0 g1 g2 g3'");
        }
        for (std::size_t i = 1; i < 6; ++i) {
            if (v[i] < 0 || v[i] > 3) {
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": value out of range");
            }
        }
        Perm4 g(static_cast<int>(v[2]), static_cast<int>(v[3]), static_cast<int>(v[4]), static_cast<int>(v[5]));
        if (!g.is_valid()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": not a permutation");
        }
        s.children.push_back({static_cast<std::size_t>(v[0]), static_cast<int>(v[1]), g});
    }
    return s;
}

Built tree_of_tetrahedra(const TreeSpec& spec) {
    std::size_t n = spec.num_tets();
    Built b;
    b.script.mode = ScriptMode::LC;
    b.script.initial = separate_tets(n);
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < spec.children.size(); ++i) {
        const auto& node = spec.children[i];
        std::size_t child = i + 1;
        if (node.parent >= child || node.facet < 0 || node.facet > 3 || !node.perm.is_valid()) {
            throw Error(ErrorCode::BadReference, "child " + std::to_string(child) + ": bad parent, facet or perm");
        }
        if (!used.insert(node.parent * 4 + static_cast<std::size_t>(node.facet)).second) {
            throw Error(ErrorCode::FacetReuse, "facet " + std::to_string(node.facet) + " of tetrahedron " +
                                                   std::to_string(node.parent) + " used twice");
        }
        used.insert(child * 4 + static_cast<std::size_t>(node.perm[node.facet]));
        GluingStep g;
        g.f1 = {node.parent, node.facet};
        g.f2 = {child, node.perm[node.facet]};
        auto fc = face_corners(node.facet);
        for (std::size_t k = 0; k < 3; ++k) {
            g.corr[k] = node.perm[fc[k]];
        }
        g.unite = true;
        b.script.steps.emplace_back(g);
    }
    b.labeled.complex = replay(b.script).result;
    b.labeled.corner_labels = class_labels(b.labeled.complex);
    return b;
}

Complex2Pseudo to_pseudo(const std::vector<std::array<std::string, 3>>& triangles) {
    std::map<std::pair<std::string, std::string>, int> degree;
    for (const auto& t : triangles) {
        std::set<std::string> distinct(t.begin(), t.end());
        if (distinct.size() != 3) {
            throw Error(ErrorCode::BadReference, "degenerate triangle");
        }
        for (int i = 0; i < 3; ++i) {
            auto x = t[static_cast<std::size_t>(i)], y = t[static_cast<std::size_t>((i + 1) % 3)];
            if (y < x) {
                std::swap(x, y);
            }
            if (++degree[{x, y}] > 2) {
                throw Error(ErrorCode::BadReference, "edge " + x + y + " lies in more than two triangles");
            }
        }
    }
    return {triangles};
}

Built cone(const Complex2Pseudo& a, const std::string& apex) {
    std::size_t n = a.triangles.size();
    if (n == 0) {
        throw Error(ErrorCode::NotStronglyConnected, "empty base");
    }
    to_pseudo(a.triangles);
    std::vector<std::array<std::string, 4>> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (a.triangles[i][c] == apex) {
                throw Error(ErrorCode::BadReference, "apex label '" + apex + "' used in the base");
            }
            labels[i][c] = a.triangles[i][c];
        }
        labels[i][3] = apex;
    }

    // facet j of tetrahedron i is the apex over the edge opposite corner j
    struct Adjacency {
        FacetRef x;
        FacetRef y;
    };
    std::map<std::pair<std::string, std::string>, std::vector<FacetRef>> by_edge;
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < 3; ++j) {
            auto x = labels[i][static_cast<std::size_t>((j + 1) % 3)];
            auto y = labels[i][static_cast<std::size_t>((j + 2) % 3)];
            if (y < x) {
                std::swap(x, y);
            }
            by_edge[{x, y}].push_back({i, j});
        }
    }
    std::vector<std::vector<Adjacency>> adj(n);
    std::vector<Adjacency> all;
    for (const auto& [edge, facets] : by_edge) {
        if (facets.size() == 2) {
            all.push_back({facets[0], facets[1]});
            adj[facets[0].tet].push_back({facets[0], facets[1]});
            adj[facets[1].tet].push_back({facets[1], facets[0]});
        }
    }

    std::vector<bool> seen(n, false);
    std::set<std::pair<std::size_t, std::size_t>> tree_facets;   // facet indices of tree arcs
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    Built b;
    b.script.mode = ScriptMode::Mogami;
    b.script.initial = separate_tets(n);
    while (!queue.empty()) {
        std::size_t t = queue.front();
        queue.pop_front();
        for (const auto& e : adj[t]) {
            if (seen[e.y.tet]) {
                continue;
            }
            seen[e.y.tet] = true;
            queue.push_back(e.y.tet);
            tree_facets.insert({e.x.index(), e.y.index()});
            tree_facets.insert({e.y.index(), e.x.index()});
            b.script.steps.emplace_back(GluingStep{e.x, e.y, label_corr(labels, e.x, e.y), true});
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw Error(ErrorCode::NotStronglyConnected, "the base triangles are not connected through edges");
    }
    for (const auto& e : all) {
        if (!tree_facets.count({e.x.index(), e.y.index()})) {
            b.script.steps.emplace_back(GluingStep{e.x, e.y, label_corr(labels, e.x, e.y), false});
        }
    }
    b.labeled.complex = replay(b.script).result;
    b.labeled.corner_labels = std::move(labels);
    return b;
}

InterfacePair interface_pair(const Built& a, const Built& b, const std::array<std::string, 3>& a_labels,
                             const std::array<std::string, 3>& b_labels) {
    FacetRef fa = a.labeled.boundary_facet(a_labels);
    FacetRef fb = b.labeled.boundary_facet(b_labels);
    // rename B's labels to their A counterparts so one lookup table serves both
    std::map<std::string, std::string> to_a;
    for (std::size_t i = 0; i < 3; ++i) {
        to_a[b_labels[i]] = a_labels[i];
    }
    std::vector<std::array<std::string, 4>> joint = a.labeled.corner_labels;
    for (auto tet : b.labeled.corner_labels) {
        for (auto& l : tet) {
            auto it = to_a.find(l);
            l = it == to_a.end() ? "\x01" + l : it->second;
        }
        joint.push_back(tet);
    }
    FacetRef shifted_b{fb.tet + a.complex().num_tets(), fb.face};
    return InterfacePair{fa, fb, label_corr(joint, fa, shifted_b)};
}

Built union_mogami(const Built& a, const Built& b, const std::vector<InterfacePair>& iface) {
    if (iface.empty()) {
        throw Error(ErrorCode::InterfaceNotConnected, "empty interface");
    }
    const auto& pa = a.complex();
    std::size_t offset = a.script.initial.num_tets();

    // breadth-first order of the interface triangles over incidence in A
    auto vertices_of = [&](FacetRef f) {
        std::set<int> out;
        for (int c : face_corners(f.face)) {
            out.insert(pa.vertex_class(f.tet, c));
        }
        return out;
    };
    std::vector<std::size_t> order{0};
    std::vector<bool> placed(iface.size(), false);
    placed[0] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto vs = vertices_of(iface[order[head]].a);
        for (std::size_t j = 0; j < iface.size(); ++j) {
            if (placed[j]) {
                continue;
            }
            auto ws = vertices_of(iface[j].a);
            if (std::any_of(ws.begin(), ws.end(), [&](int w) { return vs.count(w) > 0; })) {
                placed[j] = true;
                order.push_back(j);
            }
        }
    }
    if (order.size() != iface.size()) {
        throw Error(ErrorCode::InterfaceNotConnected,
                    std::to_string(iface.size() - order.size()) + " interface triangles unreachable by incidence");
    }

    auto split = [](const MoveScript& s, std::size_t shift, std::vector<Step>& unites, std::vector<Step>& rest) {
        for (const auto& step : s.steps) {
            const auto* g = std::get_if<GluingStep>(&step);
            if (!g) {
                throw Error(ErrorCode::BadReference, "union scripts must consist of gluings");
            }
            (g->unite ? unites : rest).emplace_back(shifted(*g, shift));
        }
    };
    std::vector<Step> unites_a, rest_a, unites_b, rest_b;
    split(a.script, 0, unites_a, rest_a);
    split(b.script, offset, unites_b, rest_b);

    Built c;
    c.script.mode = ScriptMode::Mogami;
    c.script.initial = disjoint_union(a.script.initial, b.script.initial);
    auto append = [&](const std::vector<Step>& v) { c.script.steps.insert(c.script.steps.end(), v.begin(), v.end()); };
    append(unites_a);
    append(unites_b);
    auto iface_step = [&](std::size_t k, bool unite) {
        const auto& ip = iface[k];
        return GluingStep{ip.a, {ip.b.tet + offset, ip.b.face}, ip.corr, unite};
    };
    c.script.steps.emplace_back(iface_step(order[0], true));
    append(rest_a);
    append(rest_b);
    std::size_t iface_start = c.script.steps.size();
    for (std::size_t k = 1; k < order.size(); ++k) {
        c.script.steps.emplace_back(iface_step(order[k], false));
    }

    // the interface phase must consist of Mogami gluings; anything else is an
    // ordering failure
    MoveScript head = c.script;
    head.steps.resize(iface_start);
    Pseudomanifold p = replay(head).result;
    for (std::size_t i = iface_start; i < c.script.steps.size(); ++i) {
        const auto& g = std::get<GluingStep>(c.script.steps[i]);
        if (triangle_intersection(p, g.f1, g.f2).empty() || !fixes_shared_vertex(p, g.f1, g.f2, g.corr)) {
            throw Error(ErrorCode::NoIncidenceOrder, "interface triangle " + std::to_string(order[i - iface_start + 1]) +
                                                         " shares no fixed vertex when its turn comes");
        }
        p = glue(p, g.f1, g.f2, g.corr);
    }
    c.labeled.complex = replay(c.script).result;
    c.labeled.corner_labels = a.labeled.corner_labels;
    c.labeled.corner_labels.insert(c.labeled.corner_labels.end(), b.labeled.corner_labels.begin(),
                                   b.labeled.corner_labels.end());
    return c;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

/// Fan of triangles [center, ring[i], ring[i+1]] around a closed ring.
std::vector<std::array<std::string, 3>> fan(const std::string& center, const std::vector<std::string>& ring) {
    std::vector<std::array<std::string, 3>> out;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        out.push_back({center, ring[i], ring[(i + 1) % ring.size()]});
    }
    return out;
}

GluingStep labeled_step(const LabeledComplex& l, const std::array<std::string, 3>& from,
                        const std::array<std::string, 3>& to, const std::map<std::string, std::string>& map) {
    FacetRef f1 = l.boundary_facet(from);
    FacetRef f2 = l.boundary_facet(to);
    return {f1, f2, l.corr(f1, f2, map), false};
}

Fixture scenario_of(std::string name, Built base) {
    Fixture f{std::move(name), std::move(base), {}};
    f.scenario.mode = ScriptMode::Mogami;
    f.scenario.initial = f.base.complex();
    return f;
}

/// Cone u over the disk of seven triangles around v. The vertex pair
/// [v,z,p], [v,r,x] is incident only at v; the healing pair [v,x,y], [v,y,z]
/// shares the edge vy.
Fixture figure1() {
    auto base = cone(to_pseudo(fan("v", {"x", "y", "z", "p", "q1", "q2", "r"})), "u");
    auto f = scenario_of("figure1_ball", std::move(base));
    const auto& l = f.base.labeled;
    f.scenario.steps.emplace_back(labeled_step(l, {"v", "z", "p"}, {"v", "r", "x"}, {{"z", "x"}, {"p", "r"}}));
    f.scenario.steps.emplace_back(labeled_step(l, {"v", "x", "y"}, {"v", "y", "z"}, {{"x", "z"}}));
    return f;
}

Built square_cone(const std::string& center) {
    return cone(to_pseudo(fan(center, {"a", "b", "c", "d"})), "v");
}

/// Two cones over diagonally subdivided squares glued along v*ab and v*cd,
/// which meet only at v.
Fixture figure2() {
    Built a = square_cone("m");
    Built b = square_cone("n");
    auto pair_on = [&](const std::array<std::string, 3>& labels) { return interface_pair(a, b, labels, labels); };
    auto c = union_mogami(a, b, {pair_on({"v", "a", "b"}), pair_on({"v", "c", "d"})});
    return scenario_of("figure2_union", std::move(c));
}

/// Ring of four squares p_i p_{i+1} q_{i+1} q_i, each split by its
/// diagonals at w_i.
std::vector<std::array<std::string, 3>> annulus_triangles() {
    std::vector<std::array<std::string, 3>> out;
    for (int i = 0; i < 4; ++i) {
        auto p = [](int j) { return "p" + std::to_string(j % 4); };
        auto q = [](int j) { return "q" + std::to_string(j % 4); };
        auto w = "w" + std::to_string(i);
        out.push_back({w, p(i), p(i + 1)});
        out.push_back({w, p(i + 1), q(i + 1)});
        out.push_back({w, q(i + 1), q(i)});
        out.push_back({w, q(i), p(i)});
    }
    return out;
}

/// Cone over the annulus; the scenario folds [c,d,v] onto [c,d,w] in the
/// square of w0 (a,b = p0,p1 and c,d = q1,q0).
Fixture figure4() {
    auto f = scenario_of("figure4_annulus_cone", cone(to_pseudo(annulus_triangles()), "v"));
    f.scenario.steps.emplace_back(labeled_step(f.base.labeled, {"q1", "q0", "v"}, {"q1", "q0", "w0"}, {{"v", "w0"}}));
    return f;
}

/// Cone u over two fans, around v (ring a b p1..p7) and around w (ring
/// b a q1..q7), sharing the edge ab. One Mogami gluing at v, one at w, then
/// the fold of v*ab onto w*ab.
Fixture nonhom() {
    auto tris = fan("v", {"a", "b", "p1", "p2", "p3", "p4", "p5", "p6", "p7"});
    auto other = fan("w", {"b", "a", "q1", "q2", "q3", "q4", "q5", "q6", "q7"});
    tris.insert(tris.end(), other.begin(), other.end());
    auto f = scenario_of("ex_nonhom_scenario", cone(to_pseudo(tris), "u"));
    const auto& l = f.base.labeled;
    f.scenario.steps.emplace_back(labeled_step(l, {"v", "p1", "p2"}, {"v", "p5", "p6"}, {{"p1", "p6"}, {"p2", "p5"}}));
    f.scenario.steps.emplace_back(labeled_step(l, {"w", "q1", "q2"}, {"w", "q5", "q6"}, {{"q1", "q6"}, {"q2", "q5"}}));
    f.scenario.steps.emplace_back(labeled_step(l, {"v", "a", "b"}, {"w", "a", "b"}, {{"v", "w"}}));
    return f;
}

} // namespace

std::vector<std::string> fixture_names() {
    return {"figure1_ball", "figure2_union", "figure4_annulus_cone", "ex_nonhom_scenario"};
}

Fixture fixture(const std::string& name) {
    if (name == "figure1_ball") {
        return figure1();
    }
    if (name == "figure2_union") {
        return figure2();
    }
    if (name == "figure4_annulus_cone") {
        return figure4();
    }
    if (name == "ex_nonhom_scenario") {
        return nonhom();
    }
    throw Error(ErrorCode::BadReference, "unknown fixture '" + name + "'");
}

} // namespace mogami
