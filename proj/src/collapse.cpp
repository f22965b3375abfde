#include <mogami/collapse.hpp>

#include "union_find.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace mogami {

namespace {

std::array<int, 2> sorted2(int a, int b) {
    return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

std::vector<std::uint64_t> pack(const CollapseState& s) {
    std::vector<std::uint64_t> out;
    std::size_t bit = 0;
    for (const auto& v : s.alive) {
        for (bool b : v) {
            if (bit % 64 == 0) {
                out.push_back(0);
            }
            if (b) {
                out.back() |= std::uint64_t{1} << (bit % 64);
            }
            ++bit;
        }
    }
    return out;
}

} // namespace

int Complex2::add_vertex(const std::string& label) {
    if (label.empty()) {
        throw Error(ErrorCode::ParseError, "empty vertex label");
    }
    auto it = by_label_.find(label);
    if (it != by_label_.end()) {
        return it->second;
    }
    int id = static_cast<int>(labels_.size());
    labels_.push_back(label);
    by_label_.emplace(label, id);
    d_[0].push_back(false);
    return id;
}

int Complex2::add_edge(const std::string& a, const std::string& b) {
    int x = add_vertex(a);
    int y = add_vertex(b);
    if (x == y) {
        throw Error(ErrorCode::ParseError, "degenerate edge " + a);
    }
    auto key = sorted2(x, y);
    auto it = by_ends_.find(key);
    if (it != by_ends_.end()) {
        return it->second;
    }
    int id = static_cast<int>(edges_.size());
    edges_.push_back(key);
    by_ends_.emplace(key, id);
    d_[1].push_back(false);
    return id;
}

int Complex2::add_triangle(const std::string& a, const std::string& b, const std::string& c) {
    add_edge(a, b);
    add_edge(a, c);
    add_edge(b, c);
    std::array<int, 3> key{by_label_.at(a), by_label_.at(b), by_label_.at(c)};
    std::sort(key.begin(), key.end());
    if (key[0] == key[1] || key[1] == key[2]) {
        throw Error(ErrorCode::ParseError, "degenerate triangle");
    }
    auto it = by_corners_.find(key);
    if (it != by_corners_.end()) {
        return it->second;
    }
    int id = static_cast<int>(triangles_.size());
    triangles_.push_back(key);
    by_corners_.emplace(key, id);
    d_[2].push_back(false);
    return id;
}

void Complex2::mark_vertex(int v) {
    d_[0].at(static_cast<std::size_t>(v)) = true;
}

void Complex2::mark_edge(int e) {
    d_[1].at(static_cast<std::size_t>(e)) = true;
    for (int v : edge(e)) {
        mark_vertex(v);
    }
}

void Complex2::mark_triangle(int t) {
    d_[2].at(static_cast<std::size_t>(t)) = true;
    for (int e : triangle_edges(t)) {
        mark_edge(e);
    }
}

std::optional<int> Complex2::find_vertex(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<int> Complex2::find_edge(int a, int b) const {
    auto it = by_ends_.find(sorted2(a, b));
    if (it == by_ends_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::array<int, 3> Complex2::triangle_edges(int t) const {
    const auto& c = triangle(t);
    return {by_ends_.at(sorted2(c[1], c[2])), by_ends_.at(sorted2(c[0], c[2])),
            by_ends_.at(sorted2(c[0], c[1]))};
}

bool Complex2::in_d(int dim, int id) const {
    return d_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(id));
}

bool Complex2::d_empty() const {
    return std::none_of(d_[0].begin(), d_[0].end(), [](bool b) { return b; });
}

Complex2 read_complex2(const std::string& text) {
    Complex2 k;
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
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        bool mark = false;
        if (tok[0] == "d" && tok.size() > 1 && (tok[1] == "v" || tok[1] == "e" || tok[1] == "t")) {
            mark = true;
            tok.erase(tok.begin());
        }
        auto fail = [&](const std::string& why) {
            return Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
        };
        try {
            if (tok[0] == "v" && tok.size() == 2) {
                int v = k.add_vertex(tok[1]);
                if (mark) {
                    k.mark_vertex(v);
                }
            } else if (tok[0] == "e" && tok.size() == 3) {
                int e = k.add_edge(tok[1], tok[2]);
                if (mark) {
                    k.mark_edge(e);
                }
            } else if (tok[0] == "t" && tok.size() == 4) {
                int t = k.add_triangle(tok[1], tok[2], tok[3]);
                if (mark) {
                    k.mark_triangle(t);
                }
            } else {
                throw fail("expected 'v x', 'e x y' or 't x y z'");
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError && std::string(e.what()).find("line ") == std::string::npos) {
                throw fail(e.what());
            }
            throw;
        }
    }
    return k;
}

std::string write_complex2(const Complex2& k) {
    std::ostringstream out;
    auto prefix = [&](int dim, int id) { return k.in_d(dim, id) ? "d " : ""; };
    for (std::size_t v = 0; v < k.num_vertices(); ++v) {
        int i = static_cast<int>(v);
        out << prefix(0, i) << "v " << k.label(i) << '\n';
    }
    for (std::size_t e = 0; e < k.num_edges(); ++e) {
        int i = static_cast<int>(e);
        out << prefix(1, i) << "e " << k.label(k.edge(i)[0]) << ' ' << k.label(k.edge(i)[1]) << '\n';
    }
    for (std::size_t t = 0; t < k.num_triangles(); ++t) {
        int i = static_cast<int>(t);
        const auto& c = k.triangle(i);
        out << prefix(2, i) << "t " << k.label(c[0]) << ' ' << k.label(c[1]) << ' ' << k.label(c[2]) << '\n';
    }
    return out.str();
}

CollapseState CollapseState::full(const Complex2& k) {
    CollapseState s;
    s.alive[0].assign(k.num_vertices(), true);
    s.alive[1].assign(k.num_edges(), true);
    s.alive[2].assign(k.num_triangles(), true);
    return s;
}

std::size_t CollapseState::size() const {
    std::size_t n = 0;
    for (const auto& v : alive) {
        n += static_cast<std::size_t>(std::count(v.begin(), v.end(), true));
    }
    return n;
}

std::vector<CollapseStep> free_faces(const Complex2& k, const CollapseState& s) {
    std::vector<int> edge_cofaces(k.num_edges(), 0);
    std::vector<int> edge_last(k.num_edges(), -1);
    std::vector<int> vertex_cofaces(k.num_vertices(), 0);
    std::vector<int> vertex_last(k.num_vertices(), -1);
    for (std::size_t t = 0; t < k.num_triangles(); ++t) {
        if (!s.alive[2][t]) {
            continue;
        }
        for (int e : k.triangle_edges(static_cast<int>(t))) {
            ++edge_cofaces[static_cast<std::size_t>(e)];
            edge_last[static_cast<std::size_t>(e)] = static_cast<int>(t);
        }
        for (int v : k.triangle(static_cast<int>(t))) {
            ++vertex_cofaces[static_cast<std::size_t>(v)];
        }
    }
    for (std::size_t e = 0; e < k.num_edges(); ++e) {
        if (!s.alive[1][e]) {
            continue;
        }
        for (int v : k.edge(static_cast<int>(e))) {
            ++vertex_cofaces[static_cast<std::size_t>(v)];
            vertex_last[static_cast<std::size_t>(v)] = static_cast<int>(e);
        }
    }
    std::vector<CollapseStep> out;
    for (std::size_t e = 0; e < k.num_edges(); ++e) {
        int id = static_cast<int>(e);
        if (s.alive[1][e] && edge_cofaces[e] == 1 && !k.in_d(1, id) && !k.in_d(2, edge_last[e])) {
            out.push_back({{1, id}, {2, edge_last[e]}});
        }
    }
    for (std::size_t v = 0; v < k.num_vertices(); ++v) {
        int id = static_cast<int>(v);
        // a single coface of a vertex is necessarily an edge
        if (s.alive[0][v] && vertex_cofaces[v] == 1 && vertex_last[v] >= 0 && !k.in_d(0, id) &&
            !k.in_d(1, vertex_last[v])) {
            out.push_back({{0, id}, {1, vertex_last[v]}});
        }
    }
    return out;
}

void apply_collapse(CollapseState& s, const CollapseStep& step) {
    s.alive[static_cast<std::size_t>(step.free.dim)][static_cast<std::size_t>(step.free.id)] = false;
    s.alive[static_cast<std::size_t>(step.coface.dim)][static_cast<std::size_t>(step.coface.id)] = false;
}

CollapseResult greedy_collapse(const Complex2& k, const CollapseState& start) {
    CollapseResult r{start, {}};
    for (;;) {
        auto f = free_faces(k, r.residual);
        if (f.empty()) {
            return r;
        }
        apply_collapse(r.residual, f.front());
        r.trace.push_back(f.front());
    }
}

CollapseResult greedy_collapse(const Complex2& k) {
    return greedy_collapse(k, CollapseState::full(k));
}

bool is_d(const Complex2& k, const CollapseState& s) {
    for (int dim = 0; dim < 3; ++dim) {
        const auto& a = s.alive[static_cast<std::size_t>(dim)];
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != k.in_d(dim, static_cast<int>(i))) {
                return false;
            }
        }
    }
    return true;
}

bool is_point(const CollapseState& s) {
    return std::count(s.alive[0].begin(), s.alive[0].end(), true) == 1 &&
           std::count(s.alive[1].begin(), s.alive[1].end(), true) == 0 &&
           std::count(s.alive[2].begin(), s.alive[2].end(), true) == 0;
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Yes:
        return "Yes";
    case Verdict::No:
        return "No";
    case Verdict::Unknown:
        return "Unknown";
    }
    return "Unknown";
}

namespace {

bool is_target(const Complex2& k, const CollapseState& s) {
    return k.d_empty() ? is_point(s) : is_d(k, s);
}

} // namespace

Verdict collapses_to(const Complex2& k, std::size_t budget) {
    auto full = CollapseState::full(k);
    if (is_target(k, greedy_collapse(k, full).residual)) {
        return Verdict::Yes;
    }
    std::set<std::vector<std::uint64_t>> seen;
    bool exhausted = false;
    std::function<bool(const CollapseState&)> dfs = [&](const CollapseState& s) {
        if (!seen.insert(pack(s)).second) {
            return false;
        }
        if (seen.size() > budget) {
            exhausted = true;
            return false;
        }
        auto f = free_faces(k, s);
        if (f.empty()) {
            return is_target(k, s);
        }
        for (const auto& step : f) {
            CollapseState next = s;
            apply_collapse(next, step);
            if (dfs(next)) {
                return true;
            }
            if (exhausted) {
                return false;
            }
        }
        return false;
    };
    if (dfs(full)) {
        return Verdict::Yes;
    }
    return exhausted ? Verdict::Unknown : Verdict::No;
}

ExtensiveResult extensively_collapsible(const Complex2& k, std::size_t budget) {
    ExtensiveResult r;
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<CollapseState> stack{CollapseState::full(k)};
    seen.insert(pack(stack.back()));
    while (!stack.empty()) {
        CollapseState s = std::move(stack.back());
        stack.pop_back();
        auto f = free_faces(k, s);
        if (f.empty()) {
            if (!is_target(k, s)) {
                r.verdict = Verdict::No;
                r.stuck = std::move(s);
                r.states = seen.size();
                return r;
            }
            continue;
        }
        for (const auto& step : f) {
            CollapseState next = s;
            apply_collapse(next, step);
            if (seen.insert(pack(next)).second) {
                if (seen.size() > budget) {
                    r.verdict = Verdict::Unknown;
                    r.states = seen.size();
                    return r;
                }
                stack.push_back(std::move(next));
            }
        }
    }
    r.verdict = Verdict::Yes;
    r.states = seen.size();
    return r;
}

bool trace_replays(const Complex2& k, const std::vector<CollapseStep>& trace) {
    auto s = CollapseState::full(k);
    for (const auto& step : trace) {
        auto f = free_faces(k, s);
        bool ok = std::any_of(f.begin(), f.end(), [&](const CollapseStep& c) {
            return c.free == step.free && c.coface == step.coface;
        });
        if (!ok) {
            return false;
        }
        apply_collapse(s, step);
    }
    return true;
}

Complex2 k_t(const Pseudomanifold& p, const std::vector<std::size_t>& tree) {
    if (!is_simplicial(p)) {
        throw Error(ErrorCode::NotRepresentable, "K^T needs a simplicial complex");
    }
    auto n = p.num_tets();
    if (n == 0 || tree.size() + 1 != n) {
        throw Error(ErrorCode::NotSpanningTree, "expected " + std::to_string(n == 0 ? 0 : n - 1) + " arcs");
    }
    detail::UnionFind uf(n);
    std::set<std::size_t> in_tree;
    for (auto idx : tree) {
        if (idx >= p.num_pairings()) {
            throw Error(ErrorCode::NotSpanningTree, "no pairing " + std::to_string(idx));
        }
        const auto& pr = p.pairings()[idx];
        if (!uf.merge(pr.a.tet, pr.b.tet) || !in_tree.insert(idx).second) {
            throw Error(ErrorCode::NotSpanningTree, "arcs contain a cycle");
        }
    }
    Complex2 k;
    auto label = [](int v) { return "v" + std::to_string(v); };
    for (std::size_t v = 0; v < p.num_classes(0); ++v) {
        k.add_vertex(label(static_cast<int>(v)));
    }
    for (std::size_t e = 0; e < p.num_classes(1); ++e) {
        auto ends = p.edge_vertices(static_cast<int>(e));
        k.add_edge(label(ends[0]), label(ends[1]));
    }
    for (std::size_t t = 0; t < p.num_classes(2); ++t) {
        int tri = static_cast<int>(t);
        auto pr = p.pairing_of_triangle(tri);
        if (pr && in_tree.count(*pr)) {
            continue;
        }
        auto c = p.triangle_vertices(tri);
        int id = k.add_triangle(label(c[0]), label(c[1]), label(c[2]));
        if (p.is_boundary(2, tri)) {
            k.mark_triangle(id);
        }
    }
    return k;
}

std::vector<std::vector<std::size_t>> spanning_trees(const Pseudomanifold& p, std::size_t limit) {
    auto g = dual_graph(p);
    std::vector<DualArc> arcs;
    for (const auto& a : g.arcs) {
        if (a.from != a.to) {
            arcs.push_back(a);
        }
    }
    std::vector<std::vector<std::size_t>> out;
    std::size_t need = g.num_nodes == 0 ? 0 : g.num_nodes - 1;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, detail::UnionFind)> rec = [&](std::size_t i, detail::UnionFind uf) {
        if (out.size() >= limit) {
            return;
        }
        if (cur.size() == need) {
            out.push_back(cur);
            return;
        }
        if (cur.size() + (arcs.size() - i) < need) {
            return;
        }
        // contract arc i when it joins two components, then delete it
        detail::UnionFind with = uf;
        if (with.merge(arcs[i].from, arcs[i].to)) {
            cur.push_back(arcs[i].pairing);
            rec(i + 1, std::move(with));
            cur.pop_back();
        }
        rec(i + 1, std::move(uf));
    };
    if (g.num_nodes > 0) {
        rec(0, detail::UnionFind(g.num_nodes));
    }
    for (auto& t : out) {
        std::sort(t.begin(), t.end());
    }
    return out;
}

std::string_view to_string(ElcResult::Status s) {
    switch (s) {
    case ElcResult::Status::Verified:
        return "Verified";
    case ElcResult::Status::Refuted:
        return "Refuted";
    case ElcResult::Status::Unknown:
        return "Unknown";
    }
    return "Unknown";
}

ElcResult extensively_lc_check(const Pseudomanifold& b, const ElcMode& mode, std::size_t budget) {
    constexpr std::size_t tree_limit = 100000;
    std::vector<std::vector<std::size_t>> trees;
    bool complete = mode.all;
    if (mode.all) {
        trees = spanning_trees(b, tree_limit);
        complete = trees.size() < tree_limit;
    } else {
        auto g = dual_graph(b);
        std::mt19937_64 rng(mode.seed);
        for (std::size_t s = 0; s < mode.samples; ++s) {
            auto arcs = g.arcs;
            std::shuffle(arcs.begin(), arcs.end(), rng);
            detail::UnionFind uf(g.num_nodes);
            std::vector<std::size_t> t;
            for (const auto& a : arcs) {
                if (uf.merge(a.from, a.to)) {
                    t.push_back(a.pairing);
                }
            }
            std::sort(t.begin(), t.end());
            trees.push_back(std::move(t));
        }
    }
    std::vector<Verdict> verdicts(trees.size(), Verdict::Unknown);
    unsigned jobs = std::max(1u, std::min<unsigned>(mode.jobs, static_cast<unsigned>(trees.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < trees.size(); i = next++) {
            verdicts[i] = collapses_to(k_t(b, trees[i]), budget);
        }
    };
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    ElcResult r;
    r.trees_checked = trees.size();
    bool unknown = !complete;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        if (verdicts[i] == Verdict::No) {
            r.status = ElcResult::Status::Refuted;
            r.witness = trees[i];
            return r;
        }
        unknown = unknown || verdicts[i] == Verdict::Unknown;
    }
    r.status = unknown ? ElcResult::Status::Unknown : ElcResult::Status::Verified;
    return r;
}

} // namespace mogami
