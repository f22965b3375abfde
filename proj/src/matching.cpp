#include <mogami/matching.hpp>

#include "union_find.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

namespace mogami {

CycleGraph::CycleGraph(std::size_t edges) : n(edges) {
    if (edges < 3) {
        throw Error(ErrorCode::BadReference, "a cycle needs at least 3 edges");
    }
}

namespace {

int head(const CycleGraph& c, int e) { return static_cast<int>((static_cast<std::size_t>(e) + 1) % c.n); }

bool crossing(const EdgePair& p, const EdgePair& q) {
    return (p.first < q.first && q.first < p.second && p.second < q.second) ||
           (q.first < p.first && p.first < q.second && q.second < p.second);
}

void identify(const CycleGraph& c, detail::UnionFind& uf, const EdgePair& p) {
    uf.unite(static_cast<std::size_t>(p.first), static_cast<std::size_t>(head(c, p.second)));
    uf.unite(static_cast<std::size_t>(head(c, p.first)), static_cast<std::size_t>(p.second));
}

/// Vertex classes touched by non-bridge edges (loops included).
std::vector<bool> active_vertices(std::size_t nv, const std::vector<std::pair<int, int>>& edges) {
    std::vector<bool> active(nv, false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [a, b] = edges[i];
        bool on_cycle = a == b;
        if (!on_cycle) {
            detail::UnionFind uf(nv);
            for (std::size_t j = 0; j < edges.size(); ++j) {
                if (j != i) {
                    uf.unite(static_cast<std::size_t>(edges[j].first), static_cast<std::size_t>(edges[j].second));
                }
            }
            on_cycle = uf.find(static_cast<std::size_t>(a)) == uf.find(static_cast<std::size_t>(b));
        }
        if (on_cycle) {
            active[static_cast<std::size_t>(a)] = true;
            active[static_cast<std::size_t>(b)] = true;
        }
    }
    return active;
}

bool shares_endpoint(const CycleGraph& c, detail::UnionFind& uf, const EdgePair& p) {
    std::size_t a0 = uf.find(static_cast<std::size_t>(p.first));
    std::size_t a1 = uf.find(static_cast<std::size_t>(head(c, p.first)));
    std::size_t b0 = uf.find(static_cast<std::size_t>(p.second));
    std::size_t b1 = uf.find(static_cast<std::size_t>(head(c, p.second)));
    return a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1;
}

} // namespace

PlanarMatching make_matching(const CycleGraph& c, std::vector<EdgePair> pairs) {
    std::vector<bool> used(c.n, false);
    for (auto& p : pairs) {
        if (p.first > p.second) {
            std::swap(p.first, p.second);
        }
        if (p.first < 0 || static_cast<std::size_t>(p.second) >= c.n) {
            throw Error(ErrorCode::BadReference, "edge index out of range");
        }
        for (int e : {p.first, p.second}) {
            if (used[static_cast<std::size_t>(e)]) {
                throw Error(ErrorCode::BadReference, "edge " + std::to_string(e) + " matched twice");
            }
            used[static_cast<std::size_t>(e)] = true;
        }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            if (crossing(pairs[i], pairs[j])) {
                throw Error(ErrorCode::CrossingMatching,
                            "pairs " + std::to_string(pairs[i].first) + "-" + std::to_string(pairs[i].second) +
                                " and " + std::to_string(pairs[j].first) + "-" + std::to_string(pairs[j].second) +
                                " cross");
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return PlanarMatching{pairs};
}

QuotientMultigraph quotient(const CycleGraph& c, const PlanarMatching& m) { return quotient(c, m.pairs); }

QuotientMultigraph quotient(const CycleGraph& c, const std::vector<EdgePair>& applied) {
    QuotientMultigraph g;
    detail::UnionFind vuf(c.n), euf(c.n);
    for (const auto& p : applied) {
        identify(c, vuf, p);
        euf.unite(static_cast<std::size_t>(p.first), static_cast<std::size_t>(p.second));
    }
    std::size_t ne = 0;
    g.vertex_of = detail::number_classes(vuf, g.num_vertices);
    g.edge_of = detail::number_classes(euf, ne);
    g.edges.assign(ne, {-1, -1});
    for (std::size_t e = 0; e < c.n; ++e) {
        auto& slot = g.edges[static_cast<std::size_t>(g.edge_of[e])];
        if (slot.first < 0) {
            slot = {g.vertex_of[e], g.vertex_of[static_cast<std::size_t>(head(c, static_cast<int>(e)))]};
        }
    }
    detail::UnionFind cuf(g.num_vertices);
    for (auto [a, b] : g.edges) {
        cuf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    std::size_t comps = 0;
    detail::number_classes(cuf, comps);
    g.num_components = comps;
    g.active = active_vertices(g.num_vertices, g.edges);
    return g;
}

long cycle_count(const QuotientMultigraph& g) {
    return static_cast<long>(g.edges.size()) - static_cast<long>(g.num_vertices) +
           static_cast<long>(g.num_components);
}

bool lc_orderable(const CycleGraph& c, const PlanarMatching& m) { return cycle_count(quotient(c, m)) <= 1; }

namespace {

/// Leaf-deletion order of the tree spanned by `pairs` (vertex classes taken
/// from `uf`) onto the class `root`.
std::vector<EdgePair> collapse_onto(const CycleGraph& c, detail::UnionFind& uf, std::vector<EdgePair> pairs,
                                    std::size_t root) {
    std::vector<EdgePair> order;
    while (!pairs.empty()) {
        std::map<std::size_t, int> degree;
        for (const auto& p : pairs) {
            ++degree[uf.find(static_cast<std::size_t>(p.first))];
            ++degree[uf.find(static_cast<std::size_t>(head(c, p.first)))];
        }
        bool removed = false;
        for (std::size_t i = 0; i < pairs.size() && !removed; ++i) {
            std::size_t a = uf.find(static_cast<std::size_t>(pairs[i].first));
            std::size_t b = uf.find(static_cast<std::size_t>(head(c, pairs[i].first)));
            for (std::size_t leaf : {a, b}) {
                if (leaf != root && degree[leaf] == 1 && a != b) {
                    order.push_back(pairs[i]);
                    pairs.erase(pairs.begin() + static_cast<long>(i));
                    removed = true;
                    break;
                }
            }
        }
        if (!removed) {
            throw Error(ErrorCode::NotOrderable, "quotient is not a tree");
        }
    }
    return order;
}

/// Recursive construction on a sub-cycle given as the cyclic list of its
/// original edges. `uf` holds the identifications that are already forced
/// (the closing vertex of the sub-cycle).
void order_rec(const CycleGraph& c, std::vector<int> cyc, std::vector<EdgePair> pairs, detail::UnionFind& uf,
               std::vector<EdgePair>& out) {
    while (!pairs.empty()) {
        std::map<int, std::size_t> pos;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            pos[cyc[i]] = i;
        }
        // first pair in cyclic position
        std::sort(pairs.begin(), pairs.end(), [&](const EdgePair& x, const EdgePair& y) {
            return std::min(pos[x.first], pos[x.second]) < std::min(pos[y.first], pos[y.second]);
        });
        EdgePair p = pairs.front();
        std::size_t i = std::min(pos[p.first], pos[p.second]);
        std::size_t j = std::max(pos[p.first], pos[p.second]);
        const std::size_t len = cyc.size();
        if (j == i + 1 || (i == 0 && j == len - 1)) {
            out.push_back(p);
            identify(c, uf, p);
            pairs.erase(pairs.begin());
            cyc.erase(cyc.begin() + static_cast<long>(j));
            cyc.erase(cyc.begin() + static_cast<long>(i));
            continue;
        }
        std::vector<int> left(cyc.begin() + static_cast<long>(i) + 1, cyc.begin() + static_cast<long>(j));
        std::vector<int> right(cyc.begin() + static_cast<long>(j) + 1, cyc.end());
        right.insert(right.end(), cyc.begin(), cyc.begin() + static_cast<long>(i));
        auto inside = [&](const std::vector<int>& side) {
            std::vector<EdgePair> sub;
            for (const auto& q : pairs) {
                if (std::find(side.begin(), side.end(), q.first) != side.end()) {
                    sub.push_back(q);
                }
            }
            return sub;
        };
        auto left_pairs = inside(left);
        auto right_pairs = inside(right);
        const bool left_complete = 2 * left_pairs.size() == left.size();
        const bool right_complete = 2 * right_pairs.size() == right.size();
        if (!left_complete && !right_complete) {
            throw Error(ErrorCode::NotOrderable, "the quotient has at least two cycles");
        }
        const auto& done_side = left_complete ? left : right;
        const auto& done_pairs = left_complete ? left_pairs : right_pairs;
        // bridge vertex on the complete side: the tail of its first edge
        int first_edge = cyc[i];
        int second_edge = cyc[j];
        int bridge_vertex = left_complete ? head(c, first_edge) : head(c, second_edge);
        detail::UnionFind closed = uf;
        identify(c, closed, p);
        for (const auto& q : done_pairs) {
            identify(c, closed, q);
        }
        auto collapse = collapse_onto(c, closed, done_pairs, closed.find(static_cast<std::size_t>(bridge_vertex)));
        for (const auto& q : collapse) {
            out.push_back(q);
            identify(c, uf, q);
        }
        out.push_back(p);
        identify(c, uf, p);
        (void)done_side;
        cyc = left_complete ? right : left;
        pairs = left_complete ? right_pairs : left_pairs;
    }
}

} // namespace

std::vector<EdgePair> lc_order(const CycleGraph& c, const PlanarMatching& m) {
    if (!lc_orderable(c, m)) {
        throw Error(ErrorCode::NotOrderable, "the quotient has " + std::to_string(cycle_count(quotient(c, m))) +
                                                 " independent cycles");
    }
    std::vector<int> cyc(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        cyc[i] = static_cast<int>(i);
    }
    detail::UnionFind uf(c.n);
    std::vector<EdgePair> out;
    order_rec(c, cyc, m.pairs, uf, out);
    return out;
}

std::vector<EdgePair> lc_order_last_active(const CycleGraph& c, const PlanarMatching& m, int c0) {
    if (!m.is_complete(c)) {
        throw Error(ErrorCode::NotComplete, "the matching leaves edges unmatched");
    }
    if (c0 < 0 || static_cast<std::size_t>(c0) >= c.n) {
        throw Error(ErrorCode::BadReference, "vertex out of range");
    }
    detail::UnionFind uf(c.n);
    for (const auto& p : m.pairs) {
        identify(c, uf, p);
    }
    return collapse_onto(c, uf, m.pairs, uf.find(static_cast<std::size_t>(c0)));
}

std::vector<std::vector<EdgePair>> all_lc_orders(const CycleGraph& c, const PlanarMatching& m) {
    std::vector<std::vector<EdgePair>> out;
    std::vector<EdgePair> cur;
    std::vector<bool> used(m.pairs.size(), false);
    std::function<void(detail::UnionFind&)> rec = [&](detail::UnionFind& uf) {
        if (cur.size() == m.pairs.size()) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < m.pairs.size(); ++i) {
            if (used[i] || !shares_endpoint(c, uf, m.pairs[i])) {
                continue;
            }
            detail::UnionFind next = uf;
            identify(c, next, m.pairs[i]);
            used[i] = true;
            cur.push_back(m.pairs[i]);
            rec(next);
            cur.pop_back();
            used[i] = false;
        }
    };
    detail::UnionFind uf(c.n);
    rec(uf);
    return out;
}

bool brute_force_orderable(const CycleGraph& c, const PlanarMatching& m) {
    const std::size_t k = m.pairs.size();
    std::vector<char> seen(std::size_t{1} << k, 0);
    std::function<bool(std::size_t)> dfs = [&](std::size_t mask) {
        if (mask == (std::size_t{1} << k) - 1) {
            return true;
        }
        if (seen[mask]) {
            return false;
        }
        seen[mask] = 1;
        detail::UnionFind uf(c.n);
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) {
                identify(c, uf, m.pairs[i]);
            }
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (!(mask >> i & 1) && shares_endpoint(c, uf, m.pairs[i]) && dfs(mask | (std::size_t{1} << i))) {
                return true;
            }
        }
        return false;
    };
    return dfs(0);
}

OrderCheck validate_order(const CycleGraph& c, const PlanarMatching& m, const std::vector<EdgePair>& order,
                          std::optional<int> c0) {
    OrderCheck out;
    auto sorted = order;
    for (auto& p : sorted) {
        if (p.first > p.second) {
            std::swap(p.first, p.second);
        }
    }
    auto norm = sorted;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != m.pairs) {
        out.valid = false;
        return out;
    }
    detail::UnionFind uf(c.n);
    std::vector<EdgePair> applied;
    out.betti.push_back(cycle_count(quotient(c, applied)));
    for (std::size_t s = 0; s < norm.size(); ++s) {
        if (c0) {
            auto g = quotient(c, applied);
            if (!g.active[static_cast<std::size_t>(g.vertex_of[static_cast<std::size_t>(*c0)])]) {
                out.valid = false;
                out.failed_step = s;
                return out;
            }
        }
        if (!shares_endpoint(c, uf, norm[s])) {
            out.valid = false;
            out.failed_step = s;
            return out;
        }
        identify(c, uf, norm[s]);
        applied.push_back(norm[s]);
        out.betti.push_back(cycle_count(quotient(c, applied)));
    }
    return out;
}

std::vector<PlanarMatching> planar_matchings(const CycleGraph& c, bool complete_only) {
    // matchings of the interval [lo, hi) of edge indices
    std::function<std::vector<std::vector<EdgePair>>(int, int)> rec = [&](int lo, int hi) {
        std::vector<std::vector<EdgePair>> out;
        if (lo >= hi) {
            out.emplace_back();
            return out;
        }
        if (!complete_only) {
            for (auto& rest : rec(lo + 1, hi)) {
                out.push_back(std::move(rest));
            }
        }
        for (int j = lo + 1; j < hi; ++j) {
            auto inner = rec(lo + 1, j);
            auto outer = rec(j + 1, hi);
            for (const auto& a : inner) {
                for (const auto& b : outer) {
                    std::vector<EdgePair> m{{lo, j}};
                    m.insert(m.end(), a.begin(), a.end());
                    m.insert(m.end(), b.begin(), b.end());
                    out.push_back(std::move(m));
                }
            }
        }
        return out;
    };
    std::vector<PlanarMatching> out;
    for (auto& pairs : rec(0, static_cast<int>(c.n))) {
        std::sort(pairs.begin(), pairs.end());
        out.push_back(PlanarMatching{std::move(pairs)});
    }
    return out;
}

} // namespace mogami
