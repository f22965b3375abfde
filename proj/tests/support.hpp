#pragma once

// Shared helpers for the test binaries: random generators and independent
// brute-force oracles.

#include <mogami/core.hpp>
#include <mogami/moves.hpp>

#include <algorithm>
#include <functional>
#include <tuple>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace testing {

using namespace mogami;

inline Perm4 random_perm(std::mt19937_64& rng) {
    return Perm4::from_index(static_cast<int>(std::uniform_int_distribution<int>(0, 23)(rng)));
}

/// Random tree of n tetrahedra: each new tetrahedron is attached to a random
/// free facet of the ones before it, with a random corner map.
inline Pseudomanifold random_tree(std::size_t n, std::mt19937_64& rng) {
    std::vector<Pairing> pairings;
    std::vector<FacetRef> free;
    for (int f = 0; f < 4; ++f) {
        free.push_back({0, f});
    }
    for (std::size_t t = 1; t < n; ++t) {
        std::size_t pick = std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng);
        FacetRef a = free[pick];
        free.erase(free.begin() + static_cast<long>(pick));
        int fb = std::uniform_int_distribution<int>(0, 3)(rng);
        // random corner map with a.face -> fb
        Perm4 g;
        do {
            g = random_perm(rng);
        } while (g[a.face] != fb);
        pairings.push_back(make_pairing(a, {t, fb}, g));
        for (int f = 0; f < 4; ++f) {
            if (f != fb) {
                free.push_back({t, f});
            }
        }
    }
    return Pseudomanifold::build(n, pairings);
}

/// Strict folds available on p whose result stays simplicial.
inline std::vector<std::pair<FacetRef, FacetRef>> simplicial_folds(const Pseudomanifold& p) {
    std::vector<std::pair<FacetRef, FacetRef>> out;
    auto facets = p.boundary_facets();
    for (std::size_t i = 0; i < facets.size(); ++i) {
        for (std::size_t j = i + 1; j < facets.size(); ++j) {
            if (!is_strict_fold(p, facets[i], facets[j])) {
                continue;
            }
            if (is_simplicial(fold(p, facets[i], facets[j]))) {
                out.emplace_back(facets[i], facets[j]);
            }
        }
    }
    return out;
}

struct FoldBall {
    Pseudomanifold tree;
    Pseudomanifold ball;
    std::size_t folds = 0;
};

/// Random tree of up to `max_tets` tetrahedra followed by up to `max_folds`
/// random strict folds that keep the complex simplicial.
inline FoldBall random_fold_ball(std::size_t max_tets, std::size_t max_folds, std::mt19937_64& rng) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_tets)(rng);
    FoldBall b;
    b.tree = random_tree(n, rng);
    b.ball = b.tree;
    std::size_t want = std::uniform_int_distribution<std::size_t>(0, max_folds)(rng);
    for (std::size_t k = 0; k < want; ++k) {
        auto options = simplicial_folds(b.ball);
        if (options.empty()) {
            break;
        }
        auto [f1, f2] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        b.ball = fold(b.ball, f1, f2);
        ++b.folds;
    }
    return b;
}

inline Pseudomanifold random_relabel(const Pseudomanifold& p, std::mt19937_64& rng) {
    std::vector<std::size_t> tets(p.num_tets());
    std::iota(tets.begin(), tets.end(), std::size_t{0});
    std::shuffle(tets.begin(), tets.end(), rng);
    std::vector<Perm4> maps(p.num_tets());
    for (auto& m : maps) {
        m = random_perm(rng);
    }
    return relabel(p, tets, maps);
}

/// Exhaustive isomorphism test by backtracking over tetrahedron and corner
/// assignments, checking every facet gluing explicitly.
class IsoSearch {
public:
    IsoSearch(const Pseudomanifold& a, const Pseudomanifold& b) : a_(a), b_(b) {}

    bool run() {
        if (a_.num_tets() != b_.num_tets() || a_.num_pairings() != b_.num_pairings()) {
            return false;
        }
        tet_map_.assign(a_.num_tets(), -1);
        corner_map_.assign(a_.num_tets(), Perm4());
        used_.assign(b_.num_tets(), false);
        return extend();
    }

private:
    bool extend() {
        // next unmapped tetrahedron of a
        std::size_t t = 0;
        while (t < a_.num_tets() && tet_map_[t] >= 0) {
            ++t;
        }
        if (t == a_.num_tets()) {
            return check_all();
        }
        for (std::size_t u = 0; u < b_.num_tets(); ++u) {
            if (used_[u]) {
                continue;
            }
            for (int i = 0; i < 24; ++i) {
                auto saved_tets = tet_map_;
                auto saved_maps = corner_map_;
                auto saved_used = used_;
                if (assign(t, u, Perm4::from_index(i)) && extend()) {
                    return true;
                }
                tet_map_ = saved_tets;
                corner_map_ = saved_maps;
                used_ = saved_used;
            }
        }
        return false;
    }

    /// Maps t -> u via m and propagates through the gluings of a.
    bool assign(std::size_t t, std::size_t u, Perm4 m) {
        std::vector<std::tuple<std::size_t, std::size_t, Perm4>> work{{t, u, m}};
        while (!work.empty()) {
            auto [x, y, mx] = work.back();
            work.pop_back();
            if (tet_map_[x] >= 0) {
                if (static_cast<std::size_t>(tet_map_[x]) != y || corner_map_[x] != mx) {
                    return false;
                }
                continue;
            }
            if (used_[y]) {
                return false;
            }
            tet_map_[x] = static_cast<int>(y);
            corner_map_[x] = mx;
            used_[y] = true;
            for (int f = 0; f < 4; ++f) {
                auto ga = a_.gluing({x, f});
                auto gb = b_.gluing({y, mx[f]});
                if (ga.has_value() != gb.has_value()) {
                    return false;
                }
                if (!ga) {
                    continue;
                }
                // corner map of the neighbour forced by commuting squares
                Perm4 next = gb->perm * mx * ga->perm.inverse();
                work.emplace_back(ga->other.tet, gb->other.tet, next);
            }
        }
        return true;
    }

    bool check_all() const {
        for (std::size_t x = 0; x < a_.num_tets(); ++x) {
            for (int f = 0; f < 4; ++f) {
                auto ga = a_.gluing({x, f});
                auto y = static_cast<std::size_t>(tet_map_[x]);
                auto gb = b_.gluing({y, corner_map_[x][f]});
                if (ga.has_value() != gb.has_value()) {
                    return false;
                }
                if (ga) {
                    if (static_cast<std::size_t>(tet_map_[ga->other.tet]) != gb->other.tet) {
                        return false;
                    }
                    if (corner_map_[ga->other.tet] * ga->perm != gb->perm * corner_map_[x]) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    const Pseudomanifold& a_;
    const Pseudomanifold& b_;
    std::vector<int> tet_map_;
    std::vector<Perm4> corner_map_;
    std::vector<bool> used_;
};

inline bool brute_isomorphic(const Pseudomanifold& a, const Pseudomanifold& b) { return IsoSearch(a, b).run(); }

/// Number of isomorphism classes among `items` using the brute-force oracle.
inline std::size_t count_types(const std::vector<Pseudomanifold>& items) {
    // bucket by a cheap invariant (vertex-class sizes) before pairwise search
    auto key = [](const Pseudomanifold& p) {
        std::vector<std::size_t> sizes;
        for (const auto& c : p.face_classes(0)) {
            sizes.push_back(c.members.size());
        }
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    };
    std::map<std::vector<std::size_t>, std::vector<const Pseudomanifold*>> buckets;
    std::size_t total = 0;
    for (const auto& p : items) {
        auto& reps = buckets[key(p)];
        bool found = false;
        for (const auto* r : reps) {
            if (brute_isomorphic(p, *r)) {
                found = true;
                break;
            }
        }
        if (!found) {
            reps.push_back(&p);
            ++total;
        }
    }
    return total;
}

/// Every tree of n tetrahedra obtainable by attaching tetrahedron k to a free
/// facet of tetrahedra 0..k-1 with any of the six corner maps onto face 0.
inline std::vector<Pseudomanifold> all_trees(std::size_t n) {
    std::vector<Pseudomanifold> out;
    std::vector<Pairing> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == n) {
            out.push_back(Pseudomanifold::build(n, cur));
            return;
        }
        std::set<std::size_t> used;
        for (const auto& p : cur) {
            used.insert(p.a.index());
            used.insert(p.b.index());
        }
        for (std::size_t t = 0; t < k; ++t) {
            for (int f = 0; f < 4; ++f) {
                FacetRef a{t, f};
                if (used.count(a.index())) {
                    continue;
                }
                std::array<int, 3> c{1, 2, 3};
                do {
                    cur.push_back(Pairing{a, {k, 0}, c});
                    rec(k + 1);
                    cur.pop_back();
                } while (std::next_permutation(c.begin(), c.end()));
            }
        }
    };
    rec(1);
    return out;
}

} // namespace testing
