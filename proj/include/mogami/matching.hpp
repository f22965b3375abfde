#pragma once

#include <mogami/error.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace mogami {

/// Cycle with n vertices 0..n-1 and edges e_i = (i, i+1 mod n).
struct CycleGraph {
    std::size_t n = 3;

    explicit CycleGraph(std::size_t edges);
};

/// Unordered pair of edge indices, stored with first < second.
using EdgePair = std::pair<int, int>;

struct PlanarMatching {
    std::vector<EdgePair> pairs;

    bool is_complete(const CycleGraph& c) const { return 2 * pairs.size() == c.n; }
};

/// Normalizes the pairs and checks disjointness (BadReference) and the chord
/// test (CrossingMatching).
PlanarMatching make_matching(const CycleGraph& c, std::vector<EdgePair> pairs);

struct QuotientMultigraph {
    std::size_t num_vertices = 0;
    std::vector<std::pair<int, int>> edges;   // endpoint classes; loops allowed
    std::vector<int> vertex_of;               // cycle vertex -> class
    std::vector<int> edge_of;                 // cycle edge -> edge class
    std::vector<bool> active;                 // per vertex class
    std::size_t num_components = 0;
};

/// Identifies each matched pair a, b by the fold convention a = b+1,
/// a+1 = b. The second form applies only the listed pairs.
QuotientMultigraph quotient(const CycleGraph& c, const PlanarMatching& m);
QuotientMultigraph quotient(const CycleGraph& c, const std::vector<EdgePair>& applied);

/// First Betti number E - V + components.
long cycle_count(const QuotientMultigraph& g);

bool lc_orderable(const CycleGraph& c, const PlanarMatching& m);

/// An order in which every identification is an LC gluing, following the
/// recursive construction: tree-collapse of the complete side, postponed
/// bridge, recursion on the other side. Throws NotOrderable.
std::vector<EdgePair> lc_order(const CycleGraph& c, const PlanarMatching& m);

/// For a complete matching: the leaf-deletion order of the quotient tree
/// onto the class of `c0`. Throws NotComplete.
std::vector<EdgePair> lc_order_last_active(const CycleGraph& c, const PlanarMatching& m, int c0);

/// Exhaustive search over the order of identifications.
bool brute_force_orderable(const CycleGraph& c, const PlanarMatching& m);

/// Every full order of the matched pairs made of LC gluings only.
std::vector<std::vector<EdgePair>> all_lc_orders(const CycleGraph& c, const PlanarMatching& m);

struct OrderCheck {
    bool valid = true;
    std::size_t failed_step = 0;
    std::vector<long> betti;   // beta1 before the first step and after each step
};

/// Replays `order` step by step. Each step must identify two edges sharing a
/// current endpoint; with `c0`, that vertex must stay active until the final
/// step. An order must contain every pair of the matching exactly once.
OrderCheck validate_order(const CycleGraph& c, const PlanarMatching& m, const std::vector<EdgePair>& order,
                          std::optional<int> c0 = std::nullopt);

/// All planar matchings of the edges of an n-cycle (Motzkin many).
std::vector<PlanarMatching> planar_matchings(const CycleGraph& c, bool complete_only = false);

} // namespace mogami
