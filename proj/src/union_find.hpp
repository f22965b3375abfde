#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace mogami::detail {

/// Union-find with an optional parity bit per element (relative orientation
/// with respect to the root). `conflict(root)` records an odd cycle.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), parity_(n, 0), conflict_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::pair<std::size_t, int> find_with_parity(std::size_t x) {
        int par = 0;
        std::size_t root = x;
        while (parent_[root] != root) {
            par ^= parity_[root];
            root = parent_[root];
        }
        // path compression, keeping parities relative to the root
        int running = par;
        while (parent_[x] != root) {
            std::size_t next = parent_[x];
            int next_par = running ^ parity_[x];
            parent_[x] = root;
            parity_[x] = static_cast<char>(running);
            x = next;
            running = next_par;
        }
        return {root, par};
    }

    std::size_t find(std::size_t x) { return find_with_parity(x).first; }

    /// Joins x and y with relative parity `par` (0 = same orientation).
    void unite(std::size_t x, std::size_t y, int par = 0) {
        auto [rx, px] = find_with_parity(x);
        auto [ry, py] = find_with_parity(y);
        if (rx == ry) {
            if ((px ^ py) != par) {
                conflict_[rx] = 1;
            }
            return;
        }
        parent_[ry] = rx;
        parity_[ry] = static_cast<char>(px ^ py ^ par);
        conflict_[rx] = static_cast<char>(conflict_[rx] | conflict_[ry]);
    }

    /// Plain union; false when x and y were already joined.
    bool merge(std::size_t x, std::size_t y) {
        if (find(x) == find(y)) {
            return false;
        }
        unite(x, y);
        return true;
    }

    bool conflict(std::size_t x) { return conflict_[find(x)] != 0; }

    std::size_t size() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<char> parity_;
    std::vector<char> conflict_;
};

/// Dense class numbering: class ids assigned in order of first member.
inline std::vector<int> number_classes(UnionFind& uf, std::size_t& count) {
    std::vector<int> root_id(uf.size(), -1);
    std::vector<int> out(uf.size());
    count = 0;
    for (std::size_t i = 0; i < uf.size(); ++i) {
        std::size_t r = uf.find(i);
        if (root_id[r] < 0) {
            root_id[r] = static_cast<int>(count++);
        }
        out[i] = root_id[r];
    }
    return out;
}

} // namespace mogami::detail
