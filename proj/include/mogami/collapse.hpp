#pragma once

#include <mogami/core.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mogami {

/// Finite 2-dimensional simplicial complex with a marked subcomplex D.
/// Adding a triangle adds its edges and vertices.
class Complex2 {
public:
    int add_vertex(const std::string& label);
    int add_edge(const std::string& a, const std::string& b);
    int add_triangle(const std::string& a, const std::string& b, const std::string& c);

    /// Marks a face and all its faces as members of D.
    void mark_vertex(int v);
    void mark_edge(int e);
    void mark_triangle(int t);

    std::size_t num_vertices() const { return labels_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }

    const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
    std::optional<int> find_vertex(const std::string& label) const;
    std::optional<int> find_edge(int a, int b) const;

    const std::array<int, 2>& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::array<int, 3>& triangle(int t) const { return triangles_.at(static_cast<std::size_t>(t)); }
    /// Edge ids of triangle t: [b,c], [a,c], [a,b].
    std::array<int, 3> triangle_edges(int t) const;

    bool in_d(int dim, int id) const;
    bool d_empty() const;

    int euler_characteristic() const {
        return static_cast<int>(num_vertices()) - static_cast<int>(num_edges()) +
               static_cast<int>(num_triangles());
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, int> by_label_;
    std::vector<std::array<int, 2>> edges_;
    std::map<std::array<int, 2>, int> by_ends_;
    std::vector<std::array<int, 3>> triangles_;
    std::map<std::array<int, 3>, int> by_corners_;
    std::array<std::vector<bool>, 3> d_;
};

/// Text form: `v <label>`, `e a b`, `t a b c`; a leading `d` marks the face
/// as part of D.
Complex2 read_complex2(const std::string& text);
std::string write_complex2(const Complex2& k);

/// Face reference inside a Complex2.
struct Face2 {
    int dim = 0;
    int id = 0;
    friend auto operator<=>(const Face2&, const Face2&) = default;
};

struct CollapseStep {
    Face2 free;
    Face2 coface;
};

/// Alive flags of every face; the state a collapse sequence acts on.
struct CollapseState {
    std::array<std::vector<bool>, 3> alive;

    static CollapseState full(const Complex2& k);
    std::size_t size() const;
    friend bool operator==(const CollapseState&, const CollapseState&) = default;
    friend auto operator<=>(const CollapseState&, const CollapseState&) = default;
};

/// Free faces outside D: faces of the state properly contained in exactly one
/// other face of the state, that face being outside D as well.
std::vector<CollapseStep> free_faces(const Complex2& k, const CollapseState& s);

void apply_collapse(CollapseState& s, const CollapseStep& step);

struct CollapseResult {
    CollapseState residual;
    std::vector<CollapseStep> trace;
};

/// Repeatedly removes the lowest free face (edges before vertices, then by
/// index) until no free face outside D remains.
CollapseResult greedy_collapse(const Complex2& k, const CollapseState& start);
CollapseResult greedy_collapse(const Complex2& k);

/// State equal to D / a single vertex.
bool is_d(const Complex2& k, const CollapseState& s);
bool is_point(const CollapseState& s);

enum class Verdict { Yes, No, Unknown };
std::string_view to_string(Verdict v);

/// Collapses onto D (onto some vertex when D is empty). Greedy first, then a
/// memoized search over collapse sequences visiting at most `budget` states.
Verdict collapses_to(const Complex2& k, std::size_t budget = 200000);

struct ExtensiveResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<CollapseState> stuck;   // witness for No
    std::size_t states = 0;
};

/// Every collapse sequence avoiding D ends in D (or in a point when D is
/// empty). Explores all reachable states up to `budget`.
ExtensiveResult extensively_collapsible(const Complex2& k, std::size_t budget = 200000);

/// Replays a trace: every recorded face must be free at its step.
bool trace_replays(const Complex2& k, const std::vector<CollapseStep>& trace);

/// Triangles of P not crossed by the dual spanning tree `tree` (pairing
/// indices), plus every edge and vertex; D is the boundary. Requires a
/// simplicial P. Throws NotSpanningTree or NotRepresentable.
Complex2 k_t(const Pseudomanifold& p, const std::vector<std::size_t>& tree);

/// All spanning trees of the dual graph (pairing indices), at most `limit`.
std::vector<std::vector<std::size_t>> spanning_trees(const Pseudomanifold& p, std::size_t limit = 100000);

struct ElcResult {
    enum class Status { Verified, Refuted, Unknown };
    Status status = Status::Unknown;
    std::vector<std::size_t> witness;   // spanning tree whose K^T fails
    std::size_t trees_checked = 0;
};

std::string_view to_string(ElcResult::Status s);

struct ElcMode {
    bool all = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;   // worker threads over spanning-tree batches

    static ElcMode All() { return {}; }
    static ElcMode Sample(std::size_t k, std::uint64_t seed) { return {false, k, seed, 1}; }
};

ElcResult extensively_lc_check(const Pseudomanifold& b, const ElcMode& mode = ElcMode::All(),
                               std::size_t budget = 200000);

} // namespace mogami
