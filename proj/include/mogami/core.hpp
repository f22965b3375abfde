#pragma once

#include <mogami/error.hpp>
#include <mogami/perm.hpp>

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mogami {

/// A corner (vertex) of one abstract tetrahedron.
struct CornerRef {
    std::size_t tet = 0;
    int corner = 0;

    friend auto operator<=>(const CornerRef&, const CornerRef&) = default;
};

/// Face `face` of tetrahedron `tet`: the triangle omitting corner `face`.
struct FacetRef {
    std::size_t tet = 0;
    int face = 0;

    std::size_t index() const { return tet * 4 + static_cast<std::size_t>(face); }

    friend auto operator<=>(const FacetRef&, const FacetRef&) = default;
};

/// Identification of facet `a` with facet `b`. `corr[i]` is the corner of
/// `b.tet` receiving the i-th corner (in increasing order) of face `a.face`.
struct Pairing {
    FacetRef a;
    FacetRef b;
    std::array<int, 3> corr{};

    friend bool operator==(const Pairing&, const Pairing&) = default;
};

/// Other side of a paired facet; `perm` sends corners of this tetrahedron to
/// corners of `other.tet` and maps this face index onto `other.face`.
struct Gluing {
    FacetRef other;
    Perm4 perm;
};

/// Corners of face `face`, in increasing order.
std::array<int, 3> face_corners(int face);

/// Local edge index 0..5 of the corner pair {x, y}.
int edge_index(int x, int y);

/// The two corners (increasing) of local edge `edge`.
std::array<int, 2> edge_corners(int edge);

/// Perm4 realizing a pairing from a's side (a.face maps to b.face).
Perm4 pairing_perm(const Pairing& p);

/// Pairing from a facet, its image, and a full corner permutation.
Pairing make_pairing(FacetRef a, FacetRef b, const Perm4& perm);

/// Member of a face class: the tetrahedron plus a local index (corner, edge
/// index, or face index depending on the class dimension).
struct SubFace {
    std::size_t tet = 0;
    int local = 0;

    friend auto operator<=>(const SubFace&, const SubFace&) = default;
};

struct FaceClass {
    int dim = 0;
    std::vector<SubFace> members;
    bool boundary = false;
};

/// Pure 3-dimensional pseudomanifold stored as tetrahedra plus an involutive
/// facet pairing. Vertex, edge, and triangle classes are derived from the
/// pairing on construction; the value is immutable afterwards.
class Pseudomanifold {
public:
    Pseudomanifold() = default;

    /// Throws DuplicateFacet, SelfPairedFacet, BadCorr or BadReference.
    static Pseudomanifold build(std::size_t num_tets, std::span<const Pairing> pairings);

    std::size_t num_tets() const { return num_tets_; }
    std::size_t num_pairings() const { return pairings_.size(); }

    /// Pairings in canonical form: `a < b`, sorted by `a`.
    const std::vector<Pairing>& pairings() const { return pairings_; }

    bool is_paired(FacetRef f) const;
    std::optional<Gluing> gluing(FacetRef f) const;

    std::size_t num_classes(int dim) const;
    const std::vector<FaceClass>& face_classes(int dim) const;

    int vertex_class(std::size_t tet, int corner) const;
    int edge_class(std::size_t tet, int edge) const;
    /// True if local edge `edge` runs against the orientation of its class
    /// representative.
    bool edge_reversed(std::size_t tet, int edge) const;
    /// True if the edge class is identified with itself reversed.
    bool edge_self_reversed(int edge_class) const;
    int triangle_class(FacetRef f) const;

    /// Vertex classes of the representative's corners p < q < r.
    std::array<int, 3> triangle_vertices(int tri) const;
    /// Edge classes of [q,r], [p,r], [p,q] of the representative.
    std::array<int, 3> triangle_edges(int tri) const;
    /// Tail and head vertex classes of the representative edge.
    std::array<int, 2> edge_vertices(int edge) const;

    bool is_boundary(int dim, int cls) const;

    /// Unpaired facets in increasing order.
    std::vector<FacetRef> boundary_facets() const;

    /// Dual-graph components.
    std::size_t num_components() const { return num_components_; }
    int component_of(std::size_t tet) const;

    Pseudomanifold with_pairing(const Pairing& p) const;
    Pseudomanifold without_pairing(FacetRef f) const;

    /// Pairing index (into pairings()) realizing triangle class `tri`, or
    /// nullopt for a boundary triangle.
    std::optional<std::size_t> pairing_of_triangle(int tri) const;

private:
    void derive();

    std::size_t num_tets_ = 0;
    std::vector<Pairing> pairings_;
    std::vector<int> partner_;       // per facet: partner facet index or -1
    std::vector<Perm4> perm_;        // per facet
    std::vector<int> vertex_of_;     // per corner slot (4 per tet)
    std::vector<int> edge_of_;       // per edge slot (6 per tet)
    std::vector<char> edge_flip_;    // per edge slot
    std::vector<char> edge_self_reversed_;
    std::vector<int> triangle_of_;   // per facet slot
    std::array<std::vector<FaceClass>, 3> classes_;
    std::vector<int> component_;
    std::size_t num_components_ = 0;
};

// ---------------------------------------------------------------------------
// Boundary structure

struct BoundaryComplex {
    std::vector<int> triangles;   // boundary triangle classes
    std::vector<int> edges;       // boundary edge classes
    std::vector<int> vertices;    // boundary vertex classes
    /// For each entry of `edges`, number of boundary triangle sides on it.
    std::vector<int> edge_degree;
    int euler_characteristic = 0;
    std::size_t num_components = 0;
    /// Every boundary edge lies on exactly two boundary triangle sides.
    bool closed = false;
};

BoundaryComplex boundary(const Pseudomanifold& p);

struct LinkComponent {
    enum class Kind { Cycle, Path, Branched };
    Kind kind = Kind::Cycle;
    std::size_t num_vertices = 0;
    std::size_t num_edges = 0;
    /// Edge classes (with end) forming the component's vertices.
    std::vector<int> edge_ends;
};

/// Link of a boundary vertex class inside the boundary complex. Link vertices
/// are ends of boundary edges at the vertex; link edges come from the corner
/// occurrences of the vertex in boundary triangles. Throws InteriorVertex.
std::vector<LinkComponent> boundary_link(const Pseudomanifold& p, int vertex);

/// Boundary vertices whose boundary link is not a single cycle.
std::vector<int> singular_boundary_vertices(const Pseudomanifold& p);

struct SimplicialWitness {
    int dim = 0;
    int first = -1;
    int second = -1;   // -1 when a single face has repeated vertices
};

/// Checks (a) every cell has pairwise distinct vertex classes and (b) no two
/// distinct classes of equal dimension span the same vertex set. Returns
/// nullopt for a simplicial complex, otherwise the offending faces
/// (`dim` 3 refers to tetrahedra).
std::optional<SimplicialWitness> simplicial_violation(const Pseudomanifold& p);
/// Every violation, boundary triangle pairs first, then other triangle pairs,
/// faces with repeated vertices, edge pairs, tetrahedron pairs.
std::vector<SimplicialWitness> simplicial_violations(const Pseudomanifold& p);
bool is_simplicial(const Pseudomanifold& p);

std::vector<int> interior_vertices(const Pseudomanifold& p);

struct DualArc {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t pairing = 0;
};

struct DualGraph {
    std::size_t num_nodes = 0;
    std::vector<DualArc> arcs;   // one per interior triangle (pairing)
};

DualGraph dual_graph(const Pseudomanifold& p);
bool strongly_connected(const Pseudomanifold& p);
bool link_strongly_connected(const Pseudomanifold& p, int vertex);

/// Combinatorial data of the link of a vertex class: one link triangle per
/// corner occurrence, glued through interior facets.
struct VertexLink {
    std::size_t num_triangles = 0;
    std::size_t num_edges = 0;
    std::size_t num_vertices = 0;
    std::size_t num_boundary_edges = 0;
    std::size_t num_boundary_cycles = 0;
    bool boundary_is_cycles = true;
    int euler_characteristic() const {
        return static_cast<int>(num_vertices) - static_cast<int>(num_edges) +
               static_cast<int>(num_triangles);
    }
    bool is_disk() const;
    bool is_sphere() const;
};

VertexLink vertex_link(const Pseudomanifold& p, int vertex);

// ---------------------------------------------------------------------------
// Invariants

int euler_characteristic(const Pseudomanifold& p);

struct Homology {
    std::array<long, 4> betti{};
    /// Invariant factors > 1 of H1.
    std::vector<std::string> h1_torsion;
};

Homology homology_ranks(const Pseudomanifold& p);

/// Relabeling-invariant encoding; decodable by from_signature.
std::string signature(const Pseudomanifold& p);
Pseudomanifold from_signature(const std::string& sig);
bool isomorphic(const Pseudomanifold& a, const Pseudomanifold& b);

/// Relabels tetrahedra by `tet_map` (old -> new) and corners of tetrahedron
/// t by `corner_maps[t]` (old corner -> new corner).
Pseudomanifold relabel(const Pseudomanifold& p, std::span<const std::size_t> tet_map,
                       std::span<const Perm4> corner_maps);

/// Sub-pseudomanifold on one dual-graph component, tetrahedra renumbered in
/// increasing order.
Pseudomanifold component(const Pseudomanifold& p, int component);

/// Disjoint union, second operand's tetrahedra shifted after the first's.
Pseudomanifold disjoint_union(const Pseudomanifold& a, const Pseudomanifold& b);

// ---------------------------------------------------------------------------
// Ball recognition (partial)

struct BallCertificate {
    enum class Status { Certified, Refuted, Unknown };
    Status status = Status::Unknown;
    std::string reason;
};

std::string_view to_string(BallCertificate::Status s);

/// Invariant-based refutation only; nullopt when no invariant fails.
std::optional<std::string> ball_refutation(const Pseudomanifold& p);

/// Refutes through invariants, otherwise certifies when greedy reduction
/// reaches single tetrahedra (the reversed trace is a fold construction).
BallCertificate ball_certificate(const Pseudomanifold& p);

} // namespace mogami
