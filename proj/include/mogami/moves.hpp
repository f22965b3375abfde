#pragma once

#include <mogami/core.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mogami {

enum class GluingKind { Unite, Fold, LC, Mogami, Healing, Other };

std::string_view to_string(GluingKind k);

/// Face classes common to two boundary triangles.
struct Intersection {
    std::vector<int> vertices;
    std::vector<int> edges;
    bool empty() const { return vertices.empty() && edges.empty(); }
};

Intersection triangle_intersection(const Pseudomanifold& p, FacetRef f1, FacetRef f2);

/// Adds the pairing f1 -> f2 with `corr` (image corners of f1's sorted
/// corners). Throws NotBoundary or SameFacet.
Pseudomanifold glue(const Pseudomanifold& p, FacetRef f1, FacetRef f2, const std::array<int, 3>& corr);

/// Kind of the gluing by the intersection of the two triangles; independent
/// of the corner correspondence. Fold and Healing are the one- and
/// two-shared-edge cases of an LC gluing; LC itself is reported when all three
/// edges are shared.
GluingKind classify_gluing(const Pseudomanifold& p, FacetRef f1, FacetRef f2);

/// Fold in the strict sense used for ball provenance: exactly one shared
/// edge and no further shared vertex.
bool is_strict_fold(const Pseudomanifold& p, FacetRef f1, FacetRef f2);

/// Correspondence that sends every shared edge class to itself (ends
/// matching), preferring the bijection fixing the most vertex classes.
std::optional<std::array<int, 3>> derived_corr(const Pseudomanifold& p, FacetRef f1, FacetRef f2);

/// True when `corr` maps every shared edge of f1 onto itself.
bool respects_shared_edges(const Pseudomanifold& p, FacetRef f1, FacetRef f2, const std::array<int, 3>& corr);

/// True when `corr` sends some corner of f1 to a corner of the same vertex
/// class.
bool fixes_shared_vertex(const Pseudomanifold& p, FacetRef f1, FacetRef f2, const std::array<int, 3>& corr);

Pseudomanifold unite(const Pseudomanifold& p, FacetRef f1, FacetRef f2, const std::array<int, 3>& corr);
Pseudomanifold fold(const Pseudomanifold& p, FacetRef f1, FacetRef f2);
Pseudomanifold lc_glue(const Pseudomanifold& p, FacetRef f1, FacetRef f2);
/// Throws AmbiguousCorr when the triangles share only vertices and no corr is
/// given.
Pseudomanifold mogami_glue(const Pseudomanifold& p, FacetRef f1, FacetRef f2,
                           std::optional<std::array<int, 3>> corr = std::nullopt);
Pseudomanifold healing(const Pseudomanifold& p, FacetRef f1, FacetRef f2);

struct Wound {
    FacetRef f1;
    FacetRef f2;
    std::array<int, 3> corr{};
};

/// Boundary triangle pairs sharing exactly two edge classes. Pairs whose
/// shared edges cannot be matched consistently are skipped.
std::vector<Wound> wounds(const Pseudomanifold& p);

enum class UngluingKind { Split, Spread, Other };

std::string_view to_string(UngluingKind k);

/// Number of interior edge classes among the three edges of triangle `tri`.
int interior_edge_count(const Pseudomanifold& p, int tri);

UngluingKind classify_ungluing(const Pseudomanifold& p, int tri);

Pseudomanifold unglue(const Pseudomanifold& p, int tri);
Pseudomanifold split(const Pseudomanifold& p, int tri);
Pseudomanifold spread(const Pseudomanifold& p, int tri);

// ---------------------------------------------------------------------------
// Scripts

enum class ScriptMode { LC, Mogami, Free };

std::string_view to_string(ScriptMode m);

struct GluingStep {
    FacetRef f1;
    FacetRef f2;
    std::array<int, 3> corr{};
    bool unite = false;   // declared with `U`
};

struct UngluingStep {
    int triangle = 0;
    UngluingKind kind = UngluingKind::Split;
};

using Step = std::variant<GluingStep, UngluingStep>;

struct MoveScript {
    ScriptMode mode = ScriptMode::Free;
    Pseudomanifold initial;
    std::vector<Step> steps;
};

struct StepTrace {
    std::string kind;        // GluingKind or UngluingKind token
    bool same_tet = false;   // both facets belong to one tetrahedron
    bool strict_fold = false;
};

struct ReplayResult {
    Pseudomanifold result;
    std::vector<StepTrace> trace;
};

struct ReplayOptions {
    /// Reject gluings between two facets of one tetrahedron.
    bool forbid_same_tet = false;
};

/// Replays the script, checking each step against the declared mode. Throws
/// StepRejected with the 0-based step index in the message.
ReplayResult replay(const MoveScript& script, const ReplayOptions& opts = {});

} // namespace mogami
