#pragma once

#include <mogami/core.hpp>
#include <mogami/moves.hpp>

#include <filesystem>
#include <map>
#include <string>

namespace mogami {

/// PAIR text: `pair v1`, `tets N`, then one `g A fA B fB pa pb pc` line per
/// pairing in canonical order. Round-trips bit-exactly.
std::string write_pair(const Pseudomanifold& p);
Pseudomanifold read_pair(const std::string& text);

/// A complex loaded from vertex labels, remembering which label sits at each
/// corner.
struct LabeledComplex {
    Pseudomanifold complex;
    std::vector<std::array<std::string, 4>> corner_labels;

    /// Vertex class carrying `label`; throws BadReference if absent.
    int vertex(const std::string& label) const;
    /// Facet of tetrahedron `tet` spanned by the three labels.
    FacetRef facet(std::size_t tet, const std::array<std::string, 3>& labels) const;
    /// The unique boundary facet spanned by the three labels.
    FacetRef boundary_facet(const std::array<std::string, 3>& labels) const;
    /// Corner images of `from`'s sorted corners when label x goes to map[x].
    std::array<int, 3> corr(FacetRef from, FacetRef to, const std::map<std::string, std::string>& map) const;
};

/// SIMP text: one tetrahedron per line as four alphanumeric labels. Facets
/// with equal label triples are paired; a triple in more than two
/// tetrahedra is a ParseError.
LabeledComplex read_simp(const std::string& text);
/// Vertex classes become labels `v<k>`; requires a simplicial complex.
std::string write_simp(const Pseudomanifold& p);

/// Builds a complex from labeled tetrahedra without text parsing.
LabeledComplex from_labels(const std::vector<std::array<std::string, 4>>& tets);

/// Script text: `mode LC|MOGAMI|FREE`, an initial complex (inline PAIR
/// lines, a `simp` ... `end` block, or `include <file>`), then steps
/// `U|G A fA B fB pa pb pc`, `S t`, `P t`.
MoveScript read_script(const std::string& text, const std::filesystem::path& base_dir = {});
std::string write_script(const MoveScript& s);

std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

/// Loads a PAIR or SIMP file, deciding by the first meaningful line.
Pseudomanifold load_complex(const std::filesystem::path& path);

} // namespace mogami
