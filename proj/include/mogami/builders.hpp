#pragma once

#include <mogami/io.hpp>
#include <mogami/moves.hpp>

#include <string>
#include <vector>

namespace mogami {

/// Child i+1 hangs off facet `facet` of tetrahedron `parent`; `perm` sends
/// the parent's corners to the child's, so the child's glued facet is
/// perm[facet].
struct TreeNode {
    std::size_t parent = 0;
    int facet = 0;
    Perm4 perm;
};

struct TreeSpec {
    std::vector<TreeNode> children;

    std::size_t num_tets() const { return children.size() + 1; }

    static TreeSpec path(std::size_t n);
    static TreeSpec star(std::size_t n);
};

/// One child per line: `parent facet g0 g1 g2 g3`.
TreeSpec read_tree_spec(const std::string& text);

/// A complex together with the script that constructs it and the label of
/// every corner.
struct Built {
    LabeledComplex labeled;
    MoveScript script;

    const Pseudomanifold& complex() const { return labeled.complex; }
};

/// Unite-only construction. Throws FacetReuse or BadReference.
Built tree_of_tetrahedra(const TreeSpec& spec);

/// Labeled triangles; every edge lies in at most two of them.
struct Complex2Pseudo {
    std::vector<std::array<std::string, 3>> triangles;
};

/// Triangles of a Complex2 (D marking ignored). Throws BadReference when an
/// edge lies in three or more triangles.
Complex2Pseudo to_pseudo(const std::vector<std::array<std::string, 3>>& triangles);

/// Cone with apex `apex` over A: the tree of tetrahedra over a dual spanning
/// tree of A, then A's remaining edge identifications as gluings through the
/// apex. Tetrahedron i sits over triangle i with the apex at corner 3 and
/// triangle corner j at corner j. Throws NotStronglyConnected.
Built cone(const Complex2Pseudo& a, const std::string& apex = "v");

/// Interface triangle: facet `a` of A glued to facet `b` of B (B's own
/// numbering), corr as in a pairing.
struct InterfacePair {
    FacetRef a;
    FacetRef b;
    std::array<int, 3> corr{};
};

/// Interface pair from boundary label triples, a_labels[i] glued to
/// b_labels[i].
InterfacePair interface_pair(const Built& a, const Built& b, const std::array<std::string, 3>& a_labels,
                             const std::array<std::string, 3>& b_labels);

/// Union of two Mogami constructions along a connected interface: all unites
/// (A's, B's, then the first interface triangle), A's gluings, B's gluings,
/// then the remaining interface triangles breadth-first by incidence. B's
/// tetrahedra follow A's. Throws InterfaceNotConnected or NoIncidenceOrder.
Built union_mogami(const Built& a, const Built& b, const std::vector<InterfacePair>& iface);

/// Named construction plus a scenario script starting from it.
struct Fixture {
    std::string name;
    Built base;
    MoveScript scenario;
};

std::vector<std::string> fixture_names();
Fixture fixture(const std::string& name);

} // namespace mogami
