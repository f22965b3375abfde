#pragma once

#include <mogami/core.hpp>
#include <mogami/moves.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mogami {

struct ReductionStep {
    UngluingKind kind = UngluingKind::Split;
    int triangle = 0;   // class index at the time of the step
    Pairing removed;
};

struct NucleusDecomposition {
    Pseudomanifold residual;   // the input with every trace pairing removed
    std::vector<Pseudomanifold> components;
    std::vector<std::string> signatures;
    std::vector<ReductionStep> trace;
    std::size_t spreads = 0;
    std::size_t splits = 0;
};

bool is_nucleus(const Pseudomanifold& p);

/// Greedy split/spread reduction. Spreads go first (lowest triangle index),
/// then splits, until neither applies. With `seed`, ties among candidates of
/// the same kind are broken at random instead.
NucleusDecomposition reduce_to_nuclei(const Pseudomanifold& p, std::optional<std::uint64_t> seed = std::nullopt);

struct BallClass {
    enum class Verdict { LC_and_Mogami, Not_Mogami, NotApplicable };
    Verdict verdict = Verdict::NotApplicable;
    std::string reason;
    std::vector<std::string> nuclei;   // signatures of nontrivial nuclei
};

std::string_view to_string(BallClass::Verdict v);

BallClass classify_ball(const Pseudomanifold& p);

/// Reversed reduction trace as an LC script: unites rebuild the tree, then
/// folds undo the spreads. Replays to the input; throws NotLC otherwise.
MoveScript lc_script_from_reduction(const Pseudomanifold& p);

/// Script provenance: a tree-building prefix followed only by strict folds
/// certifies a ball.
BallCertificate ball_certificate(const MoveScript& script);

std::vector<int> spanning_edges(const Pseudomanifold& p);

struct ConfluenceReport {
    bool consistent = true;
    std::vector<std::string> reference;   // sorted component signatures
    std::vector<std::string> divergent;   // first differing multiset, if any
    std::uint64_t divergent_seed = 0;
};

ConfluenceReport confluence_check(const Pseudomanifold& p, std::size_t trials, std::uint64_t seed);

} // namespace mogami
