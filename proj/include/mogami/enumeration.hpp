#pragma once

#include <mogami/core.hpp>
#include <mogami/reduction.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mogami {

/// Combinatorial types of trees of n tetrahedra, by leaf attachment.
std::set<std::string> enumerate_trees(std::size_t n);

enum class CensusMode { LC, Free };

std::string_view to_string(CensusMode m);
CensusMode parse_census_mode(const std::string& s);

struct CensusRecord {
    std::string signature;
    std::size_t num_tets = 0;
    std::size_t num_vertices = 0;
    BallClass::Verdict verdict = BallClass::Verdict::NotApplicable;
    std::uint64_t provenance = 0;   // hash chain over the generating steps

    std::string to_line() const;
    static CensusRecord from_line(const std::string& line);
    friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

/// Signature set with atomic insert-if-absent.
class SignatureIndex {
public:
    bool insert_if_absent(const std::string& sig);
    bool contains(const std::string& sig) const;
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::set<std::string> sigs_;
};

/// Orientation-consistent corner maps exist on every pairing.
bool is_orientable(const Pseudomanifold& p);

/// Free-mode pruning: a state is kept when it is simplicial, orientable, has
/// no interior vertex, and every vertex link can still become a disk.
bool admissible_state(const Pseudomanifold& p);

/// Children of a state: fold gluings (LC) or every boundary identification
/// with each of the six corner bijections (Free), filtered by
/// admissible_state.
std::vector<std::pair<Pseudomanifold, std::string>> expand_state(const Pseudomanifold& p, CensusMode mode);

struct CensusOptions {
    std::size_t n = 1;
    CensusMode mode = CensusMode::LC;
    unsigned jobs = 1;
    std::size_t batch = 64;
    /// Stop after this many batches (the store stays resumable).
    std::optional<std::size_t> max_batches;
};

struct CensusSummary {
    bool finished = false;
    std::size_t records = 0;
    std::size_t frontier = 0;
    std::map<std::string, std::size_t> by_class;
    std::vector<std::string> findings;   // signatures with a nontrivial nucleus
};

/// In-memory closure; records in discovery order.
std::vector<CensusRecord> enumerate_balls_no_interior(std::size_t n, CensusMode mode, unsigned jobs = 1);

/// Persistent census in `store` (log.tsv, frontier.tsv). `census_run`
/// requires a fresh store; `census_resume` continues one and repairs an
/// interrupted log append. Throws CorruptStore when log and frontier
/// disagree.
CensusSummary census_run(const std::filesystem::path& store, const CensusOptions& opts);
CensusSummary census_resume(const std::filesystem::path& store, unsigned jobs = 1,
                            std::optional<std::size_t> max_batches = std::nullopt);

/// Counts by classification, optionally restricted to records with n
/// tetrahedra. An absent store counts as empty.
CensusSummary census_stats(const std::filesystem::path& store, std::optional<std::size_t> n = std::nullopt);

/// Records of a store, in log order, after validating it.
std::vector<CensusRecord> read_census(const std::filesystem::path& store);

std::uint64_t fnv1a(const std::string& text, std::uint64_t seed = 0xcbf29ce484222325ULL);

} // namespace mogami
