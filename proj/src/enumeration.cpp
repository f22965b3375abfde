#include <mogami/enumeration.hpp>
#include <mogami/io.hpp>
#include <mogami/moves.hpp>

#include "union_find.hpp"

#include <atomic>
#include <deque>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace mogami {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& text, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex16(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << v;
    return out.str();
}

BallClass::Verdict parse_verdict(const std::string& s) {
    for (auto v : {BallClass::Verdict::LC_and_Mogami, BallClass::Verdict::Not_Mogami,
                   BallClass::Verdict::NotApplicable}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw Error(ErrorCode::CorruptStore, "unknown classification '" + s + "'");
}

Pseudomanifold single_tet() {
    return Pseudomanifold::build(1, std::span<const Pairing>{});
}

/// The six bijections from the corners of face f1 onto those of face f2.
std::vector<std::array<int, 3>> all_corrs(int f2) {
    std::vector<std::array<int, 3>> out;
    auto target = face_corners(f2);
    std::array<int, 3> idx{0, 1, 2};
    do {
        out.push_back({target[static_cast<std::size_t>(idx[0])], target[static_cast<std::size_t>(idx[1])],
                       target[static_cast<std::size_t>(idx[2])]});
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

std::string step_text(FacetRef a, FacetRef b, const std::array<int, 3>& corr) {
    std::ostringstream out;
    out << "G " << a.tet << ' ' << a.face << ' ' << b.tet << ' ' << b.face << ' ' << corr[0] << ' ' << corr[1]
        << ' ' << corr[2];
    return out.str();
}

BallClass::Verdict verdict_of(const Pseudomanifold& p) {
    if (ball_certificate(p).status == BallCertificate::Status::Refuted) {
        return BallClass::Verdict::NotApplicable;
    }
    return classify_ball(p).verdict;
}

CensusRecord make_record(const Pseudomanifold& p, std::string sig, std::uint64_t prov) {
    CensusRecord r;
    r.signature = std::move(sig);
    r.num_tets = p.num_tets();
    r.num_vertices = p.num_classes(0);
    r.verdict = verdict_of(p);
    r.provenance = prov;
    return r;
}

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            body(i);
        }
    };
    if (jobs == 1) {
        work();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back(work);
    }
    for (auto& t : pool) {
        t.join();
    }
}

/// Breadth-first closure state shared by the in-memory and stored census.
class Census {
public:
    Census(std::size_t n, CensusMode mode) : n_(n), mode_(mode) {}

    std::vector<CensusRecord> seed() {
        std::vector<CensusRecord> out;
        for (const auto& sig : enumerate_trees(n_)) {
            if (index_.insert_if_absent(sig)) {
                out.push_back(make_record(from_signature(sig), sig, fnv1a("tree " + sig)));
                frontier_.push_back(out.back());
            }
        }
        return out;
    }

    /// Expands up to `batch` frontier states; returns the new records.
    std::vector<CensusRecord> step(std::size_t batch, unsigned jobs) {
        std::size_t k = std::min(batch, frontier_.size());
        std::vector<CensusRecord> states(frontier_.begin(), frontier_.begin() + static_cast<long>(k));
        frontier_.erase(frontier_.begin(), frontier_.begin() + static_cast<long>(k));

        std::vector<std::vector<CensusRecord>> children(k);
        parallel_for(k, jobs, [&](std::size_t i) {
            auto p = from_signature(states[i].signature);
            std::set<std::string> local;
            for (auto& [child, text] : expand_state(p, mode_)) {
                auto sig = signature(child);
                if (index_.contains(sig) || !local.insert(sig).second) {
                    continue;
                }
                children[i].push_back(make_record(child, sig, fnv1a(hex16(states[i].provenance) + " " + text)));
            }
        });
        std::vector<CensusRecord> fresh;
        for (auto& list : children) {
            for (auto& r : list) {
                if (index_.insert_if_absent(r.signature)) {
                    frontier_.push_back(r);
                    fresh.push_back(std::move(r));
                }
            }
        }
        return fresh;
    }

    bool done() const { return frontier_.empty(); }
    std::deque<CensusRecord>& frontier() { return frontier_; }
    SignatureIndex& index() { return index_; }
    std::size_t n() const { return n_; }
    CensusMode mode() const { return mode_; }

private:
    std::size_t n_;
    CensusMode mode_;
    SignatureIndex index_;
    std::deque<CensusRecord> frontier_;
};

// -- store -------------------------------------------------------------------

struct StoreHeader {
    std::size_t n = 0;
    CensusMode mode = CensusMode::LC;
    std::size_t records = 0;
    std::uint64_t loghash = 0;
};

fs::path log_path(const fs::path& store) { return store / "log.tsv"; }
fs::path frontier_path(const fs::path& store) { return store / "frontier.tsv"; }

std::string records_text(const std::vector<CensusRecord>& rs) {
    std::string out;
    for (const auto& r : rs) {
        out += r.to_line();
        out += '\n';
    }
    return out;
}

void write_frontier(const fs::path& store, const StoreHeader& h, const std::deque<CensusRecord>& frontier) {
    std::ostringstream out;
    out << "# census n=" << h.n << " mode=" << to_string(h.mode) << " records=" << h.records
        << " loghash=" << hex16(h.loghash) << '\n';
    for (const auto& r : frontier) {
        out << r.to_line() << '\n';
    }
    write_file_atomic(frontier_path(store), out.str());
}

void append_log(const fs::path& store, const std::string& text) {
    std::ofstream out(log_path(store), std::ios::app | std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot append to " + log_path(store).string());
    }
    out << text;
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoError, "write failed on " + log_path(store).string());
    }
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

StoreHeader parse_header(const std::string& line) {
    StoreHeader h;
    std::istringstream in(line);
    std::string hash, word;
    in >> hash >> word;
    if (hash != "#" || word != "census") {
        throw Error(ErrorCode::CorruptStore, "bad frontier header");
    }
    std::map<std::string, std::string> kv;
    for (std::string tok; in >> tok;) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::CorruptStore, "bad frontier header field '" + tok + "'");
        }
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    try {
        h.n = std::stoul(kv.at("n"));
        h.mode = parse_census_mode(kv.at("mode"));
        h.records = std::stoul(kv.at("records"));
        h.loghash = std::stoull(kv.at("loghash"), nullptr, 16);
    } catch (const Error&) {
        throw Error(ErrorCode::CorruptStore, "bad frontier header");
    } catch (const std::exception&) {
        throw Error(ErrorCode::CorruptStore, "bad frontier header");
    }
    return h;
}

struct LoadedStore {
    StoreHeader header;
    std::vector<CensusRecord> log;
    std::deque<CensusRecord> frontier;
    std::string repair;   // log text to append to finish an interrupted batch
};

/// Reads and validates a store. A log shorter than the header promises is
/// completed from the frontier tail (the batch whose append was cut off).
LoadedStore load_store(const fs::path& store) {
    if (!fs::exists(frontier_path(store)) || !fs::exists(log_path(store))) {
        throw Error(ErrorCode::CorruptStore, "missing log.tsv or frontier.tsv in " + store.string());
    }
    LoadedStore s;
    auto flines = split_lines(read_file(frontier_path(store)));
    if (flines.empty()) {
        throw Error(ErrorCode::CorruptStore, "empty frontier file");
    }
    s.header = parse_header(flines.front());
    try {
        for (std::size_t i = 1; i < flines.size(); ++i) {
            if (!flines[i].empty()) {
                s.frontier.push_back(CensusRecord::from_line(flines[i]));
            }
        }
    } catch (const Error& e) {
        throw Error(ErrorCode::CorruptStore, std::string("frontier: ") + e.what());
    }

    std::string text = read_file(log_path(store));
    std::string cut;
    if (!text.empty() && text.back() != '\n') {
        // a partial trailing line from an interrupted append
        auto last = text.rfind('\n');
        cut = text.substr(last == std::string::npos ? 0 : last + 1);
        text.erase(last == std::string::npos ? 0 : last + 1);
    }
    auto lines = split_lines(text);
    if (lines.size() > s.header.records) {
        throw Error(ErrorCode::CorruptStore, "log has more records than the frontier header");
    }
    std::size_t missing = s.header.records - lines.size();
    if (missing > s.frontier.size()) {
        throw Error(ErrorCode::CorruptStore, "log is missing records not held by the frontier");
    }
    if (missing == 0 && !cut.empty()) {
        throw Error(ErrorCode::CorruptStore, "log ends in a partial line");
    }
    std::vector<CensusRecord> tail(s.frontier.end() - static_cast<long>(missing), s.frontier.end());
    s.repair = records_text(tail);
    if (fnv1a(s.repair, fnv1a(text)) != s.header.loghash) {
        throw Error(ErrorCode::CorruptStore, "log does not match the frontier checksum");
    }
    std::set<std::string> seen;
    try {
        for (const auto& line : lines) {
            s.log.push_back(CensusRecord::from_line(line));
        }
    } catch (const Error& e) {
        throw Error(ErrorCode::CorruptStore, std::string("log: ") + e.what());
    }
    s.log.insert(s.log.end(), tail.begin(), tail.end());
    for (const auto& r : s.log) {
        if (!seen.insert(r.signature).second) {
            throw Error(ErrorCode::CorruptStore, "duplicate signature in log");
        }
    }
    for (const auto& r : s.frontier) {
        if (!seen.count(r.signature)) {
            throw Error(ErrorCode::CorruptStore, "frontier state absent from the log");
        }
    }
    if (!cut.empty()) {
        // drop the partial line on disk before the repair is appended
        write_file_atomic(log_path(store), text);
    }
    return s;
}

CensusSummary summarize(const std::vector<CensusRecord>& log, std::size_t frontier, std::optional<std::size_t> n) {
    CensusSummary out;
    out.finished = frontier == 0;
    out.frontier = frontier;
    for (auto v : {BallClass::Verdict::LC_and_Mogami, BallClass::Verdict::Not_Mogami,
                   BallClass::Verdict::NotApplicable}) {
        out.by_class[std::string(to_string(v))] = 0;
    }
    for (const auto& r : log) {
        if (n && r.num_tets != *n) {
            continue;
        }
        ++out.records;
        ++out.by_class[std::string(to_string(r.verdict))];
        if (r.verdict == BallClass::Verdict::Not_Mogami) {
            out.findings.push_back(r.signature);
        }
    }
    return out;
}

CensusSummary drive(const fs::path& store, Census& census, StoreHeader header, std::vector<CensusRecord> log,
                    unsigned jobs, std::size_t batch, std::optional<std::size_t> max_batches) {
    std::size_t batches = 0;
    while (!census.done() && (!max_batches || batches < *max_batches)) {
        auto fresh = census.step(batch, jobs);
        auto text = records_text(fresh);
        header.records += fresh.size();
        header.loghash = fnv1a(text, header.loghash);
        write_frontier(store, header, census.frontier());
        append_log(store, text);
        log.insert(log.end(), fresh.begin(), fresh.end());
        ++batches;
    }
    return summarize(log, census.frontier().size(), std::nullopt);
}

} // namespace

std::string_view to_string(CensusMode m) {
    return m == CensusMode::LC ? "lc" : "free";
}

CensusMode parse_census_mode(const std::string& s) {
    if (s == "lc" || s == "LC") {
        return CensusMode::LC;
    }
    if (s == "free" || s == "FREE") {
        return CensusMode::Free;
    }
    throw Error(ErrorCode::ParseError, "census mode must be lc or free, not '" + s + "'");
}

std::string CensusRecord::to_line() const {
    std::ostringstream out;
    out << signature << '\t' << num_tets << '\t' << num_vertices << '\t' << to_string(verdict) << '\t'
        << hex16(provenance);
    return out.str();
}

CensusRecord CensusRecord::from_line(const std::string& line) {
    std::vector<std::string> f;
    std::istringstream in(line);
    for (std::string tok; std::getline(in, tok, '\t');) {
        f.push_back(tok);
    }
    if (f.size() != 5) {
        throw Error(ErrorCode::ParseError, "record needs 5 tab-separated fields");
    }
    CensusRecord r;
    r.signature = f[0];
    try {
        r.num_tets = std::stoul(f[1]);
        r.num_vertices = std::stoul(f[2]);
        r.provenance = std::stoull(f[4], nullptr, 16);
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad number in record");
    }
    r.verdict = parse_verdict(f[3]);
    return r;
}

bool SignatureIndex::insert_if_absent(const std::string& sig) {
    std::lock_guard lock(mutex_);
    return sigs_.insert(sig).second;
}

bool SignatureIndex::contains(const std::string& sig) const {
    std::lock_guard lock(mutex_);
    return sigs_.count(sig) > 0;
}

std::size_t SignatureIndex::size() const {
    std::lock_guard lock(mutex_);
    return sigs_.size();
}

std::set<std::string> enumerate_trees(std::size_t n) {
    if (n == 0) {
        return {};
    }
    std::set<std::string> level{signature(single_tet())};
    for (std::size_t k = 1; k < n; ++k) {
        std::set<std::string> next;
        for (const auto& sig : level) {
            auto p = from_signature(sig);
            auto grown = disjoint_union(p, single_tet());
            FacetRef leaf{k, 0};
            for (FacetRef f : p.boundary_facets()) {
                for (const auto& corr : all_corrs(0)) {
                    // corr here maps f's corners onto the leaf's face 0
                    next.insert(signature(unite(grown, f, leaf, corr)));
                }
            }
        }
        level = std::move(next);
    }
    return level;
}

bool is_orientable(const Pseudomanifold& p) {
    detail::UnionFind uf(p.num_tets());
    for (const auto& pr : p.pairings()) {
        // coherent orientations induce opposite orientations on the shared
        // triangle, so an even corner map forces opposite tetrahedron signs
        int par = pairing_perm(pr).sign() == 1 ? 1 : 0;
        uf.unite(pr.a.tet, pr.b.tet, par);
        if (uf.conflict(pr.a.tet)) {
            return false;
        }
    }
    return true;
}

bool admissible_state(const Pseudomanifold& p) {
    if (!is_orientable(p) || !interior_vertices(p).empty() || !is_simplicial(p)) {
        return false;
    }
    for (std::size_t v = 0; v < p.num_classes(0); ++v) {
        auto link = vertex_link(p, static_cast<int>(v));
        // gluing never lowers the genus of a link, and a ball needs disks
        if (link.boundary_is_cycles &&
            link.euler_characteristic() != 2 - static_cast<int>(link.num_boundary_cycles)) {
            return false;
        }
    }
    return true;
}

std::vector<std::pair<Pseudomanifold, std::string>> expand_state(const Pseudomanifold& p, CensusMode mode) {
    std::vector<std::pair<Pseudomanifold, std::string>> out;
    auto facets = p.boundary_facets();
    for (std::size_t i = 0; i < facets.size(); ++i) {
        for (std::size_t j = i + 1; j < facets.size(); ++j) {
            FacetRef a = facets[i], b = facets[j];
            if (mode == CensusMode::LC) {
                if (classify_gluing(p, a, b) != GluingKind::Fold) {
                    continue;
                }
                auto corr = derived_corr(p, a, b);
                if (!corr) {
                    continue;
                }
                auto q = glue(p, a, b, *corr);
                if (admissible_state(q)) {
                    out.emplace_back(std::move(q), step_text(a, b, *corr));
                }
                continue;
            }
            for (const auto& corr : all_corrs(b.face)) {
                auto q = glue(p, a, b, corr);
                if (admissible_state(q)) {
                    out.emplace_back(std::move(q), step_text(a, b, corr));
                }
            }
        }
    }
    return out;
}

std::vector<CensusRecord> enumerate_balls_no_interior(std::size_t n, CensusMode mode, unsigned jobs) {
    Census census(n, mode);
    auto out = census.seed();
    while (!census.done()) {
        auto fresh = census.step(64, jobs);
        out.insert(out.end(), fresh.begin(), fresh.end());
    }
    return out;
}

CensusSummary census_run(const fs::path& store, const CensusOptions& opts) {
    if (opts.n == 0) {
        throw Error(ErrorCode::BadReference, "census needs n >= 1");
    }
    if (fs::exists(log_path(store)) || fs::exists(frontier_path(store))) {
        throw Error(ErrorCode::IoError, "store " + store.string() + " already holds a census; use resume");
    }
    fs::create_directories(store);
    Census census(opts.n, opts.mode);
    auto roots = census.seed();
    StoreHeader header{opts.n, opts.mode, roots.size(), 0};
    auto text = records_text(roots);
    header.loghash = fnv1a(text);
    write_frontier(store, header, census.frontier());
    write_file_atomic(log_path(store), text);
    return drive(store, census, header, roots, opts.jobs, std::max<std::size_t>(opts.batch, 1), opts.max_batches);
}

CensusSummary census_resume(const fs::path& store, unsigned jobs, std::optional<std::size_t> max_batches) {
    auto s = load_store(store);
    if (!s.repair.empty()) {
        append_log(store, s.repair);
    }
    Census census(s.header.n, s.header.mode);
    for (const auto& r : s.log) {
        census.index().insert_if_absent(r.signature);
    }
    census.frontier() = s.frontier;
    return drive(store, census, s.header, s.log, jobs, 64, max_batches);
}

CensusSummary census_stats(const fs::path& store, std::optional<std::size_t> n) {
    if (!fs::exists(log_path(store)) && !fs::exists(frontier_path(store))) {
        return summarize({}, 0, n);
    }
    auto s = load_store(store);
    return summarize(s.log, s.frontier.size(), n);
}

std::vector<CensusRecord> read_census(const fs::path& store) {
    return load_store(store).log;
}

} // namespace mogami
