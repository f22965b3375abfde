#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mogami/enumeration.hpp>
#include <mogami/io.hpp>

#include "support.hpp"

#include <filesystem>
#include <fstream>

using namespace mogami;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / ("mogami_enum_" + name + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::set<std::string> sigs(const std::vector<CensusRecord>& rs) {
    std::set<std::string> out;
    for (const auto& r : rs) {
        out.insert(r.signature);
    }
    return out;
}

/// Orientability by trying every assignment of signs to tetrahedra.
bool brute_orientable(const Pseudomanifold& p) {
    std::size_t n = p.num_tets();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        bool ok = true;
        for (const auto& pr : p.pairings()) {
            int oa = (mask >> pr.a.tet) & 1 ? -1 : 1;
            int ob = (mask >> pr.b.tet) & 1 ? -1 : 1;
            if (oa * ob != -pairing_perm(pr).sign()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

/// Every pairing of two facets of tets [0, n) with each corner bijection.
std::vector<Pairing> all_pairings(std::size_t n) {
    std::vector<Pairing> out;
    for (std::size_t i = 0; i < 4 * n; ++i) {
        for (std::size_t j = i + 1; j < 4 * n; ++j) {
            FacetRef a{i / 4, static_cast<int>(i % 4)}, b{j / 4, static_cast<int>(j % 4)};
            auto c = face_corners(b.face);
            do {
                out.push_back(Pairing{a, b, c});
            } while (std::next_permutation(c.begin(), c.end()));
        }
    }
    return out;
}

/// Free census at n = 2 by brute force over pairing sets: a set counts when
/// it is admissible and drops to an admissible set by removing one pairing,
/// down to a single tree pairing.
std::size_t brute_free_two() {
    auto pool = all_pairings(2);
    std::map<std::vector<std::size_t>, bool> reach;
    std::vector<Pseudomanifold> found;
    std::function<void(std::vector<std::size_t>&, std::size_t, std::array<bool, 8>&)> rec;
    std::vector<std::vector<std::size_t>> sets;
    rec = [&](std::vector<std::size_t>& cur, std::size_t from, std::array<bool, 8>& used) {
        if (!cur.empty()) {
            sets.push_back(cur);
        }
        for (std::size_t k = from; k < pool.size(); ++k) {
            auto ia = pool[k].a.index(), ib = pool[k].b.index();
            if (used[ia] || used[ib]) {
                continue;
            }
            used[ia] = used[ib] = true;
            cur.push_back(k);
            rec(cur, k + 1, used);
            cur.pop_back();
            used[ia] = used[ib] = false;
        }
    };
    std::vector<std::size_t> cur;
    std::array<bool, 8> used{};
    rec(cur, 0, used);
    std::sort(sets.begin(), sets.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
    for (const auto& s : sets) {
        std::vector<Pairing> ps;
        bool crosses = false;
        for (auto k : s) {
            ps.push_back(pool[k]);
            crosses |= pool[k].a.tet != pool[k].b.tet;
        }
        bool ok = false;
        if (crosses) {
            auto p = Pseudomanifold::build(2, ps);
            if (admissible_state(p)) {
                if (s.size() == 1) {
                    ok = true;
                } else {
                    for (std::size_t drop = 0; drop < s.size() && !ok; ++drop) {
                        auto sub = s;
                        sub.erase(sub.begin() + static_cast<long>(drop));
                        auto it = reach.find(sub);
                        ok = it != reach.end() && it->second;
                    }
                }
                if (ok) {
                    found.push_back(p);
                }
            }
        }
        reach[s] = ok;
    }
    return testing::count_types(found);
}

std::vector<std::string> lines_of(const fs::path& path) {
    std::vector<std::string> out;
    std::ifstream in(path);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

} // namespace

TEST_CASE("tree types match the brute-force isomorphism count") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto trees = testing::all_trees(n);
        auto found = enumerate_trees(n);
        CHECK(found.size() == testing::count_types(trees));
        std::set<std::string> expect;
        for (const auto& t : trees) {
            expect.insert(signature(t));
        }
        CHECK(found == expect);
    }
    CHECK(enumerate_trees(1).size() == 1);
    CHECK(enumerate_trees(2).size() == 1);
    CHECK(enumerate_trees(0).empty());
}

TEST_CASE("orientability agrees with sign assignment search") {
    std::mt19937_64 rng(11);
    auto pool = all_pairings(3);
    int nonorientable = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Pairing> ps;
        std::set<std::size_t> used;
        std::size_t want = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        for (int tries = 0; tries < 50 && ps.size() < want; ++tries) {
            const auto& pr = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
            if (used.count(pr.a.index()) || used.count(pr.b.index())) {
                continue;
            }
            used.insert(pr.a.index());
            used.insert(pr.b.index());
            ps.push_back(pr);
        }
        auto p = Pseudomanifold::build(3, ps);
        bool expect = brute_orientable(p);
        CHECK(is_orientable(p) == expect);
        nonorientable += expect ? 0 : 1;
    }
    CHECK(nonorientable > 0);
    std::mt19937_64 rng2(5);
    for (int trial = 0; trial < 50; ++trial) {
        CHECK(is_orientable(testing::random_fold_ball(6, 4, rng2).ball));
    }
}

TEST_CASE("census at one and two tetrahedra") {
    for (auto mode : {CensusMode::LC, CensusMode::Free}) {
        auto one = enumerate_balls_no_interior(1, mode);
        REQUIRE(one.size() == 1);
        CHECK(one[0].num_vertices == 4);
        CHECK(one[0].verdict == BallClass::Verdict::LC_and_Mogami);
    }
    auto lc = enumerate_balls_no_interior(2, CensusMode::LC);
    auto free = enumerate_balls_no_interior(2, CensusMode::Free);
    CHECK(sigs(lc) == sigs(free));
    CHECK(free.size() == brute_free_two());
}

TEST_CASE("census records are consistent") {
    for (std::size_t n = 3; n <= 5; ++n) {
        auto lc = enumerate_balls_no_interior(n, CensusMode::LC);
        auto free = enumerate_balls_no_interior(n, CensusMode::Free);
        auto ls = sigs(lc), fs_ = sigs(free);
        CHECK(ls.size() == lc.size());
        CHECK(fs_.size() == free.size());
        CHECK(std::includes(fs_.begin(), fs_.end(), ls.begin(), ls.end()));
        for (const auto& r : lc) {
            CHECK(r.verdict == BallClass::Verdict::LC_and_Mogami);
        }
        for (const auto& r : free) {
            auto p = from_signature(r.signature);
            CHECK(r.num_tets == n);
            CHECK(r.num_vertices == p.num_classes(0));
            CHECK(admissible_state(p));
            CHECK(interior_vertices(p).empty());
            CHECK(r.verdict != BallClass::Verdict::Not_Mogami);
            CHECK(CensusRecord::from_line(r.to_line()) == r);
        }
        // every tree type is a root of the closure
        auto trees = enumerate_trees(n);
        CHECK(std::includes(ls.begin(), ls.end(), trees.begin(), trees.end()));
    }
}

TEST_CASE("attaching a leaf maps the n census into the n+1 census") {
    for (auto mode : {CensusMode::LC, CensusMode::Free}) {
        auto small = enumerate_balls_no_interior(3, mode);
        auto big = sigs(enumerate_balls_no_interior(4, mode));
        for (const auto& r : small) {
            auto p = from_signature(r.signature);
            auto grown = disjoint_union(p, Pseudomanifold::build(1, std::span<const Pairing>{}));
            for (FacetRef f : p.boundary_facets()) {
                auto q = unite(grown, f, FacetRef{3, 0}, {1, 2, 3});
                CHECK(big.count(signature(q)) == 1);
            }
        }
    }
}

TEST_CASE("parallel census equals serial") {
    for (auto mode : {CensusMode::LC, CensusMode::Free}) {
        CHECK(enumerate_balls_no_interior(5, mode, 1) == enumerate_balls_no_interior(5, mode, 3));
    }
}

TEST_CASE("store: straight run, interrupted run, resume") {
    TempDir straight("straight"), cut("cut");
    CensusOptions opts;
    opts.n = 5;
    opts.mode = CensusMode::Free;
    opts.batch = 2;
    auto full = census_run(straight.path, opts);
    CHECK(full.finished);
    CHECK(full.frontier == 0);
    auto records = read_census(straight.path);
    CHECK(records == enumerate_balls_no_interior(5, CensusMode::Free));
    CHECK(full.records == records.size());

    opts.max_batches = 1;
    auto partial = census_run(cut.path, opts);
    CHECK_FALSE(partial.finished);
    CHECK(partial.frontier > 0);
    CHECK(partial.records < full.records);
    auto more = census_resume(cut.path, 2, 1);
    CHECK(more.records >= partial.records);
    auto done = census_resume(cut.path, 2);
    CHECK(done.finished);
    CHECK(read_census(cut.path) == records);
    CHECK(lines_of(cut.path / "log.tsv") == lines_of(straight.path / "log.tsv"));

    CHECK_THROWS_AS(census_run(straight.path, opts), Error);
}

TEST_CASE("store: a cut-off log append is repaired on resume") {
    TempDir reference("ref"), store("repair");
    CensusOptions opts;
    opts.n = 4;
    opts.mode = CensusMode::LC;
    opts.batch = 1;
    census_run(reference.path, opts);
    opts.max_batches = 1;
    census_run(store.path, opts);

    // drop the last record entirely and half of the one before it
    auto log = read_file(store.path / "log.tsv");
    auto lines = lines_of(store.path / "log.tsv");
    REQUIRE(lines.size() >= 3);
    std::string kept;
    for (std::size_t i = 0; i + 2 < lines.size(); ++i) {
        kept += lines[i] + "\n";
    }
    kept += lines[lines.size() - 2].substr(0, 10);
    {
        std::ofstream out(store.path / "log.tsv", std::ios::trunc | std::ios::binary);
        out << kept;
    }
    auto stats = census_stats(store.path);
    CHECK(stats.records == lines.size());
    auto done = census_resume(store.path);
    CHECK(done.finished);
    CHECK(lines_of(store.path / "log.tsv") == lines_of(reference.path / "log.tsv"));
}

TEST_CASE("store: hand edits are detected") {
    TempDir store("edit");
    CensusOptions opts;
    opts.n = 4;
    census_run(store.path, opts);
    auto lines = lines_of(store.path / "log.tsv");
    REQUIRE(lines.size() >= 2);

    auto rewrite = [&](const std::vector<std::string>& ls) {
        std::ofstream out(store.path / "log.tsv", std::ios::trunc | std::ios::binary);
        for (const auto& l : ls) {
            out << l << '\n';
        }
    };
    auto edited = lines;
    auto pos = edited[1].find("LC_and_Mogami");
    REQUIRE(pos != std::string::npos);
    edited[1].replace(pos, 13, "Not_Mogami");
    rewrite(edited);
    auto expect_corrupt = [&] {
        try {
            census_stats(store.path);
            return false;
        } catch (const Error& e) {
            return e.code() == ErrorCode::CorruptStore;
        }
    };
    CHECK(expect_corrupt());
    CHECK_THROWS_AS(census_resume(store.path), Error);

    auto extra = lines;
    extra.push_back(lines[0]);
    rewrite(extra);
    CHECK(expect_corrupt());

    auto fewer = lines;
    fewer.pop_back();
    rewrite(fewer);   // the frontier is empty, so nothing can restore the record
    CHECK(expect_corrupt());

    rewrite(lines);
    CHECK(census_stats(store.path).finished);
}

TEST_CASE("store: absent store and stats filter") {
    TempDir store("absent");
    auto empty = census_stats(store.path);
    CHECK(empty.records == 0);
    CHECK(empty.findings.empty());
    for (const auto& [cls, count] : empty.by_class) {
        CHECK(count == 0);
    }
    CensusOptions opts;
    opts.n = 3;
    auto run = census_run(store.path, opts);
    CHECK(census_stats(store.path, 3).records == run.records);
    CHECK(census_stats(store.path, 2).records == 0);
    CHECK(census_stats(store.path).by_class.at("LC_and_Mogami") == run.records);
}

TEST_CASE("census mode names") {
    CHECK(parse_census_mode("lc") == CensusMode::LC);
    CHECK(parse_census_mode("free") == CensusMode::Free);
    CHECK(to_string(CensusMode::Free) == "free");
    CHECK_THROWS_AS(parse_census_mode("fold"), Error);
    CHECK_THROWS_AS(CensusRecord::from_line("abc\t1"), Error);
}
