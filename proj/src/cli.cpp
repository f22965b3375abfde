#include <mogami/builders.hpp>
#include <mogami/cli.hpp>
#include <mogami/collapse.hpp>
#include <mogami/enumeration.hpp>
#include <mogami/io.hpp>
#include <mogami/matching.hpp>
#include <mogami/reduction.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace mogami::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Ordered key/value report printed as `key=value` lines or as JSON.
class Report {
public:
    template <class T>
    void set(const std::string& key, T value) {
        data_[key] = std::move(value);
    }

    void print(std::ostream& out, bool as_json) const {
        if (as_json) {
            out << data_.dump(2) << '\n';
            return;
        }
        for (const auto& [key, value] : data_.items()) {
            out << key << '=' << flat(value) << '\n';
        }
    }

private:
    static std::string flat(const json& v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_array()) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                s += (i ? "," : "") + flat(v[i]);
            }
            return s;
        }
        return v.dump();
    }

    json data_ = json::object();
};

fs::path corpus_dir() {
    const char* env = std::getenv("MOGAMI_CORPUS");
    return env && *env ? fs::path(env) : fs::path("corpus");
}

/// Inputs named `corpus/...` are looked up in MOGAMI_CORPUS when set.
fs::path resolve(const std::string& path) {
    fs::path p(path);
    const char* env = std::getenv("MOGAMI_CORPUS");
    if (env && *env && !fs::exists(p)) {
        auto it = p.begin();
        if (it != p.end() && *it == "corpus") {
            fs::path rest;
            for (++it; it != p.end(); ++it) {
                rest /= *it;
            }
            return fs::path(env) / rest;
        }
    }
    return p;
}

std::vector<std::string> strings_of(const std::vector<int>& v) {
    std::vector<std::string> out;
    for (int x : v) {
        out.push_back(std::to_string(x));
    }
    return out;
}

std::string pair_text(const EdgePair& p) {
    return std::to_string(p.first) + "-" + std::to_string(p.second);
}

EdgePair parse_pair(const std::string& tok) {
    auto dash = tok.find('-');
    try {
        if (dash == std::string::npos) {
            throw std::invalid_argument(tok);
        }
        return {std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--pairs", "expected a-b, got '" + tok + "'");
    }
}

void complex_summary(Report& r, const Pseudomanifold& p) {
    r.set("tets", p.num_tets());
    r.set("pairings", p.num_pairings());
    r.set("signature", signature(p));
}

void write_outputs(const Built& b, const std::string& pair_out, const std::string& script_out) {
    if (!pair_out.empty()) {
        write_file_atomic(pair_out, write_pair(b.complex()));
    }
    if (!script_out.empty()) {
        write_file_atomic(script_out, write_script(b.script));
    }
}

MoveScript trace_script(const Pseudomanifold& p, const NucleusDecomposition& d) {
    MoveScript s;
    s.mode = ScriptMode::Free;
    s.initial = p;
    for (const auto& step : d.trace) {
        s.steps.push_back(UngluingStep{step.triangle, step.kind});
    }
    return s;
}

std::vector<std::array<std::string, 3>> triangles_of(const Complex2& k) {
    std::vector<std::array<std::string, 3>> out;
    for (std::size_t t = 0; t < k.num_triangles(); ++t) {
        auto tri = k.triangle(static_cast<int>(t));
        out.push_back({k.label(tri[0]), k.label(tri[1]), k.label(tri[2])});
    }
    return out;
}

/// Interface lines: `a1 a2 a3 : b1 b2 b3`, label a_i glued to b_i.
std::vector<InterfacePair> read_interface(const std::string& text, const Built& a, const Built& b) {
    std::vector<InterfacePair> out;
    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        if (tok.size() != 7 || tok[3] != ":") {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'a b c : x y z'");
        }
        out.push_back(interface_pair(a, b, {tok[0], tok[1], tok[2]}, {tok[4], tok[5], tok[6]}));
    }
    return out;
}

Fixture write_fixture(const fs::path& dir, const std::string& name) {
    auto f = fixture(name);
    write_file_atomic(dir / (name + ".pair"), write_pair(f.base.complex()));
    write_file_atomic(dir / (name + ".build.script"), write_script(f.base.script));
    write_file_atomic(dir / (name + ".script"), write_script(f.scenario));
    return f;
}

void census_report(Report& r, const CensusSummary& s) {
    r.set("finished", s.finished);
    r.set("records", s.records);
    r.set("frontier", s.frontier);
    for (const auto& [cls, count] : s.by_class) {
        r.set("class." + cls, count);
    }
    r.set("findings", s.findings.size());
    r.set("finding_signatures", s.findings);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gluing calculus for triangulated 3-pseudomanifolds", "mogami"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "print one JSON object");
    Report report;
    std::function<void()> action;

    // info / classify / reduce / glue
    std::string input;
    auto* info = app.add_subcommand("info", "invariants of a PAIR or SIMP complex");
    info->add_option("file", input)->required();
    info->callback([&] {
        action = [&] {
            auto p = load_complex(resolve(input));
            complex_summary(report, p);
            report.set("vertices", p.num_classes(0));
            report.set("edges", p.num_classes(1));
            report.set("triangles", p.num_classes(2));
            report.set("components", p.num_components());
            report.set("euler", euler_characteristic(p));
            auto h = homology_ranks(p);
            for (int i = 0; i < 4; ++i) {
                report.set("betti" + std::to_string(i), h.betti[static_cast<std::size_t>(i)]);
            }
            report.set("h1_torsion", h.h1_torsion);
            auto bd = boundary(p);
            report.set("boundary_triangles", bd.triangles.size());
            report.set("boundary_edges", bd.edges.size());
            report.set("boundary_vertices", bd.vertices.size());
            report.set("boundary_components", bd.num_components);
            report.set("boundary_euler", bd.euler_characteristic);
            report.set("interior_vertices", interior_vertices(p).size());
            auto singular = singular_boundary_vertices(p);
            report.set("singular_boundary_vertices", singular.size());
            report.set("singular_vertex_ids", strings_of(singular));
            report.set("spanning_edges", spanning_edges(p).size());
            report.set("simplicial", is_simplicial(p));
            report.set("strongly_connected", strongly_connected(p));
        };
    });

    auto* classify = app.add_subcommand("classify", "LC/Mogami verdict of a ball without interior vertices");
    classify->add_option("file", input)->required();
    classify->callback([&] {
        action = [&] {
            auto p = load_complex(resolve(input));
            auto c = classify_ball(p);
            report.set("verdict", std::string(to_string(c.verdict)));
            report.set("reason", c.reason);
            report.set("nuclei", c.nuclei);
            report.set("certificate", std::string(to_string(ball_certificate(p).status)));
        };
    });

    std::string lc_out, trace_out;
    std::optional<std::uint64_t> reduce_seed;
    auto* reduce = app.add_subcommand("reduce", "split/spread reduction to nuclei");
    reduce->add_option("file", input)->required();
    reduce->add_option("--lc-script", lc_out, "write the reversed trace as an LC script");
    reduce->add_option("--trace", trace_out, "write the reduction trace as a script");
    reduce->add_option("--seed", reduce_seed, "random tie-breaking");
    reduce->callback([&] {
        action = [&] {
            auto p = load_complex(resolve(input));
            auto d = reduce_to_nuclei(p, reduce_seed);
            report.set("components", d.components.size());
            report.set("spreads", d.spreads);
            report.set("splits", d.splits);
            report.set("signatures", d.signatures);
            auto trace = trace_script(p, d);
            std::vector<std::string> steps;
            for (const auto& s : d.trace) {
                steps.push_back(std::string(s.kind == UngluingKind::Split ? "S " : "P ") + std::to_string(s.triangle));
            }
            report.set("trace", steps);
            if (!trace_out.empty()) {
                write_file_atomic(trace_out, write_script(trace));
            }
            if (!lc_out.empty()) {
                auto lc = lc_script_from_reduction(p);
                write_file_atomic(lc_out, write_script(lc));
                report.set("lc_script_steps", lc.steps.size());
            }
        };
    });

    std::string glue_out;
    bool forbid_same_tet = false;
    auto* glue_cmd = app.add_subcommand("glue", "replay a move script");
    glue_cmd->add_option("script", input)->required();
    glue_cmd->add_option("--out", glue_out, "write the result as PAIR");
    glue_cmd->add_flag("--forbid-same-tet", forbid_same_tet);
    glue_cmd->callback([&] {
        action = [&] {
            fs::path path = resolve(input);
            auto script = read_script(read_file(path), path.parent_path());
            auto res = replay(script, ReplayOptions{forbid_same_tet});
            report.set("mode", std::string(to_string(script.mode)));
            report.set("steps", res.trace.size());
            std::vector<std::string> kinds;
            std::size_t same = 0;
            for (const auto& t : res.trace) {
                kinds.push_back(t.kind);
                same += t.same_tet ? 1 : 0;
            }
            report.set("kinds", kinds);
            report.set("same_tet_steps", same);
            complex_summary(report, res.result);
            if (!glue_out.empty()) {
                write_file_atomic(glue_out, write_pair(res.result));
            }
        };
    });

    // build
    std::string pair_out, script_out;
    auto* build = app.add_subcommand("build", "Mogami constructions");
    build->require_subcommand(1);
    auto add_outputs = [&](CLI::App* sub) {
        sub->add_option("--out", pair_out, "write the complex as PAIR");
        sub->add_option("--script", script_out, "write the construction script");
    };
    auto built_report = [&](const Built& b) {
        complex_summary(report, b.complex());
        report.set("mode", std::string(to_string(b.script.mode)));
        report.set("steps", b.script.steps.size());
        write_outputs(b, pair_out, script_out);
    };

    std::string tree_file;
    std::size_t tree_path = 0, tree_star = 0;
    auto* build_tree = build->add_subcommand("tree", "tree of tetrahedra");
    auto* tf = build_tree->add_option("spec", tree_file, "lines: parent facet g0 g1 g2 g3");
    auto* tp = build_tree->add_option("--path", tree_path, "path of n tetrahedra");
    auto* ts = build_tree->add_option("--star", tree_star, "star of n <= 5 tetrahedra");
    tf->excludes(tp)->excludes(ts);
    tp->excludes(ts);
    add_outputs(build_tree);
    build_tree->callback([&] {
        action = [&] {
            TreeSpec spec;
            if (tree_path) {
                spec = TreeSpec::path(tree_path);
            } else if (tree_star) {
                spec = TreeSpec::star(tree_star);
            } else if (!tree_file.empty()) {
                spec = read_tree_spec(read_file(resolve(tree_file)));
            } else {
                throw CLI::ValidationError("tree", "give a spec file, --path or --star");
            }
            built_report(tree_of_tetrahedra(spec));
        };
    });

    std::string apex = "v";
    auto* build_cone = build->add_subcommand("cone", "cone over a 2-complex");
    build_cone->add_option("complex", input, "Complex2 text")->required();
    build_cone->add_option("--apex", apex);
    add_outputs(build_cone);
    build_cone->callback([&] {
        action = [&] {
            auto k = read_complex2(read_file(resolve(input)));
            built_report(cone(to_pseudo(triangles_of(k)), apex));
        };
    });

    std::string union_b, union_iface, apex_b = "v";
    auto* build_union = build->add_subcommand("union", "union of two cones along an interface");
    build_union->add_option("a", input, "Complex2 text for A")->required();
    build_union->add_option("b", union_b, "Complex2 text for B")->required();
    build_union->add_option("interface", union_iface, "lines 'a b c : x y z'")->required();
    build_union->add_option("--apex", apex, "apex label of A");
    build_union->add_option("--apex-b", apex_b, "apex label of B");
    add_outputs(build_union);
    build_union->callback([&] {
        action = [&] {
            auto a = cone(to_pseudo(triangles_of(read_complex2(read_file(resolve(input))))), apex);
            auto b = cone(to_pseudo(triangles_of(read_complex2(read_file(resolve(union_b))))), apex_b);
            auto iface = read_interface(read_file(resolve(union_iface)), a, b);
            built_report(union_mogami(a, b, iface));
        };
    });

    std::string fixture_name;
    auto* build_fixture = build->add_subcommand("fixture", "named construction");
    build_fixture->add_option("name", fixture_name)->required();
    add_outputs(build_fixture);
    build_fixture->callback([&] {
        action = [&] {
            auto f = fixture(fixture_name);
            built_report(f.base);
            report.set("scenario_steps", f.scenario.steps.size());
        };
    });

    // fixture list / write
    std::string fixture_dir;
    auto* fixture_cmd = app.add_subcommand("fixture", "shipped fixtures");
    fixture_cmd->require_subcommand(1);
    auto* fixture_list = fixture_cmd->add_subcommand("list", "fixture names");
    fixture_list->callback([&] { action = [&] { report.set("fixtures", fixture_names()); }; });
    auto* fixture_write = fixture_cmd->add_subcommand("write", "write PAIR and script files");
    fixture_write->add_option("--dir", fixture_dir, "target directory (default: MOGAMI_CORPUS or corpus)");
    fixture_write->callback([&] {
        action = [&] {
            fs::path dir = fixture_dir.empty() ? corpus_dir() : fs::path(fixture_dir);
            fs::create_directories(dir);
            std::vector<std::string> written;
            for (const auto& name : fixture_names()) {
                write_fixture(dir, name);
                written.push_back(name);
            }
            write_file_atomic(dir / "tree4.pair", write_pair(tree_of_tetrahedra(TreeSpec::path(4)).complex()));
            written.push_back("tree4");
            report.set("dir", dir.string());
            report.set("written", written);
        };
    });

    // match
    std::size_t match_n = 0;
    std::vector<std::string> pair_tokens;
    bool want_order = false;
    std::optional<int> last_active;
    auto* match = app.add_subcommand("match", "planar matchings on a cycle");
    match->add_option("--n", match_n, "cycle length")->required()->check(CLI::Range(3, 64));
    match->add_option("--pairs", pair_tokens, "matched edge pairs a-b");
    match->add_flag("--order", want_order, "print an LC order");
    match->add_option("--last-active", last_active, "LC order keeping this vertex active to the end");
    match->callback([&] {
        action = [&] {
            CycleGraph c(match_n);
            std::vector<EdgePair> pairs;
            for (const auto& t : pair_tokens) {
                pairs.push_back(parse_pair(t));
            }
            auto m = make_matching(c, pairs);
            auto q = quotient(c, m);
            bool orderable = lc_orderable(c, m);
            std::vector<std::string> ps;
            for (const auto& p : m.pairs) {
                ps.push_back(pair_text(p));
            }
            report.set("n", match_n);
            report.set("pairs", ps);
            report.set("complete", m.is_complete(c));
            report.set("quotient_vertices", q.num_vertices);
            report.set("quotient_edges", q.edges.size());
            report.set("cycles", cycle_count(q));
            report.set("lc_orderable", orderable);
            report.set("verdict", orderable ? "LC-orderable" : "not LC-orderable");
            auto steps = [](const std::vector<EdgePair>& order) {
                std::vector<std::string> out;
                for (const auto& p : order) {
                    out.push_back(pair_text(p));
                }
                return out;
            };
            if (want_order && orderable) {
                report.set("order", steps(lc_order(c, m)));
            }
            if (last_active) {
                report.set("last_active_order", steps(lc_order_last_active(c, m, *last_active)));
            }
        };
    });

    // collapse / elc
    std::size_t budget = 200000;
    bool extensive = false;
    auto* collapse = app.add_subcommand("collapse", "collapsibility of a 2-complex onto D");
    collapse->add_option("complex", input, "Complex2 text")->required();
    collapse->add_option("--budget", budget, "state budget for exhaustive search");
    collapse->add_flag("--extensive", extensive, "explore every collapse sequence");
    collapse->callback([&] {
        action = [&] {
            auto k = read_complex2(read_file(resolve(input)));
            report.set("vertices", k.num_vertices());
            report.set("edges", k.num_edges());
            report.set("triangles", k.num_triangles());
            report.set("euler", k.euler_characteristic());
            report.set("target", k.d_empty() ? "point" : "D");
            auto g = greedy_collapse(k);
            report.set("greedy_steps", g.trace.size());
            report.set("greedy_reaches_target", k.d_empty() ? is_point(g.residual) : is_d(k, g.residual));
            report.set("collapses", std::string(to_string(collapses_to(k, budget))));
            if (extensive) {
                auto e = extensively_collapsible(k, budget);
                report.set("extensive", std::string(to_string(e.verdict)));
                report.set("states", e.states);
            }
        };
    });

    std::size_t elc_samples = 0;
    std::uint64_t elc_seed = 1;
    unsigned jobs = 1;
    auto* elc = app.add_subcommand("elc", "collapse every K^T of a ball onto its boundary");
    elc->add_option("file", input, "PAIR or SIMP complex")->required();
    elc->add_option("--samples", elc_samples, "random spanning trees instead of all");
    elc->add_option("--seed", elc_seed);
    elc->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
    elc->add_option("--budget", budget);
    elc->callback([&] {
        action = [&] {
            auto p = load_complex(resolve(input));
            ElcMode mode = elc_samples ? ElcMode::Sample(elc_samples, elc_seed) : ElcMode::All();
            mode.jobs = jobs;
            auto r = extensively_lc_check(p, mode, budget);
            report.set("status", std::string(to_string(r.status)));
            report.set("trees_checked", r.trees_checked);
            std::vector<std::string> w;
            for (auto x : r.witness) {
                w.push_back(std::to_string(x));
            }
            report.set("witness", w);
        };
    });

    // census
    std::string store;
    std::size_t census_n = 0, batch = 64;
    std::string census_mode = "lc";
    std::optional<std::size_t> max_batches;
    auto* census = app.add_subcommand("census", "resumable census of balls without interior vertices");
    census->require_subcommand(1);
    auto* census_run_cmd = census->add_subcommand("run", "start a census in a fresh store");
    census_run_cmd->add_option("--n", census_n, "number of tetrahedra")->required()->check(CLI::Range(1, 64));
    census_run_cmd->add_option("--mode", census_mode, "lc or free")->check(CLI::IsMember({"lc", "free"}));
    census_run_cmd->add_option("--store", store)->required();
    census_run_cmd->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
    census_run_cmd->add_option("--batch", batch)->check(CLI::Range(1, 1 << 20));
    census_run_cmd->add_option("--max-batches", max_batches);
    census_run_cmd->callback([&] {
        action = [&] {
            CensusOptions opts{census_n, parse_census_mode(census_mode), jobs, batch, max_batches};
            census_report(report, census_run(store, opts));
        };
    });
    auto* census_resume_cmd = census->add_subcommand("resume", "continue an interrupted census");
    census_resume_cmd->add_option("--store", store)->required();
    census_resume_cmd->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
    census_resume_cmd->add_option("--max-batches", max_batches);
    census_resume_cmd->callback([&] { action = [&] { census_report(report, census_resume(store, jobs, max_batches)); }; });
    std::optional<std::size_t> stats_n;
    auto* census_stats_cmd = census->add_subcommand("stats", "counts by classification");
    census_stats_cmd->add_option("--store", store)->required();
    census_stats_cmd->add_option("--n", stats_n, "only records with n tetrahedra");
    census_stats_cmd->callback([&] { action = [&] { census_report(report, census_stats(store, stats_n)); }; });

    std::vector<std::string> argv_store{"mogami"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage_error=" << e.what() << '\n';
        return 2;
    }
    if (!action) {
        err << "usage_error=no command\n";
        return 2;
    }
    try {
        action();
    } catch (const CLI::ParseError& e) {
        err << "usage_error=" << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error=" << to_string(e.code()) << '\n' << "message=" << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "error=" << to_string(ErrorCode::IoError) << '\n' << "message=" << e.what() << '\n';
        return 1;
    }
    report.print(out, as_json);
    return 0;
}

} // namespace mogami::cli
