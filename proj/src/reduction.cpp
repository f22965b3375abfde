#include <mogami/reduction.hpp>

#include <algorithm>
#include <random>

namespace mogami {

bool is_nucleus(const Pseudomanifold& p) {
    if (!interior_vertices(p).empty()) {
        return false;
    }
    for (std::size_t t = 0; t < p.num_classes(2); ++t) {
        if (!p.is_boundary(2, static_cast<int>(t)) && interior_edge_count(p, static_cast<int>(t)) < 2) {
            return false;
        }
    }
    return true;
}

NucleusDecomposition reduce_to_nuclei(const Pseudomanifold& p, std::optional<std::uint64_t> seed) {
    NucleusDecomposition out;
    Pseudomanifold cur = p;
    std::mt19937_64 rng(seed.value_or(0));
    for (;;) {
        std::vector<int> spreads, splits;
        for (std::size_t t = 0; t < cur.num_classes(2); ++t) {
            int tri = static_cast<int>(t);
            if (cur.is_boundary(2, tri)) {
                continue;
            }
            int k = interior_edge_count(cur, tri);
            if (k == 1) {
                spreads.push_back(tri);
            } else if (k == 0) {
                splits.push_back(tri);
            }
        }
        const auto& pool = spreads.empty() ? splits : spreads;
        if (pool.empty()) {
            break;
        }
        int tri = pool.front();
        if (seed) {
            tri = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        }
        ReductionStep step;
        step.kind = spreads.empty() ? UngluingKind::Split : UngluingKind::Spread;
        step.triangle = tri;
        step.removed = cur.pairings()[*cur.pairing_of_triangle(tri)];
        cur = unglue(cur, tri);
        (step.kind == UngluingKind::Split ? out.splits : out.spreads) += 1;
        out.trace.push_back(step);
    }
    out.residual = cur;
    for (std::size_t c = 0; c < cur.num_components(); ++c) {
        out.components.push_back(component(cur, static_cast<int>(c)));
        out.signatures.push_back(signature(out.components.back()));
    }
    return out;
}

std::string_view to_string(BallClass::Verdict v) {
    switch (v) {
    case BallClass::Verdict::LC_and_Mogami: return "LC_and_Mogami";
    case BallClass::Verdict::Not_Mogami: return "Not_Mogami";
    case BallClass::Verdict::NotApplicable: return "NotApplicable";
    }
    return "?";
}

BallClass classify_ball(const Pseudomanifold& p) {
    BallClass out;
    if (!interior_vertices(p).empty()) {
        out.reason = "interior vertices";
        return out;
    }
    if (auto why = ball_refutation(p)) {
        out.reason = "not a ball: " + *why;
        return out;
    }
    auto dec = reduce_to_nuclei(p);
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        if (!interior_vertices(dec.components[i]).empty()) {
            out.reason = "reduction component with interior vertices";
            out.nuclei.clear();
            return out;
        }
        if (dec.components[i].num_tets() > 1) {
            out.nuclei.push_back(dec.signatures[i]);
        }
    }
    out.verdict = out.nuclei.empty() ? BallClass::Verdict::LC_and_Mogami : BallClass::Verdict::Not_Mogami;
    return out;
}

namespace {

MoveScript reversed_trace(const NucleusDecomposition& dec) {
    MoveScript s;
    s.mode = ScriptMode::LC;
    s.initial = dec.residual;
    std::vector<Step> unites, folds;
    for (auto it = dec.trace.rbegin(); it != dec.trace.rend(); ++it) {
        GluingStep g{it->removed.a, it->removed.b, it->removed.corr, it->kind == UngluingKind::Split};
        (g.unite ? unites : folds).push_back(g);
    }
    s.steps = unites;
    s.steps.insert(s.steps.end(), folds.begin(), folds.end());
    return s;
}

} // namespace

MoveScript lc_script_from_reduction(const Pseudomanifold& p) {
    BallClass c = classify_ball(p);
    if (c.verdict != BallClass::Verdict::LC_and_Mogami) {
        throw Error(ErrorCode::NotLC, std::string(to_string(c.verdict)) +
                                          (c.reason.empty() ? "" : " (" + c.reason + ")"));
    }
    MoveScript s = reversed_trace(reduce_to_nuclei(p));
    try {
        ReplayResult r = replay(s);
        if (signature(r.result) != signature(p)) {
            throw Error(ErrorCode::NotLC, "reversed trace does not rebuild the input");
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotLC) {
            throw;
        }
        throw Error(ErrorCode::NotLC, e.what());
    }
    return s;
}

BallCertificate ball_certificate(const MoveScript& script) {
    BallCertificate out;
    const Pseudomanifold& init = script.initial;
    if (init.num_pairings() != 0 || init.num_tets() == 0) {
        out.reason = "initial complex is not a set of separate tetrahedra";
        return out;
    }
    ReplayResult r;
    try {
        r = replay(MoveScript{ScriptMode::Free, script.initial, script.steps});
    } catch (const Error& e) {
        out.reason = e.what();
        return out;
    }
    bool tree_done = false;
    for (const StepTrace& t : r.trace) {
        if (t.kind == "Unite" && !tree_done) {
            continue;
        }
        tree_done = true;
        if (!t.strict_fold) {
            out.reason = "step of kind " + t.kind + " is not a strict fold";
            return out;
        }
    }
    if (r.result.num_components() != 1) {
        out.reason = "result is disconnected";
        return out;
    }
    out.status = BallCertificate::Status::Certified;
    out.reason = "tree of tetrahedra followed by folds";
    return out;
}

BallCertificate ball_certificate(const Pseudomanifold& p) {
    BallCertificate out;
    if (auto why = ball_refutation(p)) {
        out.status = BallCertificate::Status::Refuted;
        out.reason = *why;
        return out;
    }
    auto dec = reduce_to_nuclei(p);
    for (const auto& c : dec.components) {
        if (c.num_tets() != 1) {
            out.reason = "nontrivial nucleus";
            return out;
        }
    }
    // the reversed trace must be a fold construction in the strict sense
    BallCertificate prov = ball_certificate(reversed_trace(dec));
    if (prov.status != BallCertificate::Status::Certified) {
        out.reason = "reduction is not a strict fold construction: " + prov.reason;
        return out;
    }
    out.status = BallCertificate::Status::Certified;
    out.reason = "reduces to a tree of tetrahedra";
    return out;
}

std::vector<int> spanning_edges(const Pseudomanifold& p) {
    std::vector<int> out;
    for (std::size_t e = 0; e < p.num_classes(1); ++e) {
        if (p.is_boundary(1, static_cast<int>(e))) {
            continue;
        }
        auto ev = p.edge_vertices(static_cast<int>(e));
        if (p.is_boundary(0, ev[0]) && p.is_boundary(0, ev[1])) {
            out.push_back(static_cast<int>(e));
        }
    }
    return out;
}

ConfluenceReport confluence_check(const Pseudomanifold& p, std::size_t trials, std::uint64_t seed) {
    ConfluenceReport out;
    out.reference = reduce_to_nuclei(p).signatures;
    std::sort(out.reference.begin(), out.reference.end());
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < trials; ++i) {
        std::uint64_t s = rng();
        auto sigs = reduce_to_nuclei(p, s).signatures;
        std::sort(sigs.begin(), sigs.end());
        if (sigs != out.reference) {
            out.consistent = false;
            out.divergent = sigs;
            out.divergent_seed = s;
            break;
        }
    }
    return out;
}

} // namespace mogami
