#include <mogami/io.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mogami {

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream ls(raw);
        Line line{n, {}};
        std::string tok;
        while (ls >> tok) {
            line.tokens.push_back(tok);
        }
        if (!line.tokens.empty()) {
            out.push_back(std::move(line));
        }
    }
    return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + why);
}

long to_int(const Line& l, std::size_t i) {
    const std::string& s = l.tokens.at(i);
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) {
            parse_fail(l.number, "expected an integer, got '" + s + "'");
        }
        return v;
    } catch (const std::logic_error&) {
        parse_fail(l.number, "expected an integer, got '" + s + "'");
    }
}

std::size_t to_index(const Line& l, std::size_t i) {
    long v = to_int(l, i);
    if (v < 0) {
        parse_fail(l.number, "negative index");
    }
    return static_cast<std::size_t>(v);
}

/// Parses a `g A fA B fB pa pb pc` style line starting at token 1.
Pairing parse_pairing(const Line& l) {
    if (l.tokens.size() != 8) {
        parse_fail(l.number, "expected 7 integers after '" + l.tokens[0] + "'");
    }
    Pairing p;
    p.a = {to_index(l, 1), static_cast<int>(to_int(l, 2))};
    p.b = {to_index(l, 3), static_cast<int>(to_int(l, 4))};
    for (std::size_t i = 0; i < 3; ++i) {
        p.corr[i] = static_cast<int>(to_int(l, 5 + i));
    }
    return p;
}

/// Consumes a PAIR block starting at lines[pos]; leaves pos after it.
Pseudomanifold parse_pair_block(const std::vector<Line>& lines, std::size_t& pos) {
    if (pos >= lines.size() || lines[pos].tokens != std::vector<std::string>{"pair", "v1"}) {
        parse_fail(pos < lines.size() ? lines[pos].number : 0, "expected 'pair v1'");
    }
    ++pos;
    if (pos >= lines.size() || lines[pos].tokens.size() != 2 || lines[pos].tokens[0] != "tets") {
        parse_fail(pos < lines.size() ? lines[pos].number : 0, "expected 'tets N'");
    }
    std::size_t n = to_index(lines[pos], 1);
    ++pos;
    std::vector<Pairing> pairings;
    while (pos < lines.size() && lines[pos].tokens[0] == "g") {
        pairings.push_back(parse_pairing(lines[pos]));
        ++pos;
    }
    try {
        return Pseudomanifold::build(n, pairings);
    } catch (const Error& e) {
        throw Error(e.code(), std::string("in PAIR block: ") + e.what());
    }
}

bool valid_label(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

LabeledComplex parse_simp_lines(const std::vector<Line>& lines, std::size_t begin, std::size_t end) {
    std::vector<std::array<std::string, 4>> tets;
    for (std::size_t i = begin; i < end; ++i) {
        const Line& l = lines[i];
        if (l.tokens.size() != 4) {
            parse_fail(l.number, "expected 4 vertex labels");
        }
        std::array<std::string, 4> t{l.tokens[0], l.tokens[1], l.tokens[2], l.tokens[3]};
        for (const auto& s : t) {
            if (!valid_label(s)) {
                parse_fail(l.number, "invalid label '" + s + "'");
            }
        }
        tets.push_back(t);
    }
    return from_labels(tets);
}

} // namespace

std::string write_pair(const Pseudomanifold& p) {
    std::ostringstream out;
    out << "pair v1\n" << "tets " << p.num_tets() << "\n";
    for (const Pairing& q : p.pairings()) {
        out << "g " << q.a.tet << ' ' << q.a.face << ' ' << q.b.tet << ' ' << q.b.face << ' ' << q.corr[0] << ' '
            << q.corr[1] << ' ' << q.corr[2] << "\n";
    }
    return out.str();
}

Pseudomanifold read_pair(const std::string& text) {
    auto lines = tokenize(text);
    std::size_t pos = 0;
    Pseudomanifold p = parse_pair_block(lines, pos);
    if (pos != lines.size()) {
        parse_fail(lines[pos].number, "unexpected '" + lines[pos].tokens[0] + "'");
    }
    return p;
}

int LabeledComplex::vertex(const std::string& label) const {
    for (std::size_t t = 0; t < corner_labels.size(); ++t) {
        for (int c = 0; c < 4; ++c) {
            if (corner_labels[t][static_cast<std::size_t>(c)] == label) {
                return complex.vertex_class(t, c);
            }
        }
    }
    throw Error(ErrorCode::BadReference, "no vertex labeled '" + label + "'");
}

FacetRef LabeledComplex::facet(std::size_t tet, const std::array<std::string, 3>& labels) const {
    const auto& cl = corner_labels.at(tet);
    for (int f = 0; f < 4; ++f) {
        bool ok = true;
        for (const auto& s : labels) {
            bool found = false;
            for (int c : face_corners(f)) {
                found = found || cl[static_cast<std::size_t>(c)] == s;
            }
            ok = ok && found;
        }
        if (ok) {
            return {tet, f};
        }
    }
    throw Error(ErrorCode::BadReference, "tetrahedron " + std::to_string(tet) + " has no such facet");
}

FacetRef LabeledComplex::boundary_facet(const std::array<std::string, 3>& labels) const {
    std::vector<FacetRef> hits;
    for (std::size_t t = 0; t < corner_labels.size(); ++t) {
        try {
            FacetRef f = facet(t, labels);
            if (!complex.is_paired(f)) {
                hits.push_back(f);
            }
        } catch (const Error&) {
        }
    }
    if (hits.size() != 1) {
        throw Error(ErrorCode::BadReference, "boundary facet [" + labels[0] + "," + labels[1] + "," + labels[2] +
                                                 "] matches " + std::to_string(hits.size()) + " facets");
    }
    return hits.front();
}

std::array<int, 3> LabeledComplex::corr(FacetRef from, FacetRef to,
                                        const std::map<std::string, std::string>& map) const {
    std::array<int, 3> out{};
    auto fc = face_corners(from.face);
    const auto& src = corner_labels.at(from.tet);
    const auto& dst = corner_labels.at(to.tet);
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string& s = src[static_cast<std::size_t>(fc[i])];
        auto it = map.find(s);
        const std::string& target = it == map.end() ? s : it->second;
        int hit = -1;
        for (int c : face_corners(to.face)) {
            if (dst[static_cast<std::size_t>(c)] == target) {
                hit = c;
            }
        }
        if (hit < 0) {
            throw Error(ErrorCode::BadCorr, "label '" + target + "' not on target facet");
        }
        out[i] = hit;
    }
    return out;
}

LabeledComplex from_labels(const std::vector<std::array<std::string, 4>>& tets) {
    LabeledComplex out;
    out.corner_labels = tets;
    std::map<std::array<std::string, 3>, std::vector<FacetRef>> by_triple;
    for (std::size_t t = 0; t < tets.size(); ++t) {
        auto sorted = tets[t];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw Error(ErrorCode::ParseError, "tetrahedron " + std::to_string(t) + " repeats a label");
        }
        for (int f = 0; f < 4; ++f) {
            std::array<std::string, 3> key;
            auto fc = face_corners(f);
            for (std::size_t i = 0; i < 3; ++i) {
                key[i] = tets[t][static_cast<std::size_t>(fc[i])];
            }
            std::sort(key.begin(), key.end());
            by_triple[key].push_back({t, f});
        }
    }
    std::vector<Pairing> pairings;
    for (const auto& [key, facets] : by_triple) {
        if (facets.size() > 2) {
            throw Error(ErrorCode::ParseError,
                        "triangle [" + key[0] + "," + key[1] + "," + key[2] + "] lies in more than two tetrahedra");
        }
        if (facets.size() == 2) {
            Pairing p{facets[0], facets[1], {}};
            auto fc = face_corners(p.a.face);
            for (std::size_t i = 0; i < 3; ++i) {
                const std::string& s = tets[p.a.tet][static_cast<std::size_t>(fc[i])];
                for (int c = 0; c < 4; ++c) {
                    if (tets[p.b.tet][static_cast<std::size_t>(c)] == s) {
                        p.corr[i] = c;
                    }
                }
            }
            pairings.push_back(p);
        }
    }
    out.complex = Pseudomanifold::build(tets.size(), pairings);

    // every label must be one vertex class and every labeled edge one edge class
    std::map<std::string, int> label_class;
    std::map<std::pair<std::string, std::string>, int> edge_label_class;
    for (std::size_t t = 0; t < tets.size(); ++t) {
        for (int c = 0; c < 4; ++c) {
            const std::string& s = tets[t][static_cast<std::size_t>(c)];
            auto [it, inserted] = label_class.emplace(s, out.complex.vertex_class(t, c));
            if (!inserted && it->second != out.complex.vertex_class(t, c)) {
                throw Error(ErrorCode::NotRepresentable,
                            "vertex '" + s + "' is not connected through shared triangles");
            }
        }
        for (int e = 0; e < 6; ++e) {
            auto ec = edge_corners(e);
            auto key = std::minmax(tets[t][static_cast<std::size_t>(ec[0])], tets[t][static_cast<std::size_t>(ec[1])]);
            auto [it, inserted] = edge_label_class.emplace(std::pair(key.first, key.second), out.complex.edge_class(t, e));
            if (!inserted && it->second != out.complex.edge_class(t, e)) {
                throw Error(ErrorCode::NotRepresentable,
                            "edge " + key.first + "-" + key.second + " is not connected through shared triangles");
            }
        }
    }
    return out;
}

LabeledComplex read_simp(const std::string& text) {
    auto lines = tokenize(text);
    return parse_simp_lines(lines, 0, lines.size());
}

std::string write_simp(const Pseudomanifold& p) {
    if (!is_simplicial(p)) {
        throw Error(ErrorCode::NotRepresentable, "SIMP output requires a simplicial complex");
    }
    std::ostringstream out;
    for (std::size_t t = 0; t < p.num_tets(); ++t) {
        for (int c = 0; c < 4; ++c) {
            out << (c ? " " : "") << 'v' << p.vertex_class(t, c);
        }
        out << "\n";
    }
    return out.str();
}

MoveScript read_script(const std::string& text, const std::filesystem::path& base_dir) {
    auto lines = tokenize(text);
    MoveScript s;
    std::size_t pos = 0;
    if (pos >= lines.size() || lines[pos].tokens.size() != 2 || lines[pos].tokens[0] != "mode") {
        parse_fail(pos < lines.size() ? lines[pos].number : 0, "expected 'mode LC|MOGAMI|FREE'");
    }
    const std::string& m = lines[pos].tokens[1];
    if (m == "LC") {
        s.mode = ScriptMode::LC;
    } else if (m == "MOGAMI") {
        s.mode = ScriptMode::Mogami;
    } else if (m == "FREE") {
        s.mode = ScriptMode::Free;
    } else {
        parse_fail(lines[pos].number, "unknown mode '" + m + "'");
    }
    ++pos;
    if (pos >= lines.size()) {
        parse_fail(lines.back().number, "missing initial complex");
    }
    const Line& head = lines[pos];
    if (head.tokens[0] == "pair") {
        s.initial = parse_pair_block(lines, pos);
    } else if (head.tokens[0] == "simp") {
        std::size_t end = pos + 1;
        while (end < lines.size() && lines[end].tokens[0] != "end") {
            ++end;
        }
        if (end == lines.size()) {
            parse_fail(head.number, "unterminated simp block");
        }
        s.initial = parse_simp_lines(lines, pos + 1, end).complex;
        pos = end + 1;
    } else if (head.tokens[0] == "include") {
        if (head.tokens.size() != 2) {
            parse_fail(head.number, "expected 'include <file>'");
        }
        s.initial = load_complex(base_dir / head.tokens[1]);
        ++pos;
    } else {
        parse_fail(head.number, "expected an initial complex");
    }
    for (; pos < lines.size(); ++pos) {
        const Line& l = lines[pos];
        const std::string& op = l.tokens[0];
        if (op == "U" || op == "G") {
            Pairing p = parse_pairing(l);
            s.steps.emplace_back(GluingStep{p.a, p.b, p.corr, op == "U"});
        } else if (op == "S" || op == "P") {
            if (l.tokens.size() != 2) {
                parse_fail(l.number, "expected a triangle id");
            }
            s.steps.emplace_back(UngluingStep{static_cast<int>(to_index(l, 1)),
                                              op == "S" ? UngluingKind::Split : UngluingKind::Spread});
        } else {
            parse_fail(l.number, "unknown step '" + op + "'");
        }
    }
    return s;
}

std::string write_script(const MoveScript& s) {
    std::ostringstream out;
    out << "mode " << to_string(s.mode) << "\n" << write_pair(s.initial);
    for (const Step& step : s.steps) {
        if (const auto* g = std::get_if<GluingStep>(&step)) {
            out << (g->unite ? 'U' : 'G') << ' ' << g->f1.tet << ' ' << g->f1.face << ' ' << g->f2.tet << ' '
                << g->f2.face << ' ' << g->corr[0] << ' ' << g->corr[1] << ' ' << g->corr[2] << "\n";
        } else {
            const auto& u = std::get<UngluingStep>(step);
            out << (u.kind == UngluingKind::Split ? 'S' : 'P') << ' ' << u.triangle << "\n";
        }
    }
    return out.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
        }
        out << text;
        out.flush();
        if (!out) {
            throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
    }
}

Pseudomanifold load_complex(const std::filesystem::path& path) {
    std::string text = read_file(path);
    auto lines = tokenize(text);
    if (!lines.empty() && lines.front().tokens[0] == "pair") {
        return read_pair(text);
    }
    return read_simp(text).complex;
}

} // namespace mogami
