#include <mogami/core.hpp>

#include <algorithm>

namespace mogami {

namespace {

constexpr char kDigits[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

int digit_value(char c) {
    for (int i = 0; i < 64; ++i) {
        if (kDigits[i] == c) {
            return i;
        }
    }
    return -1;
}

std::size_t code_width(std::size_t n) {
    std::size_t max_code = 24 * n + 24;
    std::size_t w = 1;
    std::size_t cap = 64;
    while (cap <= max_code) {
        cap *= 64;
        ++w;
    }
    return w;
}

/// Breadth-first code of the component containing `start`, where corner i of
/// the start tetrahedron gets new label `sigma.inverse()[i]`. Returns false as
/// soon as the code exceeds `best` (when `best` is non-empty); on success the
/// code is written to `out`.
bool bfs_code(const Pseudomanifold& p, std::size_t start, Perm4 sigma, const std::vector<int>& best, std::vector<int>& out, std::vector<int>& new_index,
              std::vector<Perm4>& maps, std::vector<std::size_t>& order) {
    out.clear();
    order.clear();
    bool leading = best.empty();
    order.push_back(start);
    new_index[start] = 0;
    maps[start] = sigma;
    bool ok = true;
    for (std::size_t k = 0; k < order.size() && ok; ++k) {
        std::size_t t = order[k];
        const Perm4 sk = maps[t];   // new corner -> old corner
        for (int f = 0; f < 4; ++f) {
            int code = 0;
            auto gl = p.gluing({t, sk[f]});
            if (gl) {
                std::size_t u = gl->other.tet;
                if (new_index[u] < 0) {
                    new_index[u] = static_cast<int>(order.size());
                    order.push_back(u);
                    maps[u] = gl->perm * sk;
                }
                Perm4 h = maps[u].inverse() * gl->perm * sk;
                code = 1 + 24 * new_index[u] + h.index();
            }
            if (!leading) {
                int b = best[out.size()];
                if (code > b) {
                    ok = false;
                    break;
                }
                if (code < b) {
                    leading = true;
                }
            }
            out.push_back(code);
        }
    }
    for (std::size_t t : order) {
        new_index[t] = -1;
    }
    return ok;
}

std::vector<int> component_code(const Pseudomanifold& p, const std::vector<std::size_t>& tets) {
    std::vector<int> best, cur;
    std::vector<int> new_index(p.num_tets(), -1);
    std::vector<Perm4> maps(p.num_tets());
    std::vector<std::size_t> order;
    for (std::size_t s : tets) {
        for (int i = 0; i < 24; ++i) {
            if (bfs_code(p, s, Perm4::from_index(i), best, cur, new_index, maps, order)) {
                if (best.empty() || cur < best) {
                    best = cur;
                }
            }
        }
    }
    return best;
}

std::string encode(std::size_t n, const std::vector<int>& code) {
    std::string s = std::to_string(n) + ":";
    std::size_t w = code_width(n);
    for (int c : code) {
        std::string digits(w, kDigits[0]);
        auto v = static_cast<std::size_t>(c);
        for (std::size_t i = 0; i < w; ++i) {
            digits[w - 1 - i] = kDigits[v % 64];
            v /= 64;
        }
        s += digits;
    }
    return s;
}

} // namespace

std::string signature(const Pseudomanifold& p) {
    if (p.num_tets() == 0) {
        return "0:";
    }
    std::vector<std::vector<std::size_t>> comps(p.num_components());
    for (std::size_t t = 0; t < p.num_tets(); ++t) {
        comps[static_cast<std::size_t>(p.component_of(t))].push_back(t);
    }
    std::vector<std::string> parts;
    for (const auto& tets : comps) {
        parts.push_back(encode(tets.size(), component_code(p, tets)));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& s : parts) {
        if (!out.empty()) {
            out += '+';
        }
        out += s;
    }
    return out;
}

Pseudomanifold from_signature(const std::string& sig) {
    auto bad = [&](const std::string& why) {
        return Error(ErrorCode::ParseError, "bad signature '" + sig + "': " + why);
    };
    if (sig == "0:") {
        return Pseudomanifold::build(0, {});
    }
    std::vector<Pairing> pairings;
    std::size_t offset = 0;
    std::size_t pos = 0;
    while (pos <= sig.size()) {
        std::size_t end = sig.find('+', pos);
        if (end == std::string::npos) {
            end = sig.size();
        }
        std::string part = sig.substr(pos, end - pos);
        std::size_t colon = part.find(':');
        if (colon == std::string::npos || colon == 0) {
            throw bad("missing size prefix");
        }
        std::size_t n = 0;
        for (std::size_t i = 0; i < colon; ++i) {
            if (part[i] < '0' || part[i] > '9') {
                throw bad("non-numeric size");
            }
            n = n * 10 + static_cast<std::size_t>(part[i] - '0');
        }
        std::size_t w = code_width(n);
        std::string body = part.substr(colon + 1);
        if (n == 0 || body.size() != 4 * n * w) {
            throw bad("wrong code length");
        }
        for (std::size_t k = 0; k < n; ++k) {
            for (int f = 0; f < 4; ++f) {
                std::size_t v = 0;
                for (std::size_t i = 0; i < w; ++i) {
                    int d = digit_value(body[(k * 4 + static_cast<std::size_t>(f)) * w + i]);
                    if (d < 0) {
                        throw bad("invalid digit");
                    }
                    v = v * 64 + static_cast<std::size_t>(d);
                }
                if (v == 0) {
                    continue;
                }
                std::size_t b = (v - 1) / 24;
                Perm4 h = Perm4::from_index(static_cast<int>((v - 1) % 24));
                if (b >= n) {
                    throw bad("tetrahedron index out of range");
                }
                FacetRef fa{offset + k, f};
                FacetRef fb{offset + b, h[f]};
                if (fa < fb) {
                    pairings.push_back(make_pairing(fa, fb, h));
                }
            }
        }
        offset += n;
        pos = end + 1;
    }
    return Pseudomanifold::build(offset, pairings);
}

bool isomorphic(const Pseudomanifold& a, const Pseudomanifold& b) {
    if (a.num_tets() != b.num_tets() || a.num_pairings() != b.num_pairings()) {
        return false;
    }
    return signature(a) == signature(b);
}

} // namespace mogami
