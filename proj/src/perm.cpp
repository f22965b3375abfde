#include <mogami/perm.hpp>

#include <algorithm>

namespace mogami {

namespace {

struct S4Table {
    std::array<Perm4, 24> perms;
    std::array<int, 256> index_of{};

    S4Table() {
        std::array<int, 4> p{0, 1, 2, 3};
        int k = 0;
        do {
            perms[static_cast<std::size_t>(k)] = Perm4(p[0], p[1], p[2], p[3]);
            index_of[static_cast<std::size_t>(key(p[0], p[1], p[2], p[3]))] = k;
            ++k;
        } while (std::next_permutation(p.begin(), p.end()));
    }

    static int key(int a, int b, int c, int d) { return a | (b << 2) | (c << 4) | (d << 6); }
};

const S4Table& table() {
    static const S4Table t;
    return t;
}

} // namespace

Perm4 Perm4::from_index(int index) { return table().perms[static_cast<std::size_t>(index)]; }

int Perm4::index() const {
    return table().index_of[static_cast<std::size_t>(
        S4Table::key(image_[0], image_[1], image_[2], image_[3]))];
}

Perm4 Perm4::inverse() const {
    Perm4 out;
    for (int i = 0; i < 4; ++i) {
        out.image_[image_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    }
    return out;
}

Perm4 Perm4::operator*(const Perm4& rhs) const {
    Perm4 out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.image_[i] = image_[rhs.image_[i]];
    }
    return out;
}

int Perm4::sign() const {
    int inversions = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (image_[i] > image_[j]) {
                ++inversions;
            }
        }
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

bool Perm4::is_valid() const {
    int seen = 0;
    for (auto v : image_) {
        if (v > 3) {
            return false;
        }
        seen |= 1 << v;
    }
    return seen == 0xF;
}

int triple_sign(const std::array<int, 3>& from, const std::array<int, 3>& to) {
    // position of each `to` entry inside `from`
    std::array<int, 3> pos{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (from[j] == to[i]) {
                pos[i] = static_cast<int>(j);
            }
        }
    }
    int inversions = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            if (pos[i] > pos[j]) {
                ++inversions;
            }
        }
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

} // namespace mogami
