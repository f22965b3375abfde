#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace mogami {

/// Permutation of the corners {0,1,2,3} of a tetrahedron.
///
/// Composition follows function notation: `(p * q)[i] == p[q[i]]`.
class Perm4 {
public:
    constexpr Perm4() : image_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d)
        : image_{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)} {}

    /// The i-th permutation of S4 in lexicographic order of image tuples.
    static Perm4 from_index(int index);
    int index() const;

    constexpr int operator[](int i) const { return image_[static_cast<std::size_t>(i)]; }

    Perm4 inverse() const;
    Perm4 operator*(const Perm4& rhs) const;

    /// +1 for even permutations, -1 for odd ones.
    int sign() const;

    bool is_valid() const;

    friend bool operator==(const Perm4&, const Perm4&) = default;
    friend auto operator<=>(const Perm4&, const Perm4&) = default;

private:
    std::array<std::uint8_t, 4> image_;
};

/// Sign of the permutation sending the sorted triple `from` onto `to`
/// (both listing the same three values).
int triple_sign(const std::array<int, 3>& from, const std::array<int, 3>& to);

} // namespace mogami
