#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k2forge {

// A finite group as an indexed element set with full multiplication and
// inverse tables. Index 0 is always the identity.
struct FiniteGroup {
    std::string name;
    std::vector<std::string> labels;
    std::vector<uint8_t> mult;  // row-major order*order
    std::vector<uint8_t> inv;
    int order = 0;

    uint8_t mul(uint8_t a, uint8_t b) const { return mult[size_t(a) * order + b]; }

    int element_order(uint8_t a) const {
        int k = 1;
        uint8_t x = a;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    // Exhaustive group axioms: closure is structural, so check associativity,
    // identity, inverses, and that every row/column is a permutation.
    bool check_axioms() const {
        const int n = order;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        for (int a = 0; a < n; ++a) {
            if (mul(0, a) != a || mul(a, 0) != a) return false;
            if (mul(a, inv[a]) != 0 || mul(inv[a], a) != 0) return false;
        }
        for (int a = 0; a < n; ++a) {
            uint32_t row = 0, col = 0;
            for (int b = 0; b < n; ++b) {
                row |= 1u << mul(a, b);
                col |= 1u << mul(b, a);
            }
            if (row != (1u << n) - 1 || col != (1u << n) - 1) return false;
        }
        return true;
    }
};

// Homomorphism between two indexed groups, stored as an image table.
struct GroupHom {
    std::vector<uint8_t> image;
    int source_order = 0;
    int target_order = 0;

    bool check(const FiniteGroup& src, const FiniteGroup& dst) const {
        if (src.order != source_order || dst.order != target_order) return false;
        if (image[0] != 0) return false;
        for (int a = 0; a < src.order; ++a)
            for (int b = 0; b < src.order; ++b)
                if (image[src.mul(a, b)] != dst.mul(image[a], image[b])) return false;
        return true;
    }
};

namespace detail {

inline void fill_inverses(FiniteGroup& g) {
    g.inv.assign(g.order, 0);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (g.mul(a, b) == 0) g.inv[a] = uint8_t(b);
}

}  // namespace detail

// Z_n with elements 1, g, g^2, ..., g^{n-1}.
inline FiniteGroup build_cyclic(int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("build_cyclic: order out of range");
    FiniteGroup g;
    g.name = "Z" + std::to_string(n);
    g.order = n;
    g.labels.resize(n);
    for (int i = 0; i < n; ++i)
        g.labels[i] = i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i));
    g.mult.resize(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mult[size_t(a) * n + b] = uint8_t((a + b) % n);
    detail::fill_inverses(g);
    return g;
}

// Z_2 + Z_2 with generators labeled s and t; element order [1, s, t, st].
inline FiniteGroup build_klein() {
    FiniteGroup g;
    g.name = "V4";
    g.order = 4;
    g.labels = {"1", "s", "t", "st"};
    g.mult.resize(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) g.mult[size_t(a) * 4 + b] = uint8_t(a ^ b);
    detail::fill_inverses(g);
    return g;
}

// D_4 with s^4 = t^2 = 1 and st = t s^3, in the canonical element order
// [1, s, s2, s3, t, st, s2t, s3t]. Normal form s^a t^b, with
// (s^a t^b)(s^c t^d) = s^{a+(-1)^b c mod 4} t^{b+d mod 2}.
inline FiniteGroup build_dihedral_4() {
    FiniteGroup g;
    g.name = "D4";
    g.order = 8;
    g.labels = {"1", "s", "s2", "s3", "t", "st", "s2t", "s3t"};
    g.mult.resize(64);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            int a = i & 3, b = i >> 2;
            int c = j & 3, d = j >> 2;
            int e = ((b ? a - c : a + c) % 4 + 4) % 4;
            int f = (b + d) & 1;
            g.mult[size_t(i) * 8 + j] = uint8_t(e + 4 * f);
        }
    detail::fill_inverses(g);
    return g;
}

// Direct product with lexicographic element order (a, b) -> a*|B| + b.
inline FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    FiniteGroup g;
    g.name = A.name + "x" + B.name;
    g.order = A.order * B.order;
    g.labels.resize(g.order);
    g.mult.resize(size_t(g.order) * g.order);
    for (int a = 0; a < A.order; ++a)
        for (int b = 0; b < B.order; ++b)
            g.labels[a * B.order + b] = "(" + A.labels[a] + "," + B.labels[b] + ")";
    for (int i = 0; i < g.order; ++i)
        for (int j = 0; j < g.order; ++j) {
            int a1 = i / B.order, b1 = i % B.order;
            int a2 = j / B.order, b2 = j % B.order;
            g.mult[size_t(i) * g.order + j] =
                uint8_t(A.mul(a1, a2) * B.order + B.mul(b1, b2));
        }
    detail::fill_inverses(g);
    return g;
}

// The automorphism of Z_2+Z_2 cycling the three involutions s -> t -> st -> s.
inline GroupHom klein_rotation_hom() {
    GroupHom h;
    h.source_order = 4;
    h.target_order = 4;
    h.image = {0, 2, 3, 1};
    return h;
}

// The surjection D_4 -> Z_2+Z_2 killing s^2: s^a t^b -> s^{a mod 2} t^b.
inline GroupHom quotient_hom_d4_to_klein() {
    GroupHom h;
    h.source_order = 8;
    h.target_order = 4;
    h.image.resize(8);
    for (int i = 0; i < 8; ++i) {
        int a = i & 1, b = i >> 2;
        h.image[i] = uint8_t(a | (b << 1));
    }
    return h;
}

}  // namespace k2forge
