#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "k2forge/group_algebra.hpp"
#include "k2forge/unit_group.hpp"

namespace k2forge {

// Square matrix over the group algebra, row-major.
struct RingMatrix {
    size_t n = 0;
    std::vector<elem> e;

    static RingMatrix identity(size_t n) {
        RingMatrix m{n, std::vector<elem>(n * n, 0)};
        for (size_t i = 0; i < n; ++i) m.e[i * n + i] = 1;
        return m;
    }
    static RingMatrix diag2(elem a, elem b) {
        RingMatrix m = identity(2);
        m.e[0] = a;
        m.e[3] = b;
        return m;
    }
    elem& at(size_t i, size_t j) { return e[i * n + j]; }
    elem at(size_t i, size_t j) const { return e[i * n + j]; }
    bool operator==(const RingMatrix&) const = default;
};

// Identity plus r in the (i, j) spot, i != j.
inline RingMatrix elementary(size_t n, size_t i, size_t j, elem r) {
    if (i == j) throw std::invalid_argument("elementary matrix needs i != j");
    if (i >= n || j >= n) throw std::invalid_argument("index out of range");
    RingMatrix m = RingMatrix::identity(n);
    m.at(i, j) = r;
    return m;
}

inline RingMatrix mat_mul(const GroupAlgebra& A, const RingMatrix& x,
                          const RingMatrix& y) {
    if (x.n != y.n) throw std::invalid_argument("dimension mismatch");
    RingMatrix m{x.n, std::vector<elem>(x.n * x.n, 0)};
    for (size_t i = 0; i < x.n; ++i)
        for (size_t k = 0; k < x.n; ++k) {
            elem v = x.at(i, k);
            if (!v) continue;
            for (size_t j = 0; j < x.n; ++j)
                m.at(i, j) ^= A.mul(v, y.at(k, j));
        }
    return m;
}

inline bool mat_eq(const RingMatrix& x, const RingMatrix& y) { return x == y; }

// In characteristic 2 every elementary matrix is an involution.
inline RingMatrix elementary_inverse(size_t n, size_t i, size_t j, elem r) {
    return elementary(n, i, j, r);
}

inline RingMatrix mat_commutator(const GroupAlgebra& A, size_t n, size_t i,
                                 size_t j, elem r, size_t k, size_t l, elem s) {
    RingMatrix x = elementary(n, i, j, r), y = elementary(n, k, l, s);
    RingMatrix p = mat_mul(A, mat_mul(A, x, y),
                           mat_mul(A, elementary_inverse(n, i, j, r),
                                   elementary_inverse(n, k, l, s)));
    return p;
}

// Commutator laws for elementary matrices over n x n: disjoint indices give
// the identity, j = k gives e_il(rs), i = l gives e_kj(sr); the doubly
// matched case (k, l) = (j, i) is excluded.
inline bool commutator_law_check(const GroupAlgebra& A, size_t n,
                                 size_t samples_per_pattern, uint32_t seed) {
    std::mt19937 rng(seed);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l) {
                    if (k == l) continue;
                    if (j == k && i == l) continue;
                    for (size_t t = 0; t < samples_per_pattern; ++t) {
                        elem r = rng() % A.card, s = rng() % A.card;
                        RingMatrix got = mat_commutator(A, n, i, j, r, k, l, s);
                        RingMatrix want = RingMatrix::identity(n);
                        if (j == k) want.at(i, l) ^= A.mul(r, s);
                        if (i == l) want.at(k, j) ^= A.mul(s, r);
                        if (!(got == want)) return false;
                    }
                }
        }
    return true;
}

inline elem whitehead_theta(const GroupAlgebra& A, elem a, elem b) {
    elem ab = A.mul(a, b), ba = A.mul(b, a);
    return A.mul(1 ^ ab, A.pow(1 ^ ba, 3));
}

// The two elementary-product chains diagonalizing the Whitehead construction:
// first diag(1+ab, 1+b(1+ab)^{-1}a), then, continued through
// e_12(ab) e_21(1+ab+(ab)^2), diag(1, (1+ab)(1+ba)^3). Every intermediate
// equality is rechecked; throws logic_error if any step fails.
inline std::pair<RingMatrix, RingMatrix> whitehead_chain(const GroupAlgebra& A,
                                                         elem a, elem b) {
    elem ab = A.mul(a, b);
    if (!A.is_unit(1 ^ ab)) throw std::domain_error("1+ab must be a unit");
    elem inv1 = A.inverse(1 ^ ab);
    RingMatrix base = mat_mul(A, elementary(2, 0, 1, a), elementary(2, 1, 0, b));
    {
        RingMatrix want{2, {elem(1 ^ ab), a, b, 1}};
        if (!(base == want)) throw std::logic_error("base product mismatch");
    }
    RingMatrix first =
        mat_mul(A, mat_mul(A, elementary(2, 1, 0, A.mul(b, inv1)), base),
                elementary(2, 0, 1, A.mul(inv1, a)));
    elem x = 1 ^ A.mul(b, A.mul(inv1, a));  // = (1+ba)^{-1} in char 2
    if (!(first == RingMatrix::diag2(1 ^ ab, x)))
        throw std::logic_error("first diagonal mismatch");

    elem ab2 = A.mul(ab, ab), ab3 = A.mul(ab2, ab);
    RingMatrix factor = mat_mul(A, elementary(2, 0, 1, ab),
                                elementary(2, 1, 0, elem(1 ^ ab ^ ab2)));
    {
        RingMatrix want{2, {A.pow(1 ^ ab, 3), ab, elem(1 ^ ab ^ ab2), 1}};
        if (!(factor == want)) throw std::logic_error("cubic factor mismatch");
    }
    RingMatrix mid = mat_mul(A, factor, first);
    elem u = A.mul(ab, x);
    elem v = 1 ^ ab3;
    {
        RingMatrix want{2, {1, u, v, x}};
        if (!(mid == want)) throw std::logic_error("middle matrix mismatch");
    }
    // clearing against the unit pivot 1; signs vanish in characteristic 2
    RingMatrix second = mat_mul(
        A, mat_mul(A, elementary(2, 1, 0, v), mid), elementary(2, 0, 1, u));
    if (!(second == RingMatrix::diag2(1, whitehead_theta(A, a, b))))
        throw std::logic_error("second diagonal mismatch");
    return {first, second};
}

// ---------------------------------------------------------------------------
// p-vectors and the W group.

struct PVector {
    std::vector<elem> coords;
};

inline elem p_value(const GroupAlgebra& A, const std::vector<elem>& t) {
    elem prev2 = 1;          // p() = 1
    if (t.empty()) return prev2;
    elem prev1 = t[0];       // p(t1) = t1
    for (size_t i = 1; i < t.size(); ++i) {
        elem cur = A.mul(prev1, t[i]) ^ prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

inline elem p_value(const GroupAlgebra& A, const PVector& v) {
    return p_value(A, v.coords);
}

inline bool in_u_n(const GroupAlgebra& A, const std::vector<elem>& t) {
    return A.is_unit(p_value(A, t));
}

// s = p(v)^{-1} p(t_1..t_{n-1}); appending s and dropping the head keeps the
// p-value a unit.
inline elem suffix_element(const GroupAlgebra& A, const std::vector<elem>& t) {
    if (t.empty()) throw std::invalid_argument("suffix of the empty vector");
    elem p = p_value(A, t);
    if (!A.is_unit(p)) throw std::domain_error("p-value must be a unit");
    std::vector<elem> head(t.begin(), t.end() - 1);
    return A.mul(A.inverse(p), p_value(A, head));
}

inline PVector suffix_vector(const GroupAlgebra& A, const PVector& v) {
    elem s = suffix_element(A, v.coords);
    PVector out;
    out.coords.assign(v.coords.begin() + 1, v.coords.end());
    out.coords.push_back(s);
    return out;
}

// Subgroup of R* generated by p(t1,t2) p(t2,t1)^{-1} over all of U_2(R).
inline Subgroup w_group(const UnitGroup& U) {
    const GroupAlgebra& A = U.algebra;
    std::vector<uint16_t> seeds;
    std::vector<char> seen(A.card, 0);
    for (elem t1 = 0; t1 < A.card; ++t1)
        for (elem t2 = 0; t2 < A.card; ++t2) {
            elem p12 = 1 ^ A.mul(t1, t2);
            if (!A.is_unit(p12)) continue;
            elem g = A.mul(p12, A.inverse(elem(1 ^ A.mul(t2, t1))));
            if (!seen[g]) {
                seen[g] = 1;
                seeds.push_back(U.index_of[g]);
            }
        }
    Subgroup S = detail::closure(U, seeds);
    S.generators = seeds;
    return S;
}

// Sampled n = 3 contributions p(r) p(r*)^{-1}; returns how many fall outside
// the given subgroup.
inline size_t u3_outside_count(const UnitGroup& U, const Subgroup& W,
                               size_t samples, uint32_t seed) {
    const GroupAlgebra& A = U.algebra;
    std::mt19937 rng(seed);
    size_t outside = 0;
    for (size_t i = 0; i < samples; ++i) {
        elem t1 = rng() % A.card, t2 = rng() % A.card, t3 = rng() % A.card;
        elem p = p_value(A, {t1, t2, t3});
        if (!A.is_unit(p)) continue;
        elem pr = p_value(A, {t3, t2, t1});
        if (!A.is_unit(pr)) continue;
        elem g = A.mul(p, A.inverse(pr));
        if (!W.contains_encoding(U, g)) ++outside;
    }
    return outside;
}

// ---------------------------------------------------------------------------
// Stable range 1.

// F_2-span of aR + bR equals all of R?
inline bool right_span_full(const GroupAlgebra& A, elem a, elem b) {
    uint32_t basis[32] = {0};
    int rank = 0;
    auto insert = [&](elem v) {
        for (int bit = 31; bit >= 0; --bit) {
            if (!(v >> bit & 1)) continue;
            if (basis[bit]) {
                v ^= basis[bit];
            } else {
                basis[bit] = v;
                ++rank;
                return;
            }
        }
    };
    for (int i = 0; i < (int)A.dim; ++i) {
        insert(A.mul(a, elem(1u << i)));
        insert(A.mul(b, elem(1u << i)));
    }
    return rank == (int)A.dim;
}

inline std::optional<elem> stability_witness(const GroupAlgebra& A, elem a,
                                             elem b) {
    for (elem y = 0; y < A.card; ++y)
        if (A.is_unit(a ^ A.mul(b, y))) return y;
    return std::nullopt;
}

// For every pair with aR + bR = R some y makes a + by a unit.
inline bool stable_range_one_check(const GroupAlgebra& A) {
    for (elem a = 0; a < A.card; ++a)
        for (elem b = 0; b < A.card; ++b) {
            if (!right_span_full(A, a, b)) continue;
            if (!stability_witness(A, a, b)) return false;
        }
    return true;
}

}  // namespace k2forge
