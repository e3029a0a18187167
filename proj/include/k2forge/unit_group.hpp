#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "k2forge/group_algebra.hpp"

namespace k2forge {

// R* as a concrete finite group over unit indices.
struct UnitGroup {
    GroupAlgebra algebra;
    std::vector<elem> elements;          // unit encodings in increasing order
    std::vector<uint16_t> index_of;      // encoding -> unit index, 0xffff elsewhere
    std::vector<uint16_t> mult;          // n*n over unit indices
    std::vector<uint16_t> inv;

    int order() const { return int(elements.size()); }
    uint16_t mul(uint16_t a, uint16_t b) const {
        return mult[size_t(a) * elements.size() + b];
    }

    static UnitGroup build(const GroupAlgebra& A) {
        UnitGroup U;
        U.algebra = A;
        U.index_of.assign(A.card, 0xffff);
        for (elem x = 0; x < A.card; ++x)
            if (A.is_unit(x)) {
                U.index_of[x] = uint16_t(U.elements.size());
                U.elements.push_back(x);
            }
        size_t n = U.elements.size();
        U.mult.resize(n * n);
        U.inv.resize(n);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j)
                U.mult[i * n + j] = U.index_of[A.mul(U.elements[i], U.elements[j])];
            U.inv[i] = U.index_of[A.inverse(U.elements[i])];
        }
        return U;
    }

    bool check_axioms() const {
        size_t n = elements.size();
        uint16_t id = index_of[1];
        if (id == 0xffff) return false;
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t c = 0; c < n; ++c)
                    if (mul(mul(uint16_t(a), uint16_t(b)), uint16_t(c)) !=
                        mul(uint16_t(a), mul(uint16_t(b), uint16_t(c))))
                        return false;
        for (size_t a = 0; a < n; ++a) {
            if (mul(id, uint16_t(a)) != a || mul(uint16_t(a), id) != a) return false;
            if (mul(uint16_t(a), inv[a]) != id) return false;
        }
        return true;
    }

    uint16_t commutator(uint16_t a, uint16_t b) const {
        return mul(mul(a, b), mul(inv[a], inv[b]));
    }
};

struct Subgroup {
    std::vector<uint16_t> members;       // sorted unit indices
    std::vector<uint8_t> member_mask;    // over unit indices
    std::vector<uint16_t> generators;

    bool contains(uint16_t i) const { return member_mask[i] != 0; }
    size_t size() const { return members.size(); }
    bool contains_encoding(const UnitGroup& U, elem x) const {
        uint16_t i = U.index_of[x];
        return i != 0xffff && contains(i);
    }
};

namespace detail {

inline Subgroup closure(const UnitGroup& U, std::vector<uint16_t> seed) {
    Subgroup S;
    S.member_mask.assign(U.order(), 0);
    S.generators = seed;
    std::vector<uint16_t> queue;
    auto push = [&](uint16_t i) {
        if (!S.member_mask[i]) {
            S.member_mask[i] = 1;
            queue.push_back(i);
        }
    };
    push(U.index_of[1]);
    for (uint16_t g : seed) push(g);
    for (size_t head = 0; head < queue.size(); ++head) {
        uint16_t a = queue[head];
        push(U.inv[a]);
        for (size_t j = 0; j < queue.size(); ++j) {
            push(U.mul(a, queue[j]));
            push(U.mul(queue[j], a));
        }
    }
    for (int i = 0; i < U.order(); ++i)
        if (S.member_mask[i]) S.members.push_back(uint16_t(i));
    return S;
}

}  // namespace detail

// Invariant factors of an abelian 2-subgroup from its power-layer sizes:
// the count of factors of order >= 2^i is log2|S[2^i]| - log2|S[2^{i-1}]|.
inline std::vector<int> abelian_factors_of_subgroup(const UnitGroup& U,
                                                    const Subgroup& S) {
    for (uint16_t a : S.members)
        for (uint16_t b : S.members)
            if (U.mul(a, b) != U.mul(b, a))
                throw std::domain_error("subgroup is not abelian");
    std::vector<int> layer_log;  // log2 |{x in S : x^(2^i) = 1}|
    std::vector<uint16_t> powers(S.members.begin(), S.members.end());
    uint16_t id = U.index_of[1];
    while (true) {
        size_t fixed = 0;
        for (uint16_t p : powers) fixed += (p == id);
        int lg = 0;
        while ((size_t(1) << lg) < fixed) ++lg;
        if ((size_t(1) << lg) != fixed) throw std::domain_error("layer not a 2-power");
        layer_log.push_back(lg);
        if (fixed == S.members.size()) break;
        for (auto& p : powers) p = U.mul(p, p);
    }
    std::vector<int> factors;
    for (size_t i = 1; i < layer_log.size(); ++i) {
        int count_ge = layer_log[i] - layer_log[i - 1];
        // factors of order exactly 2^i: count_ge at level i minus count at i+1
        int next = i + 1 < layer_log.size() ? layer_log[i + 1] - layer_log[i] : 0;
        for (int k = 0; k < count_ge - next; ++k)
            factors.push_back(1 << i);
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

// Closure of the full commutator set, cross-checked against the subgroup
// generated by those commutators.
inline Subgroup commutator_subgroup(const UnitGroup& U) {
    std::vector<uint8_t> seen(U.order(), 0);
    std::vector<uint16_t> comms;
    for (int a = 0; a < U.order(); ++a)
        for (int b = 0; b < U.order(); ++b) {
            uint16_t c = U.commutator(uint16_t(a), uint16_t(b));
            if (!seen[c]) {
                seen[c] = 1;
                comms.push_back(c);
            }
        }
    Subgroup direct = detail::closure(U, comms);
    // Second path: grow from a greedy generating subset and confirm every
    // commutator already lands inside.
    Subgroup generated = detail::closure(U, {});
    for (uint16_t c : comms)
        if (!generated.contains(c)) {
            auto gens = generated.generators;
            gens.push_back(c);
            generated = detail::closure(U, gens);
        }
    if (direct.members != generated.members)
        throw std::logic_error("commutator closure paths disagree");
    direct.generators = generated.generators;
    return direct;
}

// The set (s-1)^2 R + 1 and whether it centralizes every unit.
inline std::pair<Subgroup, bool> central_subset_check(const UnitGroup& U) {
    const auto& A = U.algebra;
    elem c2 = A.mul(parse_element(A, "1+s"), parse_element(A, "1+s"));
    Subgroup S;
    S.member_mask.assign(U.order(), 0);
    for (elem r = 0; r < A.card; ++r) {
        elem v = A.mul(c2, r) ^ 1;
        uint16_t i = U.index_of[v];
        if (i == 0xffff) return {S, false};
        S.member_mask[i] = 1;
    }
    for (int i = 0; i < U.order(); ++i)
        if (S.member_mask[i]) S.members.push_back(uint16_t(i));
    bool central = true;
    for (uint16_t m : S.members)
        for (int u = 0; u < U.order() && central; ++u)
            central = U.mul(m, uint16_t(u)) == U.mul(uint16_t(u), m);
    return {S, central};
}

struct CommutatorWitness {
    elem a, b, value;
};

// (1+ab)(1+ba)^3 for the six listed pairs; each value must match and lie in
// the commutator subgroup.
inline std::vector<CommutatorWitness> verify_commutator_witnesses(
    const UnitGroup& U, const Subgroup& derived) {
    const auto& A = U.algebra;
    auto E = [&](const char* s) { return parse_element(A, s); };
    const std::vector<std::array<const char*, 3>> table = {
        {"1+s", "t", "s+s2+s3+st+s3t"},
        {"s+t", "s", "s2"},
        {"s2+t", "st", "s+s2+s3+t+s2t"},
        {"s2+st", "s", "s2+t+st+s2t+s3t"},
        {"s+t", "st", "1+s+s3+t+s2t"},
        {"s+st", "s2t", "1+s+s3+st+s3t"},
    };
    std::vector<CommutatorWitness> out;
    for (const auto& row : table) {
        elem a = E(row[0]), b = E(row[1]);
        elem ab1 = A.mul(a, b) ^ 1, ba1 = A.mul(b, a) ^ 1;
        elem v = A.mul(ab1, A.pow(ba1, 3));
        if (v != E(row[2])) throw std::logic_error("witness value mismatch");
        if (!derived.contains_encoding(U, v))
            throw std::logic_error("witness not in commutator subgroup");
        out.push_back({a, b, v});
    }
    return out;
}

// No assignment over F_2^6 makes ab+ba = (s2t+t)ba with a, b drawn from
// 1 + span{s-1, t-1, st-1}; checked semantically in the algebra.
inline bool commutator_linear_system_unsolvable(const UnitGroup& U) {
    const auto& A = U.algebra;
    elem g1 = parse_element(A, "1+s"), g2 = parse_element(A, "1+t"),
         g3 = parse_element(A, "1+st");
    elem lhs_factor = parse_element(A, "s2t+t");
    for (int mask = 0; mask < 64; ++mask) {
        elem a = 1, b = 1;
        if (mask & 1) a ^= g1;
        if (mask & 2) a ^= g2;
        if (mask & 4) a ^= g3;
        if (mask & 8) b ^= g1;
        if (mask & 16) b ^= g2;
        if (mask & 32) b ^= g3;
        elem ba = A.mul(b, a);
        if ((A.mul(a, b) ^ ba) == A.mul(lhs_factor, ba)) return false;
    }
    return true;
}

// theta = (1+ab)(1+ba)^{-1} is central and lies in [R*,R*], for every pair
// with 1+ab a unit.
inline bool theta_centrality_check(const UnitGroup& U, const Subgroup& derived) {
    const auto& A = U.algebra;
    for (elem a = 0; a < A.card; ++a)
        for (elem b = 0; b < A.card; ++b) {
            elem ab1 = A.mul(a, b) ^ 1;
            if (!A.is_unit(ab1)) continue;
            elem ba1 = A.mul(b, a) ^ 1;
            if (!A.is_unit(ba1)) return false;
            elem theta = A.mul(ab1, A.inverse(ba1));
            uint16_t ti = U.index_of[theta];
            if (!derived.contains(ti)) return false;
            for (elem u : U.elements)
                if (A.mul(theta, u) != A.mul(u, theta)) return false;
        }
    return true;
}

}  // namespace k2forge
