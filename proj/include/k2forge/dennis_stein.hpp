#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "k2forge/abelian.hpp"
#include "k2forge/group_algebra.hpp"
#include "k2forge/unit_group.hpp"

namespace k2forge {

// ---------------------------------------------------------------------------
// Symbols and formal sums.

// Dense id table for Dennis-Stein symbols <a, b>; (a, b) is a symbol when
// 1 + ab is a unit.  Ids follow lex order on the encoding pair.
struct SymbolIndex {
    uint32_t card = 0;
    std::vector<int32_t> id_table;             // card * card, -1 where invalid
    std::vector<std::pair<elem, elem>> pairs;  // id -> (a, b)

    static SymbolIndex build(const GroupAlgebra& A) {
        SymbolIndex S;
        S.card = A.card;
        S.id_table.assign(size_t(A.card) * A.card, -1);
        for (elem a = 0; a < A.card; ++a)
            for (elem b = 0; b < A.card; ++b)
                if (A.is_unit(1u ^ A.mul(a, b))) {
                    S.id_table[size_t(a) * A.card + b] = int32_t(S.pairs.size());
                    S.pairs.push_back({a, b});
                }
        return S;
    }

    bool valid(elem a, elem b) const {
        return id_table[size_t(a) * card + b] >= 0;
    }
    int32_t id(elem a, elem b) const { return id_table[size_t(a) * card + b]; }
    uint32_t require(elem a, elem b) const {
        int32_t i = id(a, b);
        if (i < 0) throw std::domain_error("not a valid symbol pair");
        return uint32_t(i);
    }
    size_t count() const { return pairs.size(); }
};

// Sparse integer combination of symbols, sorted by id, no zero coefficients.
struct FormalSum {
    std::vector<std::pair<uint32_t, long long>> terms;

    static FormalSum single(uint32_t id, long long c = 1) {
        FormalSum s;
        if (c) s.terms.push_back({id, c});
        return s;
    }

    void add_term(uint32_t id, long long c) {
        if (!c) return;
        auto it = std::lower_bound(terms.begin(), terms.end(), id,
                                   [](const auto& t, uint32_t v) { return t.first < v; });
        if (it != terms.end() && it->first == id) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        } else {
            terms.insert(it, {id, c});
        }
    }

    bool empty() const { return terms.empty(); }
    bool operator==(const FormalSum&) const = default;
};

inline FormalSum fs_add(const FormalSum& a, const FormalSum& b) {
    FormalSum r = a;
    for (auto [id, c] : b.terms) r.add_term(id, c);
    return r;
}

inline FormalSum fs_scale(const FormalSum& a, long long k) {
    FormalSum r;
    if (k)
        for (auto [id, c] : a.terms) r.terms.push_back({id, c * k});
    return r;
}

inline FormalSum fs_sub(const FormalSum& a, const FormalSum& b) {
    return fs_add(a, fs_scale(b, -1));
}

// ---------------------------------------------------------------------------
// Relation rows.

enum class RelKind : uint8_t { r1, r2, r4, soc, ds2 };

// r1(a, b):   <a,b> + <b,a>
// r2(a, c, b): <a,cb> - <ac,b> - <ba,c>, needs 1 + acb a unit
// r4(a, b, c): <a,b> + <eae^{-1}, (c+b)e^{-1}> - <a,c>, e = 1 + ba; needs
//              <a,b>, <a,c> and the middle pair valid
// soc(a, b):  <a,b> alone; an entry must lie in soc(R) and in the commutator
//              ideal.  Such symbols are relative classes of a central
//              square-zero ideal inside the commutator part and die under
//              rank-3 stability, which the rank-2 kinds cannot express.  The
//              family is empty over any commutative ring.
// ds2(r, s, t): <r,s> + <r,t> - <r, s+t+rst>, a derived consequence; never
//              part of the streamed presentation
struct RelationInstance {
    RelKind kind;
    std::array<elem, 3> par{0, 0, 0};
};

// F_2 span of mask-encoded elements, kept as an echelon indexed by lowest
// set bit.  Each reduction step clears the current lowest bit, so both
// operations finish in at most dim steps.
namespace detail {
inline bool span_insert(std::vector<elem>& by_lead, elem v) {
    while (v) {
        unsigned i = unsigned(std::countr_zero(v));
        if (!by_lead[i]) {
            by_lead[i] = v;
            return true;
        }
        v ^= by_lead[i];
    }
    return false;
}
inline bool span_contains(const std::vector<elem>& by_lead, elem v) {
    while (v) {
        unsigned i = unsigned(std::countr_zero(v));
        if (!by_lead[i]) return false;
        v ^= by_lead[i];
    }
    return true;
}
}  // namespace detail

// Nonzero elements of soc(R) n C: soc(R) the two-sided annihilator of the
// augmentation ideal, C the two-sided ideal generated by additive
// commutators.  C = 0 for commutative rings, so the result is empty there.
inline std::vector<elem> socle_commutator_elements(const GroupAlgebra& A) {
    uint32_t n = uint32_t(A.group.order);
    std::vector<elem> ideal(A.dim, 0);
    std::vector<elem> work;
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t h = 0; h < n; ++h) {
            elem x = elem(1u << g), y = elem(1u << h);
            elem c = A.mul(x, y) ^ A.mul(y, x);
            if (c && detail::span_insert(ideal, c)) work.push_back(c);
        }
    while (!work.empty()) {
        elem c = work.back();
        work.pop_back();
        for (uint32_t g = 0; g < n; ++g)
            for (elem p : {A.mul(elem(1u << g), c), A.mul(c, elem(1u << g))})
                if (p && detail::span_insert(ideal, p)) work.push_back(p);
    }
    std::vector<elem> out;
    for (elem x = 1; x < A.card; ++x) {
        if (!detail::span_contains(ideal, x)) continue;
        bool ann = true;
        for (uint32_t g = 1; g < n && ann; ++g) {
            elem j = elem(1u << g) ^ 1u;
            ann = A.mul(x, j) == 0 && A.mul(j, x) == 0;
        }
        if (ann) out.push_back(x);
    }
    return out;
}

inline std::optional<FormalSum> relation_row(const GroupAlgebra& A,
                                             const SymbolIndex& S,
                                             const RelationInstance& inst) {
    auto [x, y, z] = inst.par;
    FormalSum row;
    switch (inst.kind) {
        case RelKind::r1: {
            if (!S.valid(x, y) || !S.valid(y, x)) return std::nullopt;
            row.add_term(uint32_t(S.id(x, y)), 1);
            row.add_term(uint32_t(S.id(y, x)), 1);
            return row;
        }
        case RelKind::r2: {
            // (a, c, b) = (x, y, z)
            elem ac = A.mul(x, y);
            if (!A.is_unit(1u ^ A.mul(ac, z))) return std::nullopt;
            elem cb = A.mul(y, z);
            elem ba = A.mul(z, x);
            row.add_term(S.require(x, cb), 1);
            row.add_term(S.require(ac, z), -1);
            row.add_term(S.require(ba, y), -1);
            return row;
        }
        case RelKind::r4: {
            // (a, b, c) = (x, y, z)
            if (!S.valid(x, y) || !S.valid(x, z)) return std::nullopt;
            elem e = 1u ^ A.mul(y, x);
            elem ei = A.inverse(e);
            elem m1 = A.mul(A.mul(e, x), ei);
            elem m2 = A.mul(y ^ z, ei);
            if (!S.valid(m1, m2)) return std::nullopt;
            row.add_term(uint32_t(S.id(x, y)), 1);
            row.add_term(uint32_t(S.id(m1, m2)), 1);
            row.add_term(uint32_t(S.id(x, z)), -1);
            return row;
        }
        case RelKind::soc: {
            // (a, b) = (x, y)
            if (!S.valid(x, y)) return std::nullopt;
            auto sc = socle_commutator_elements(A);
            bool hit = std::find(sc.begin(), sc.end(), x) != sc.end() ||
                       std::find(sc.begin(), sc.end(), y) != sc.end();
            if (!hit) return std::nullopt;
            row.add_term(uint32_t(S.id(x, y)), 1);
            return row;
        }
        case RelKind::ds2: {
            // (r, s, t) = (x, y, z)
            if (!S.valid(x, y) || !S.valid(x, z)) return std::nullopt;
            elem w = y ^ z ^ A.mul(A.mul(x, y), z);
            if (!S.valid(x, w)) return std::nullopt;
            row.add_term(uint32_t(S.id(x, y)), 1);
            row.add_term(uint32_t(S.id(x, z)), 1);
            row.add_term(uint32_t(S.id(x, w)), -1);
            return row;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Streaming the presentation.

struct StreamStats {
    uint64_t r1 = 0;
    uint64_t r2 = 0;
    uint64_t r4 = 0;
    uint64_t r4_skipped = 0;
    uint64_t soc = 0;

    uint64_t rows() const { return r1 + r2 + r4 + soc; }
    bool operator==(const StreamStats&) const = default;
};

struct StreamOptions {
    uint32_t shuffle_seed = 0;  // nonzero permutes the work chunks
};

// theta = (1+ab)(1+ba)^{-1} must be central for the conjugation relation to
// collapse; the presentation is abelian exactly then.
inline void require_central_theta(const GroupAlgebra& A, const SymbolIndex& S) {
    std::set<elem> thetas;
    for (auto [a, b] : S.pairs)
        thetas.insert(A.mul(1u ^ A.mul(a, b), A.inverse(1u ^ A.mul(b, a))));
    for (elem th : thetas)
        for (elem x = 0; x < A.card; ++x)
            if (A.mul(th, x) != A.mul(x, th))
                throw std::runtime_error(
                    "presentation not abelian; R3 cannot be reduced");
}

// Streams every presentation row: r1 over unordered symbol pairs, r2 over
// all (a, c, b) with 1 + acb a unit, r4 over all (a, b, c) with <a,b> and
// <a,c> valid, soc over every valid symbol with an entry in
// soc(R) n (commutator ideal).  r4 instances whose middle pair is invalid
// are skipped and counted.  Work is chunked by (kind, first parameter) so
// chunk order can be permuted without changing the row set.
template <typename Sink>
StreamStats stream_relations(const GroupAlgebra& A, const SymbolIndex& S,
                             Sink&& sink, const StreamOptions& opt = {}) {
    require_central_theta(A, S);
    const uint32_t card = A.card;
    StreamStats st;
    FormalSum row;

    // chunk 0: r1; chunks 1..card: r2 with fixed a; card+1..2card: r4 fixed
    // a; 2card+1: soc
    std::vector<uint32_t> chunks(2 * card + 2);
    for (uint32_t i = 0; i < chunks.size(); ++i) chunks[i] = i;
    if (opt.shuffle_seed) {
        std::mt19937 gen(opt.shuffle_seed);
        std::shuffle(chunks.begin(), chunks.end(), gen);
    }

    for (uint32_t chunk : chunks) {
        if (chunk == 0) {
            for (elem a = 0; a < card; ++a)
                for (elem b = a; b < card; ++b) {
                    int32_t i = S.id(a, b);
                    if (i < 0) continue;
                    ++st.r1;
                    row.terms.clear();
                    if (a == b) {
                        row.terms.push_back({uint32_t(i), 2});
                    } else {
                        uint32_t j = S.require(b, a);
                        row.add_term(uint32_t(i), 1);
                        row.add_term(j, 1);
                    }
                    sink(row);
                }
        } else if (chunk <= card) {
            elem a = chunk - 1;
            for (elem c = 0; c < card; ++c) {
                elem ac = A.mul(a, c);
                for (elem b = 0; b < card; ++b) {
                    if (!A.is_unit(1u ^ A.mul(ac, b))) continue;
                    ++st.r2;
                    elem cb = A.mul(c, b);
                    elem ba = A.mul(b, a);
                    row.terms.clear();
                    row.add_term(S.require(a, cb), 1);
                    row.add_term(S.require(ac, b), -1);
                    row.add_term(S.require(ba, c), -1);
                    if (!row.empty()) sink(row);
                }
            }
        } else if (chunk <= 2 * card) {
            elem a = chunk - card - 1;
            for (elem b = 0; b < card; ++b) {
                int32_t iab = S.id(a, b);
                if (iab < 0) continue;
                elem e = 1u ^ A.mul(b, a);
                elem ei = A.inverse(e);
                elem m1 = A.mul(A.mul(e, a), ei);
                for (elem c = 0; c < card; ++c) {
                    int32_t iac = S.id(a, c);
                    if (iac < 0) continue;
                    elem m2 = A.mul(b ^ c, ei);
                    int32_t imid = S.id(m1, m2);
                    if (imid < 0) {
                        ++st.r4_skipped;
                        continue;
                    }
                    ++st.r4;
                    row.terms.clear();
                    row.add_term(uint32_t(iab), 1);
                    row.add_term(uint32_t(imid), 1);
                    row.add_term(uint32_t(iac), -1);
                    if (!row.empty()) sink(row);
                }
            }
        } else {
            for (elem s : socle_commutator_elements(A))
                for (elem x = 0; x < card; ++x) {
                    if (S.valid(s, x)) {
                        ++st.soc;
                        row.terms.clear();
                        row.add_term(S.require(s, x), 1);
                        sink(row);
                    }
                    if (x != s && S.valid(x, s)) {
                        ++st.soc;
                        row.terms.clear();
                        row.add_term(S.require(x, s), 1);
                        sink(row);
                    }
                }
        }
    }
    return st;
}

// ---------------------------------------------------------------------------
// Column reductions applied before row reduction.

// Maps each symbol id to a combination of reduced columns.  radical_first
// eliminates symbols with a unit first argument through the r2 consequence
// <u,b> = <ubu, u^{-1}> - <bu, 1>, leaving first arguments in the radical.
struct SymbolReduction {
    size_t num_columns = 0;
    bool trivial = true;
    std::vector<std::vector<std::pair<uint32_t, long long>>> expansion;

    static SymbolReduction identity(const SymbolIndex& S) {
        SymbolReduction R;
        R.num_columns = S.count();
        R.trivial = true;
        return R;
    }

    static SymbolReduction radical_first(const GroupAlgebra& A,
                                         const SymbolIndex& S) {
        SymbolReduction R;
        R.trivial = false;
        std::vector<int32_t> col(S.count(), -1);
        for (uint32_t i = 0; i < S.count(); ++i) {
            auto [a, b] = S.pairs[i];
            if (!A.is_unit(a)) col[i] = int32_t(R.num_columns++);
        }
        R.expansion.resize(S.count());
        for (uint32_t i = 0; i < S.count(); ++i) {
            auto [a, b] = S.pairs[i];
            if (col[i] >= 0) {
                R.expansion[i] = {{uint32_t(col[i]), 1}};
                continue;
            }
            elem ui = A.inverse(a);
            elem ubu = A.mul(A.mul(a, b), a);
            elem bu = A.mul(b, a);
            int32_t c1 = col[S.require(ubu, ui)];
            int32_t c2 = col[S.require(bu, 1)];
            if (c1 < 0 || c2 < 0)
                throw std::logic_error("substitution left a unit first argument");
            R.expansion[i] = {{uint32_t(c1), 1}, {uint32_t(c2), -1}};
            std::sort(R.expansion[i].begin(), R.expansion[i].end());
        }
        return R;
    }

    void apply(const FormalSum& row,
               std::vector<std::pair<uint32_t, long long>>& out) const {
        out.clear();
        if (trivial) {
            out = row.terms;
            return;
        }
        for (auto [id, c] : row.terms)
            for (auto [col, k] : expansion[id]) out.push_back({col, c * k});
    }
};

// ---------------------------------------------------------------------------
// The d1 group.

struct D1Options {
    int mod_exp = 3;            // 2-power exponent e; e+1 must agree
    uint32_t shuffle_seed = 0;  // forwarded to the relation stream
    bool pre_eliminate = false;
    // periodic in-pass normalization keeps the working set near the ambient
    // rank; 0 normalizes only at the end of the pass
    uint64_t normalize_interval = 262144;
};

struct D1Structure {
    AbelianGroup group;
    size_t num_symbols = 0;
    std::vector<long long> coords;  // num_symbols x factors, symbol-major
    StreamStats stats;

    std::vector<long long> coords_of(uint32_t id) const {
        size_t k = group.factors.size();
        std::vector<long long> c(k);
        for (size_t j = 0; j < k; ++j) c[j] = coords[size_t(id) * k + j];
        return c;
    }
};

// Reduces the streamed presentation mod 2^e and 2^(e+1) (results must agree
// and stay below the modulus) and checks full column rank mod 3 and mod 5,
// which rules out free and 3- or 5-torsion parts.
inline D1Structure d1_structure(const GroupAlgebra& A, const SymbolIndex& S,
                                const D1Options& opt = {}) {
    SymbolReduction red = opt.pre_eliminate ? SymbolReduction::radical_first(A, S)
                                            : SymbolReduction::identity(S);
    StreamOptions sopt;
    sopt.shuffle_seed = opt.shuffle_seed;

    auto run_pass = [&](uint32_t modulus) {
        StreamingReducer reducer(uint32_t(red.num_columns), modulus);
        std::vector<std::pair<uint32_t, long long>> buf;
        uint64_t pushed = 0;
        StreamStats st = stream_relations(
            A, S,
            [&](const FormalSum& row) {
                red.apply(row, buf);
                reducer.add(buf);
                if (opt.normalize_interval &&
                    ++pushed % opt.normalize_interval == 0)
                    reducer.normalize();
            },
            sopt);
        return std::pair<StreamingReducer, StreamStats>(std::move(reducer), st);
    };

    auto lo_pass = run_pass(1u << opt.mod_exp);
    lo_pass.first.normalize();
    ModularCokernel lo = modular_cokernel(lo_pass.first.finish());

    auto hi_pass = run_pass(1u << (opt.mod_exp + 1));
    hi_pass.first.normalize();
    ModularCokernel hi = modular_cokernel(hi_pass.first.finish());

    if (lo.capped || hi.capped || lo.group != hi.group)
        throw std::runtime_error("exponent bound unstable, raise e");

    for (uint32_t p : {3u, 5u})
        if (!run_pass(p).first.full_column_rank())
            throw std::runtime_error("free or odd-torsion part detected");

    D1Structure out;
    out.group = lo.group;
    out.num_symbols = S.count();
    out.stats = lo_pass.second;
    size_t k = out.group.factors.size();
    out.coords.assign(out.num_symbols * k, 0);
    std::vector<std::pair<uint32_t, long long>> buf;
    for (uint32_t i = 0; i < out.num_symbols; ++i) {
        red.apply(FormalSum::single(i), buf);
        for (auto [col, c] : buf) {
            const auto& cc = lo.col_coords[col];
            for (size_t j = 0; j < k; ++j) {
                long long d = out.group.factors[j];
                long long v = out.coords[size_t(i) * k + j] + c * cc[j];
                v %= d;
                if (v < 0) v += d;
                out.coords[size_t(i) * k + j] = v;
            }
        }
    }
    return out;
}

// Coordinates of a formal sum in the reported group.
inline std::vector<long long> evaluate(const D1Structure& d1,
                                       const FormalSum& fs) {
    size_t k = d1.group.factors.size();
    std::vector<long long> acc(k, 0);
    for (auto [id, c] : fs.terms) {
        if (id >= d1.num_symbols)
            throw std::domain_error("symbol not in generator set");
        for (size_t j = 0; j < k; ++j) {
            long long d = d1.group.factors[j];
            long long v = acc[j] + c * d1.coords[size_t(id) * k + j];
            if (d != 0) {
                v %= d;
                if (v < 0) v += d;
            }
            acc[j] = v;
        }
    }
    return acc;
}

inline bool evaluates_zero(const D1Structure& d1, const FormalSum& fs) {
    auto v = evaluate(d1, fs);
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// The map to the commutator subgroup and the K_2 kernel.

inline elem phi_symbol(const GroupAlgebra& A, elem a, elem b) {
    return A.mul(1u ^ A.mul(a, b), A.inverse(1u ^ A.mul(b, a)));
}

// F_2 coordinates on an elementary abelian 2-subgroup of the unit group.
struct ElementaryCoords {
    std::vector<elem> basis;
    std::vector<uint32_t> mask_of;  // per unit index, ~0u outside the subgroup

    static ElementaryCoords build(const UnitGroup& U, const Subgroup& W) {
        ElementaryCoords E;
        E.mask_of.assign(U.order(), ~0u);
        uint16_t one = U.index_of[1];
        for (uint16_t m : W.members) {
            if (U.mul(m, m) != one)
                throw std::logic_error("subgroup not of exponent 2");
            for (uint16_t n : W.members)
                if (U.mul(m, n) != U.mul(n, m))
                    throw std::logic_error("subgroup not abelian");
        }
        E.mask_of[one] = 0;
        for (uint16_t m : W.members) {
            if (E.mask_of[m] != ~0u) continue;
            // m is independent of the current basis: tag the new coset
            uint32_t bit = 1u << E.basis.size();
            E.basis.push_back(U.elements[m]);
            std::vector<std::pair<uint16_t, uint32_t>> known;
            for (uint16_t n : W.members)
                if (E.mask_of[n] != ~0u) known.push_back({n, E.mask_of[n]});
            for (auto [n, mask] : known) E.mask_of[U.mul(m, n)] = mask | bit;
        }
        for (uint16_t m : W.members)
            if (E.mask_of[m] == ~0u)
                throw std::logic_error("subgroup closure mismatch");
        return E;
    }

    uint32_t coords(const UnitGroup& U, elem x) const {
        uint16_t i = U.index_of[x];
        if (i == 0xffff || mask_of[i] == ~0u)
            throw std::domain_error("element outside the coordinate subgroup");
        return mask_of[i];
    }
};

struct K2Result {
    AbelianGroup group;
    std::vector<uint32_t> generator_images;  // F_2 mask per d1 factor
    uint64_t relation_rows_checked = 0;
};

// The symbol map phi(<a,b>) = (1+ab)(1+ba)^{-1} lands in [R*, R*]; its
// kernel is K_2.  Generator images are solved from the coordinates of every
// symbol and cross-checked on all r1 and soc rows plus sampled r2/r4 rows.
inline K2Result k2_structure(const GroupAlgebra& A, const SymbolIndex& S,
                             const D1Structure& d1, const UnitGroup& U,
                             uint64_t relation_samples = 1000000,
                             uint32_t seed = 1) {
    Subgroup W = commutator_subgroup(U);
    ElementaryCoords E = ElementaryCoords::build(U, W);
    const size_t k = d1.group.factors.size();
    const uint32_t r = uint32_t(E.basis.size());
    if (k + r > 30) throw std::logic_error("solver width exceeded");

    std::vector<uint32_t> phi_bits(S.count());
    for (uint32_t i = 0; i < S.count(); ++i) {
        auto [a, b] = S.pairs[i];
        elem th = phi_symbol(A, a, b);
        uint16_t idx = U.index_of[th];
        if (idx == 0xffff || E.mask_of[idx] == ~0u)
            throw std::runtime_error("φ ill-defined");
        phi_bits[i] = E.mask_of[idx];
    }

    K2Result out;

    // phi must kill every relation row (mod 2 on coefficients)
    auto row_bits = [&](const FormalSum& row) {
        uint32_t x = 0;
        for (auto [id, c] : row.terms)
            if (c & 1) x ^= phi_bits[id];
        return x;
    };
    for (elem a = 0; a < A.card; ++a)
        for (elem b = a; b < A.card; ++b) {
            int32_t i = S.id(a, b);
            if (i < 0) continue;
            if (phi_bits[i] != phi_bits[S.require(b, a)])
                throw std::runtime_error("φ ill-defined");
            ++out.relation_rows_checked;
        }
    for (elem s : socle_commutator_elements(A))
        for (elem x = 0; x < A.card; ++x)
            for (auto [a, b] : {std::pair<elem, elem>{s, x}, {x, s}}) {
                int32_t i = S.id(a, b);
                if (i < 0) continue;
                if (phi_bits[i] != 0) throw std::runtime_error("φ ill-defined");
                ++out.relation_rows_checked;
            }
    std::mt19937 gen(seed);
    std::uniform_int_distribution<uint32_t> pick(0, A.card - 1);
    for (int kind = 0; kind < 2; ++kind) {
        uint64_t done = 0;
        while (done < relation_samples / 2) {
            RelationInstance inst;
            inst.kind = kind == 0 ? RelKind::r2 : RelKind::r4;
            inst.par = {pick(gen), pick(gen), pick(gen)};
            auto row = relation_row(A, S, inst);
            if (!row) continue;
            if (row_bits(*row) != 0) throw std::runtime_error("φ ill-defined");
            ++done;
            ++out.relation_rows_checked;
        }
    }

    // solve the generator images over F_2: coords(s) mod 2 combine to
    // phi_bits(s) for every symbol; the coordinate rows span F_2^k
    std::vector<uint64_t> pivot(k, 0);  // bit j < k: coefficient, k+j: image
    const uint64_t coef_mask = (uint64_t(1) << k) - 1;
    // reduce at the lowest set coefficient bit until it lacks a pivot
    auto reduce_row = [&](uint64_t row) {
        while (row & coef_mask) {
            size_t j = size_t(std::countr_zero(row & coef_mask));
            if (!pivot[j]) break;
            row ^= pivot[j];
        }
        return row;
    };
    for (uint32_t i = 0; i < S.count(); ++i) {
        uint64_t row = 0;
        for (size_t j = 0; j < k; ++j)
            if (d1.coords[size_t(i) * k + j] & 1) row |= uint64_t(1) << j;
        row |= uint64_t(phi_bits[i]) << k;
        row = reduce_row(row);
        if ((row & coef_mask) == 0) {
            if (row != 0) throw std::runtime_error("φ ill-defined");
            continue;
        }
        pivot[size_t(std::countr_zero(row & coef_mask))] = row;
    }
    for (size_t j = 0; j < k; ++j)
        if (!pivot[j]) throw std::logic_error("generator images underdetermined");
    // back-substitute so each pivot row touches a single coefficient bit
    for (size_t j = k; j-- > 0;)
        for (size_t i = 0; i < j; ++i)
            if (pivot[i] >> j & 1) pivot[i] ^= pivot[j];

    AbelianGroup B;
    B.factors.assign(r, 2);
    std::vector<std::vector<long long>> images;
    for (size_t j = 0; j < k; ++j) {
        uint32_t mask = uint32_t(pivot[j] >> k);
        out.generator_images.push_back(mask);
        std::vector<long long> im(r, 0);
        for (uint32_t t = 0; t < r; ++t) im[t] = mask >> t & 1;
        images.push_back(std::move(im));
    }
    out.group = kernel_of_map(d1.group, images, B);
    return out;
}

// ---------------------------------------------------------------------------
// Steinberg symbols.

// {u, v} as a Dennis-Stein symbol: <u, u^{-1}(v - 1)>; 1 + u u^{-1}(v-1) = v
// is a unit, so the pair is always valid.
inline FormalSum steinberg_symbol(const GroupAlgebra& A, const SymbolIndex& S,
                                  elem u, elem v) {
    if (!A.is_unit(u) || !A.is_unit(v))
        throw std::domain_error("steinberg symbol needs unit arguments");
    elem b = A.mul(A.inverse(u), v ^ 1u);
    return FormalSum::single(S.require(u, b));
}

// ---------------------------------------------------------------------------
// Induced maps and coinvariants.

// Table check for a unital ring map given as an encoding-indexed image table.
inline bool check_algebra_map(const GroupAlgebra& src, const GroupAlgebra& dst,
                              const std::vector<elem>& table) {
    if (table.size() != src.card || table[1] != 1) return false;
    for (elem x = 0; x < src.card; ++x)
        for (elem y = 0; y < src.card; ++y) {
            if (table[x ^ y] != (table[x] ^ table[y])) return false;
            if (table[src.mul(x, y)] != dst.mul(table[x], table[y])) return false;
        }
    return true;
}

inline FormalSum map_formal_sum(const SymbolIndex& S_src,
                                const SymbolIndex& S_dst,
                                const std::vector<elem>& table,
                                const FormalSum& fs) {
    FormalSum out;
    for (auto [id, c] : fs.terms) {
        auto [a, b] = S_src.pairs[id];
        out.add_term(S_dst.require(table[a], table[b]), c);
    }
    return out;
}

// Sampled check that mapped relation rows still evaluate to zero downstream.
inline uint64_t induced_map_check(const GroupAlgebra& A_src,
                                  const SymbolIndex& S_src,
                                  const SymbolIndex& S_dst,
                                  const std::vector<elem>& table,
                                  const D1Structure& d1_dst, uint64_t samples,
                                  uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<uint32_t> pick(0, A_src.card - 1);
    auto socs = socle_commutator_elements(A_src);
    std::uniform_int_distribution<int> kind(0, socs.empty() ? 2 : 3);
    uint64_t done = 0;
    while (done < samples) {
        RelationInstance inst;
        int w = kind(gen);
        inst.kind = w == 0   ? RelKind::r1
                    : w == 1 ? RelKind::r2
                    : w == 2 ? RelKind::r4
                             : RelKind::soc;
        inst.par = {pick(gen), pick(gen), pick(gen)};
        if (w == 3) inst.par[0] = socs[gen() % socs.size()];
        auto row = relation_row(A_src, S_src, inst);
        if (!row) continue;
        if (!evaluates_zero(d1_dst, map_formal_sum(S_src, S_dst, table, *row)))
            throw std::runtime_error("induced map breaks relations");
        ++done;
    }
    return done;
}

struct CoinvariantData {
    AbelianGroup quotient;
    std::vector<std::vector<long long>> differences;  // distinct, nonzero
    uint64_t subgroup_order = 0;
};

// Coinvariants of an algebra endomorphism acting symbol-wise: the quotient of
// d1 by the subgroup generated by coords(alpha(s)) - coords(s) over all
// symbols.
inline CoinvariantData coinvariants(const SymbolIndex& S, const D1Structure& d1,
                                    const std::vector<elem>& table) {
    size_t k = d1.group.factors.size();
    std::set<std::vector<long long>> diff_set;
    for (uint32_t i = 0; i < S.count(); ++i) {
        auto [a, b] = S.pairs[i];
        FormalSum d = FormalSum::single(S.require(table[a], table[b]));
        d.add_term(i, -1);
        auto v = evaluate(d1, d);
        if (std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; }))
            diff_set.insert(v);
    }
    CoinvariantData out;
    out.differences.assign(diff_set.begin(), diff_set.end());

    std::set<std::vector<long long>> span;
    span.insert(std::vector<long long>(k, 0));
    std::vector<std::vector<long long>> queue(span.begin(), span.end());
    for (size_t head = 0; head < queue.size(); ++head)
        for (const auto& g : out.differences) {
            std::vector<long long> n(k);
            for (size_t j = 0; j < k; ++j)
                n[j] = (queue[head][j] + g[j]) % d1.group.factors[j];
            if (span.insert(n).second) queue.push_back(n);
        }
    out.subgroup_order = span.size();
    out.quotient = quotient_by(d1.group, out.differences);
    return out;
}

// ---------------------------------------------------------------------------
// Derived-identity checks against the computed structure.

// Additivity in the second argument with its product correction is a theorem
// for pairwise-commuting entries, the scope in which the derived rule is
// stated; noncommuting instances are not consequences and generically fail.
inline uint64_t ds2_theorem_check(const GroupAlgebra& A, const SymbolIndex& S,
                                  const D1Structure& d1, uint64_t samples,
                                  uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<uint32_t> pick(0, A.card - 1);
    uint64_t done = 0;
    while (done < samples) {
        elem r = pick(gen), s = pick(gen), t = pick(gen);
        if (A.mul(r, s) != A.mul(s, r) || A.mul(r, t) != A.mul(t, r) ||
            A.mul(s, t) != A.mul(t, s))
            continue;
        RelationInstance inst{RelKind::ds2, {r, s, t}};
        auto row = relation_row(A, S, inst);
        if (!row) continue;
        if (!evaluates_zero(d1, *row))
            throw std::runtime_error("ds2 additivity fails");
        ++done;
    }
    return done;
}

}  // namespace k2forge
