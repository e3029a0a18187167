#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "proof_chain.hpp"

namespace k2forge {

// Builders for the symbol-rewriting chain corpus.  Structured chains cite
// one relation instance per step and are replay-verified as they are
// produced.  Where a reduction needs a relation that is a consequence of
// the presentation rather than a single row, a certificate solver
// expresses the remaining formal sum as an exact Z-combination of rows
// drawn from a parameter pool and appends one step per row.

namespace detail {

inline long long checked_mul(long long a, long long b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN)
        throw std::overflow_error("certificate coefficient overflow");
    return static_cast<long long>(p);
}

// Appends steps to a chain, tracking the running formal sum; every step
// is after = before - k * row for the cited instance's row.
struct ChainBuilder {
    const GroupAlgebra& A;
    const SymbolIndex& S;
    ProofChain chain;
    FormalSum cur;

    ChainBuilder(const GroupAlgebra& A_, const SymbolIndex& S_,
                 std::string name, FormalSum start)
        : A(A_), S(S_), cur(std::move(start)) {
        chain.name = std::move(name);
    }

    void step(RelKind kind, std::array<elem, 3> par, long long k) {
        RelationInstance inst{kind, par};
        auto row = relation_row(A, S, inst);
        if (!row)
            throw std::logic_error("chain step cites an invalid instance in " +
                                   chain.name);
        ProofStep st;
        st.before = cur;
        st.after = fs_sub(cur, fs_scale(*row, k));
        st.kind = kind;
        st.params.assign(par.begin(),
                         par.begin() + (kind == RelKind::r1 ||
                                        kind == RelKind::soc ? 2 : 3));
        cur = st.after;
        chain.steps.push_back(std::move(st));
    }

    ProofChain finish(const FormalSum& expect_end) {
        if (!(cur == expect_end))
            throw std::logic_error("chain " + chain.name +
                                   " did not reach its endpoint");
        ReplayReport rep = replay_chain(A, S, chain);
        if (!rep.passed)
            throw std::logic_error("generated chain " + chain.name +
                                   " fails replay: " + rep.message);
        return std::move(chain);
    }
};

}  // namespace detail

// Exact integer echelon over the free module on symbols, built from
// relation rows whose symbols stay inside a parameter pool.  Membership
// queries return the combination over the stored instances.
struct CertificateSolver {
    const GroupAlgebra& A;
    const SymbolIndex& S;
    std::vector<RelationInstance> insts;
    std::vector<FormalSum> rows;

    struct EchRow {
        FormalSum row;
        std::vector<std::pair<size_t, long long>> prov;  // pool index -> k
    };
    std::vector<EchRow> ech;
    std::unordered_map<uint32_t, size_t> pivot_of;
    // short pool combinations that sum to zero, kept for combination cleanup
    std::vector<std::vector<std::pair<size_t, long long>>> nulls;
    std::unordered_map<uint32_t, std::vector<size_t>> rows_by_symbol;

    CertificateSolver(const GroupAlgebra& A_, const SymbolIndex& S_,
                      std::vector<elem> params)
        : A(A_), S(S_) {
        std::sort(params.begin(), params.end());
        params.erase(std::unique(params.begin(), params.end()), params.end());
        std::unordered_set<uint32_t> universe;
        for (elem a : params)
            for (elem b : params)
                if (S.valid(a, b)) universe.insert(S.require(a, b));
        auto inside = [&](const FormalSum& r) {
            for (auto& [id, c] : r.terms)
                if (!universe.count(id)) return false;
            return true;
        };
        std::unordered_set<std::string> seen;
        auto offer = [&](RelKind kind, std::array<elem, 3> par) {
            RelationInstance inst{kind, par};
            auto row = relation_row(A, S, inst);
            if (!row || row->empty() || !inside(*row)) return;
            std::string key;
            for (auto& [id, c] : row->terms) {
                key += std::to_string(id);
                key += ':';
                key += std::to_string(c);
                key += ';';
            }
            if (!seen.insert(key).second) return;
            insts.push_back(inst);
            rows.push_back(std::move(*row));
        };
        for (elem a : params)
            for (elem b : params) offer(RelKind::r1, {a, b, 0});
        for (elem s : socle_commutator_elements(A))
            for (elem b : params) {
                offer(RelKind::soc, {s, b, 0});
                offer(RelKind::soc, {b, s, 0});
            }
        for (elem a : params)
            for (elem c : params)
                for (elem b : params) {
                    offer(RelKind::r2, {a, c, b});
                    offer(RelKind::r4, {a, c, b});
                    offer(RelKind::ds2, {a, c, b});
                }
        for (size_t i = 0; i < rows.size(); ++i) insert(i);
        for (size_t i = 0; i < rows.size(); ++i)
            for (auto& [id, c] : rows[i].terms) rows_by_symbol[id].push_back(i);
    }

    // Inserts pool row i, keeping each pivot's leading entry equal to the
    // gcd of all leading entries the span produces there.
    void insert(size_t i) {
        FormalSum r = rows[i];
        std::vector<std::pair<size_t, long long>> prov{{i, 1}};
        while (!r.empty()) {
            uint32_t p = r.terms.front().first;
            long long c = r.terms.front().second;
            auto it = pivot_of.find(p);
            if (it == pivot_of.end()) {
                if (c < 0) {
                    r = fs_scale(r, -1);
                    scale_prov(prov, -1);
                }
                pivot_of.emplace(p, ech.size());
                ech.push_back({std::move(r), std::move(prov)});
                return;
            }
            EchRow& e = ech[it->second];
            long long ec = e.row.terms.front().second;
            if (c % ec == 0) {
                long long k = c / ec;
                r = fs_sub(r, fs_scale(e.row, k));
                axpy_prov(prov, e.prov, -k);
                continue;
            }
            // extended gcd: replace the echelon row by the gcd combination
            long long x = 1, y = 0, x1 = 0, y1 = 1, a = ec, b = c;
            while (b) {
                long long q = a / b;
                std::tie(a, b) = std::make_pair(b, a - q * b);
                std::tie(x, x1) = std::make_pair(x1, x - q * x1);
                std::tie(y, y1) = std::make_pair(y1, y - q * y1);
            }
            FormalSum g = fs_add(fs_scale(e.row, x), fs_scale(r, y));
            std::vector<std::pair<size_t, long long>> gprov;
            axpy_prov(gprov, e.prov, x);
            axpy_prov(gprov, prov, y);
            FormalSum rest = fs_sub(fs_scale(r, ec / a), fs_scale(e.row, c / a));
            std::vector<std::pair<size_t, long long>> rprov;
            axpy_prov(rprov, prov, ec / a);
            axpy_prov(rprov, e.prov, -(c / a));
            e.row = std::move(g);
            e.prov = std::move(gprov);
            r = std::move(rest);
            prov = std::move(rprov);
        }
        // the row was dependent, so prov is a pool combination summing to zero
        long long maxc = 0;
        for (auto& [idx, k] : prov) maxc = std::max(maxc, std::llabs(k));
        if (!prov.empty() && prov.size() <= 8 && maxc <= 8 && nulls.size() < 20000)
            nulls.push_back(std::move(prov));
    }

    static void scale_prov(std::vector<std::pair<size_t, long long>>& v,
                           long long k) {
        for (auto& [i, c] : v) c = detail::checked_mul(c, k);
    }

    static void axpy_prov(std::vector<std::pair<size_t, long long>>& dst,
                          const std::vector<std::pair<size_t, long long>>& src,
                          long long k) {
        if (k == 0) return;
        std::unordered_map<size_t, long long> acc;
        for (auto& [i, c] : dst) acc[i] = c;
        for (auto& [i, c] : src) acc[i] += detail::checked_mul(c, k);
        dst.clear();
        for (auto& [i, c] : acc)
            if (c) dst.push_back({i, c});
        std::sort(dst.begin(), dst.end());
    }

    // Shrinks a combination by shifting it along stored zero-combinations;
    // each shift leaves the represented sum unchanged.
    void shorten(std::vector<std::pair<size_t, long long>>& prov) const {
        std::unordered_map<size_t, long long> k;
        for (auto& [i, c] : prov) k[i] = c;
        bool changed = true;
        for (int pass = 0; pass < 40 && changed; ++pass) {
            changed = false;
            for (auto& v : nulls) {
                long long best_t = 0, best_delta = 0;
                for (auto& [i, c] : v) {
                    auto it = k.find(i);
                    if (it == k.end()) continue;
                    long long q = it->second / c;
                    for (long long t : {q - 1, q, q + 1}) {
                        if (!t) continue;
                        long long delta = 0;
                        for (auto& [j, d] : v) {
                            auto jt = k.find(j);
                            long long cur = jt == k.end() ? 0 : jt->second;
                            delta += std::llabs(cur - detail::checked_mul(t, d)) -
                                     std::llabs(cur);
                        }
                        if (delta < best_delta) {
                            best_delta = delta;
                            best_t = t;
                        }
                    }
                }
                if (best_t) {
                    for (auto& [i, c] : v)
                        k[i] -= detail::checked_mul(best_t, c);
                    changed = true;
                }
            }
        }
        prov.clear();
        for (auto& [i, c] : k)
            if (c) prov.push_back({i, c});
        std::sort(prov.begin(), prov.end());
    }

    static std::string fs_key(const FormalSum& f) {
        std::string key;
        for (auto& [id, c] : f.terms) {
            key += std::to_string(id);
            key += ':';
            key += std::to_string(c);
            key += ';';
        }
        return key;
    }

    static long long fs_l1(const FormalSum& f) {
        long long s = 0;
        for (auto& [id, c] : f.terms) s += std::llabs(c);
        return s;
    }

    // Beam search for an ordered derivation of target as a short sequence of
    // small row multiples; every intermediate difference stays small, so the
    // emitted chain steps stay readable.  Returns steps in emission order.
    std::optional<std::vector<std::pair<size_t, long long>>> short_path(
        const FormalSum& target, size_t width = 3000,
        int max_depth = 18) const {
        if (target.empty()) return std::vector<std::pair<size_t, long long>>{};
        struct Node {
            FormalSum d;
            std::vector<std::pair<size_t, long long>> path;
        };
        std::vector<Node> beam{{target, {}}};
        std::unordered_set<std::string> seen{fs_key(target)};
        for (int depth = 0; depth < max_depth; ++depth) {
            std::vector<Node> next;
            for (const Node& n : beam) {
                size_t nsyms = std::min<size_t>(n.d.terms.size(), 4);
                for (size_t si = 0; si < nsyms; ++si) {
                    uint32_t sym = n.d.terms[si].first;
                    auto it = rows_by_symbol.find(sym);
                    if (it == rows_by_symbol.end()) continue;
                    for (size_t ri : it->second)
                        for (long long k : {1, -1}) {
                            FormalSum d2 = fs_sub(n.d, fs_scale(rows[ri], k));
                            if (d2.empty()) {
                                auto path = n.path;
                                path.push_back({ri, k});
                                return path;
                            }
                            if (d2.terms.size() > 9 || fs_l1(d2) > 26) continue;
                            if (!seen.insert(fs_key(d2)).second) continue;
                            Node m{std::move(d2), n.path};
                            m.path.push_back({ri, k});
                            next.push_back(std::move(m));
                        }
                }
            }
            if (next.empty()) break;
            if (next.size() > width) {
                std::nth_element(
                    next.begin(), next.begin() + width, next.end(),
                    [](const Node& a, const Node& b) {
                        long long la = fs_l1(a.d), lb = fs_l1(b.d);
                        if (la != lb) return la < lb;
                        return a.d.terms.size() < b.d.terms.size();
                    });
                next.resize(width);
            }
            beam = std::move(next);
        }
        return std::nullopt;
    }

    // Z-combination of pool rows summing exactly to target, if the echelon
    // proves membership; the result is verified before being returned.
    std::optional<std::vector<std::pair<size_t, long long>>> combination(
        const FormalSum& target) const {
        FormalSum t = target;
        std::vector<std::pair<size_t, long long>> prov;
        while (!t.empty()) {
            uint32_t p = t.terms.front().first;
            long long c = t.terms.front().second;
            auto it = pivot_of.find(p);
            if (it == pivot_of.end()) return std::nullopt;
            const EchRow& e = ech[it->second];
            long long ec = e.row.terms.front().second;
            if (c % ec != 0) return std::nullopt;
            long long k = c / ec;
            t = fs_sub(t, fs_scale(e.row, k));
            axpy_prov(prov, e.prov, k);
        }
        shorten(prov);
        FormalSum check;
        for (auto& [i, k] : prov) check = fs_add(check, fs_scale(rows[i], k));
        if (!(check == target)) return std::nullopt;
        return prov;
    }
};

namespace detail {

// Appends certificate steps reducing builder.cur by exactly `target`.
// Prefers a short ordered derivation; falls back to the echelon combination.
inline void apply_certificate(ChainBuilder& b, const CertificateSolver& solver,
                              const FormalSum& target) {
    auto combo = solver.short_path(target);
    if (!combo) combo = solver.combination(target);
    if (!combo)
        throw std::logic_error("no certificate for the remainder in " +
                               b.chain.name);
    FormalSum check;
    for (auto& [idx, k] : *combo)
        check = fs_add(check, fs_scale(solver.rows[idx], k));
    if (!(check == target))
        throw std::logic_error("certificate mismatch in " + b.chain.name);
    for (auto& [idx, k] : *combo)
        b.step(solver.insts[idx].kind, solver.insts[idx].par, k);
}

inline void require_ring(const GroupAlgebra& A, const char* name) {
    if (A.group.name != name)
        throw std::invalid_argument(std::string("chain family needs the ") +
                                    name + " group algebra");
}

}  // namespace detail

// Socle pairing family: every symbol with both entries in the square-zero
// ideal (sigma^2-1)R rewrites to 0.  The generic chain splits the pair
// through (sigma-1) on both sides, merges the two equal tails, and kills
// the doubled remainder case by case.
inline std::vector<ProofChain> lemma1_chains(const GroupAlgebra& A,
                                             const SymbolIndex& S) {
    detail::require_ring(A, "D4");
    const elem c2 = 5, s1 = 3;
    std::vector<elem> ideal;
    for (elem x = 0; x < A.card; ++x) ideal.push_back(A.mul(c2, x));
    std::sort(ideal.begin(), ideal.end());
    ideal.erase(std::unique(ideal.begin(), ideal.end()), ideal.end());

    auto transversal = [&](elem i) {
        for (elem x = 0; x < A.card; ++x)
            if (A.mul(c2, x) == i) return x;
        throw std::logic_error("element outside the ideal");
    };

    std::vector<ProofChain> out;
    for (elem i : ideal)
        for (elem j : ideal) {
            std::string name =
                "lemma1-" + std::to_string(i) + "-" + std::to_string(j);
            detail::ChainBuilder b(A, S, name,
                                   FormalSum::single(S.require(i, j)));
            if (i == 0) {
                b.step(RelKind::r2, {0, j, 0}, -1);
                out.push_back(b.finish({}));
                continue;
            }
            if (j == 0) {
                b.step(RelKind::r2, {i, 0, 0}, 1);
                b.step(RelKind::r2, {0, 0, 0}, -2);
                out.push_back(b.finish({}));
                continue;
            }
            elem B = transversal(j);
            elem b3 = A.mul(s1, B);
            elem z = A.mul(b3, i);
            if (A.mul(B, A.mul(i, s1)) != z)
                throw std::logic_error("tail mismatch in " + name);
            b.step(RelKind::r2, {i, s1, b3}, 1);
            b.step(RelKind::r2, {A.mul(i, s1), s1, B}, 1);
            b.step(RelKind::r2, {0, B, 0}, -1);
            // cur == 2<z, s1> with z in {0, 15, 240, 255}
            if (z == 0) {
                b.step(RelKind::r2, {0, s1, 0}, -2);
                out.push_back(b.finish({}));
                continue;
            }
            b.step(RelKind::r1, {z, s1, 0}, 2);
            std::vector<elem> parts;
            if (z == 255) {
                b.step(RelKind::ds2, {s1, 15, 240}, 2);
                parts = {15, 240};
            } else {
                parts = {z};
            }
            for (elem zp : parts) b.step(RelKind::ds2, {s1, zp, zp}, -1);
            long long m = static_cast<long long>(parts.size());
            b.step(RelKind::r2, {s1, 0, 0}, -m);
            b.step(RelKind::r2, {0, 0, 0}, 2 * m);
            out.push_back(b.finish({}));
        }
    return out;
}

// Reduction of the sixteen pairing generators <(s2-1)(s-1)^i(t-1)^j,
// (s-1)^i'(t-1)^j'>: every generator other than <5,17> and <15,17>
// rewrites to 0 or to <15,17>.
inline std::vector<ProofChain> reduction16_chains(
    const GroupAlgebra& A, const SymbolIndex& S,
    const CertificateSolver& solver) {
    detail::require_ring(A, "D4");
    std::vector<ProofChain> out;
    auto start = [&](elem f, elem g) {
        return detail::ChainBuilder(
            A, S, "reduce-" + std::to_string(f) + "-" + std::to_string(g),
            FormalSum::single(S.require(f, g)));
    };

    for (elem f : {5, 15, 85, 255}) {
        auto b = start(elem(f), 1);
        b.step(RelKind::r2, {elem(f), 1, 1}, -1);
        out.push_back(b.finish({}));
    }
    for (elem g : {3, 17, 51}) {
        auto b = start(255, g);
        b.step(RelKind::soc, {255, g, 0}, 1);
        out.push_back(b.finish({}));
    }
    {
        auto b = start(15, 51);
        b.step(RelKind::r2, {15, 3, 17}, 1);
        b.step(RelKind::r2, {0, 17, 0}, -1);
        b.step(RelKind::soc, {255, 3, 0}, 1);
        out.push_back(b.finish({}));
    }
    {
        auto b = start(85, 51);
        b.step(RelKind::r2, {85, 3, 17}, 1);
        b.step(RelKind::r2, {0, 3, 0}, -1);
        b.step(RelKind::soc, {255, 17, 0}, 1);
        out.push_back(b.finish({}));
    }
    for (auto [f, g] :
         {std::pair<elem, elem>{5, 51}, {5, 3}, {15, 3}, {85, 17}}) {
        auto b = start(f, g);
        detail::apply_certificate(b, solver, b.cur);
        out.push_back(b.finish({}));
    }
    {
        auto b = start(85, 3);
        FormalSum end = FormalSum::single(S.require(15, 17));
        detail::apply_certificate(b, solver, fs_sub(b.cur, end));
        out.push_back(b.finish(end));
    }
    return out;
}

// <x, 1+x> = <x, x> for the three order-4 units x = s+t, s+st, t+st.
inline std::vector<ProofChain> diagonal_chains(const GroupAlgebra& A,
                                               const SymbolIndex& S,
                                               const CertificateSolver& solver) {
    detail::require_ring(A, "D4");
    std::vector<ProofChain> out;
    for (elem x : {18, 34, 48}) {
        elem x2 = A.mul(x, x);
        elem x3 = A.mul(x, x2);
        detail::ChainBuilder b(A, S, "diagonal-" + std::to_string(x),
                               FormalSum::single(S.require(x, 1 ^ x)));
        b.step(RelKind::ds2, {x, elem(1 ^ x), x2}, 1);
        if (x3 != 0)
            b.step(RelKind::ds2, {x, elem(1 ^ x ^ x2), x3}, -1);
        b.step(RelKind::ds2, {x, 1, x}, -1);
        b.step(RelKind::r2, {x, 1, 1}, -1);
        FormalSum end = FormalSum::single(S.require(x, x));
        detail::apply_certificate(b, solver, fs_sub(b.cur, end));
        out.push_back(b.finish(end));
    }
    return out;
}

// The conjugation identity: <s1,(s1)t> + <s1,t(s1)> collapses through an
// r4 instance whose unit 1+ba is central, and the remainder certifies
// down to the surviving generator <15,17>.  The companion chain carries
// <5,17> to <15,17> through the same instance.
inline std::vector<ProofChain> conjugation_chains(
    const GroupAlgebra& A, const SymbolIndex& S,
    const CertificateSolver& solver) {
    detail::require_ring(A, "D4");
    std::vector<ProofChain> out;
    FormalSum p = FormalSum::single(S.require(15, 17));
    {
        FormalSum sum = fs_add(FormalSum::single(S.require(3, 48)),
                               FormalSum::single(S.require(3, 144)));
        detail::ChainBuilder b(A, S, "conj-sum", sum);
        b.step(RelKind::r4, {3, 48, 144}, 1);
        detail::apply_certificate(b, solver, fs_sub(b.cur, p));
        out.push_back(b.finish(p));
    }
    {
        detail::ChainBuilder b(A, S, "q-to-p",
                               FormalSum::single(S.require(5, 17)));
        b.step(RelKind::ds2, {5, 16, 81}, -1);
        b.step(RelKind::r1, {5, 16, 0}, 1);
        b.step(RelKind::r2, {16, 3, 3}, -1);
        b.step(RelKind::r1, {144, 3, 0}, -1);
        b.step(RelKind::r1, {48, 3, 0}, -1);
        b.step(RelKind::r4, {3, 48, 144}, 1);
        detail::apply_certificate(b, solver, fs_sub(b.cur, p));
        out.push_back(b.finish(p));
    }
    return out;
}

// Quotient images of the diagonal classes inside F_2[Z_2 x Z_2]: all
// three vanish.
inline std::vector<ProofChain> quotient_image_chains(
    const GroupAlgebra& A, const SymbolIndex& S,
    const CertificateSolver& solver) {
    detail::require_ring(A, "V4");
    std::vector<ProofChain> out;
    {
        detail::ChainBuilder b(A, S, "image-s+st",
                               FormalSum::single(S.require(10, 10)));
        b.step(RelKind::r2, {10, 2, 5}, 1);
        b.step(RelKind::r2, {0, 2, 0}, -1);
        b.step(RelKind::ds2, {5, 4, 4}, -1);
        b.step(RelKind::ds2, {5, 4, 1}, 1);
        b.step(RelKind::ds2, {5, 4, 1}, 1);
        b.step(RelKind::r2, {5, 1, 1}, 2);
        b.step(RelKind::r2, {5, 0, 0}, 2);
        b.step(RelKind::r2, {0, 0, 0}, -4);
        out.push_back(b.finish({}));
    }
    {
        detail::ChainBuilder b(A, S, "image-t+st",
                               FormalSum::single(S.require(12, 12)));
        b.step(RelKind::r2, {12, 4, 3}, 1);
        b.step(RelKind::r2, {0, 4, 0}, -1);
        b.step(RelKind::ds2, {3, 2, 2}, -1);
        b.step(RelKind::ds2, {3, 2, 1}, 1);
        b.step(RelKind::ds2, {3, 2, 1}, 1);
        b.step(RelKind::r2, {3, 1, 1}, 2);
        b.step(RelKind::r2, {3, 0, 0}, 2);
        b.step(RelKind::r2, {0, 0, 0}, -4);
        out.push_back(b.finish({}));
    }
    {
        detail::ChainBuilder b(A, S, "image-s+t",
                               FormalSum::single(S.require(6, 6)));
        b.step(RelKind::ds2, {6, 4, 4}, -1);
        b.step(RelKind::ds2, {6, 4, 2}, 1);
        b.step(RelKind::r2, {6, 0, 0}, 1);
        b.step(RelKind::r2, {0, 0, 0}, -2);
        detail::apply_certificate(b, solver, b.cur);
        out.push_back(b.finish({}));
    }
    return out;
}

// Sampled absorption identities <a,b> + <a,u^-1 i> = <a,b+i> with
// u = 1+ab and i in the square-zero ideal; each is one ds2 citation.
inline std::vector<ProofChain> absorption_chains(const GroupAlgebra& A,
                                                 const SymbolIndex& S,
                                                 int samples, uint64_t seed) {
    detail::require_ring(A, "D4");
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<uint32_t> pick(0, uint32_t(A.card - 1));
    std::vector<ProofChain> out;
    std::unordered_set<uint64_t> used;
    while (static_cast<int>(out.size()) < samples) {
        elem a = pick(gen), bb = pick(gen), i = A.mul(5, pick(gen));
        if (i == 0 || !S.valid(a, bb)) continue;
        uint64_t key = (uint64_t(a) << 20) | (uint64_t(bb) << 10) | i;
        if (!used.insert(key).second) continue;
        elem u = 1 ^ A.mul(a, bb);
        elem t = A.mul(A.inverse(u), i);
        elem w = bb ^ t ^ A.mul(A.mul(a, bb), t);
        if (w != (bb ^ i))
            throw std::logic_error("absorption witness mismatch");
        detail::ChainBuilder b(A, S,
                               "absorb-" + std::to_string(a) + "-" +
                                   std::to_string(bb) + "-" + std::to_string(i),
                               fs_add(FormalSum::single(S.require(a, bb)),
                                      FormalSum::single(S.require(a, t))));
        b.step(RelKind::ds2, {a, bb, t}, 1);
        out.push_back(b.finish(FormalSum::single(S.require(a, w))));
    }
    return out;
}

// Default parameter pools for the certificate solver.
inline std::vector<elem> d4_certificate_params() {
    std::vector<elem> p{0,  1,   2,   3,   4,   5,   6,   8,   10,  12,  14,
                        15, 16,  17,  18,  19,  32,  34,  35,  48,  49,  51,
                        64, 80,  81,  85,  90,  95,  128, 144, 160, 161, 165,
                        170, 175, 237, 240, 243, 245, 250, 255};
    return p;
}

inline std::vector<elem> v4_certificate_params() {
    std::vector<elem> p;
    for (elem x = 0; x < 16; ++x) p.push_back(x);
    return p;
}

}  // namespace k2forge
