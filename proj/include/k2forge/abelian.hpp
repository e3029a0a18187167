#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace k2forge {

// Finite or finitely generated abelian group by invariant factors d1 | d2 | ...
// Factors of 1 are suppressed and 0 denotes a free Z summand (0 sorts last).
struct AbelianGroup {
    std::vector<long long> factors;

    bool operator==(const AbelianGroup&) const = default;

    static AbelianGroup trivial() { return {}; }
    static AbelianGroup cyclic(long long n) {
        if (n == 1) return {};
        return {{n}};
    }

    bool is_finite() const {
        return std::find(factors.begin(), factors.end(), 0ll) == factors.end();
    }

    long long order() const {
        if (!is_finite()) throw std::domain_error("infinite group");
        long long n = 1;
        for (long long d : factors) n *= d;
        return n;
    }

    std::string to_string() const {
        if (factors.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) s += " x ";
            s += factors[i] == 0 ? "Z" : "Z" + std::to_string(factors[i]);
        }
        return s;
    }
};

namespace detail {

inline std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> f;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) n /= p, ++e;
            f.push_back({p, e});
        }
    if (n > 1) f.push_back({n, 1});
    return f;
}

}  // namespace detail

// Rebuild the canonical divisibility chain from an arbitrary multiset of
// cyclic orders (0 = Z): split into prime powers, then realign.
inline AbelianGroup canonical_abelian(std::vector<long long> orders) {
    int free_rank = 0;
    std::map<long long, std::vector<int>> exps;  // prime -> exponents, desc
    for (long long n : orders) {
        if (n < 0) throw std::invalid_argument("negative order");
        if (n == 0) {
            ++free_rank;
            continue;
        }
        for (auto [p, e] : detail::factorize(n)) exps[p].push_back(e);
    }
    size_t chain_len = 0;
    for (auto& [p, v] : exps) {
        std::sort(v.begin(), v.end(), std::greater<int>());
        chain_len = std::max(chain_len, v.size());
    }
    AbelianGroup A;
    // position 0 = largest factor; emit in increasing order afterwards
    std::vector<long long> chain(chain_len, 1);
    for (auto& [p, v] : exps)
        for (size_t i = 0; i < v.size(); ++i) {
            long long pw = 1;
            for (int k = 0; k < v[i]; ++k) pw *= p;
            chain[i] *= pw;
        }
    std::reverse(chain.begin(), chain.end());
    for (long long d : chain)
        if (d > 1) A.factors.push_back(d);
    for (int i = 0; i < free_rank; ++i) A.factors.push_back(0);
    return A;
}

inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<long long> orders = a.factors;
    orders.insert(orders.end(), b.factors.begin(), b.factors.end());
    return canonical_abelian(std::move(orders));
}

// ---------------------------------------------------------------------------
// Dense exact Smith normal form (cokernel convention: Z^cols / row space).

namespace detail {

struct Int64Overflow : std::runtime_error {
    Int64Overflow() : std::runtime_error("int64 overflow in smith reduction") {}
};

template <typename T>
T checked_mul(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, long long>) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw Int64Overflow();
        return r;
    } else {
        return a * b;
    }
}

template <typename T>
T checked_sub(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, long long>) {
        long long r;
        if (__builtin_sub_overflow(a, b, &r)) throw Int64Overflow();
        return r;
    } else {
        return a - b;
    }
}

template <typename T>
T t_abs(const T& a) {
    if constexpr (std::is_same_v<T, long long>) {
        if (a == std::numeric_limits<long long>::min()) throw Int64Overflow();
        return a < 0 ? -a : a;
    } else {
        return a < 0 ? T(-a) : a;
    }
}

template <typename T>
std::vector<T> finish_diagonal(std::vector<std::vector<T>>& M, size_t t);

// Diagonalize M (rows x cols) by row and column operations; row operations are
// mirrored on *left if given. Returns the diagonal, padded with zeros.
template <typename T>
std::vector<T> smith_diagonalize(std::vector<std::vector<T>>& M,
                                 std::vector<std::vector<T>>* left) {
    size_t nr = M.size();
    size_t nc = nr ? M[0].size() : 0;
    auto row_sub = [&](size_t dst, size_t src, const T& q) {
        for (size_t j = 0; j < nc; ++j)
            M[dst][j] = checked_sub(M[dst][j], checked_mul(q, M[src][j]));
        if (left)
            for (size_t j = 0; j < (*left)[dst].size(); ++j)
                (*left)[dst][j] =
                    checked_sub((*left)[dst][j], checked_mul(q, (*left)[src][j]));
    };
    auto col_sub = [&](size_t dst, size_t src, const T& q) {
        for (size_t i = 0; i < nr; ++i)
            M[i][dst] = checked_sub(M[i][dst], checked_mul(q, M[i][src]));
    };
    size_t t = 0;
    for (; t < nr && t < nc; ++t) {
        while (true) {
            // locate minimal nonzero |entry| in the trailing submatrix
            size_t bi = nr, bj = nc;
            for (size_t i = t; i < nr; ++i)
                for (size_t j = t; j < nc; ++j)
                    if (M[i][j] != 0 &&
                        (bi == nr || t_abs(M[i][j]) < t_abs(M[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == nr) return finish_diagonal(M, t);
            if (bi != t) {
                std::swap(M[bi], M[t]);
                if (left) std::swap((*left)[bi], (*left)[t]);
            }
            if (bj != t)
                for (size_t i = 0; i < nr; ++i) std::swap(M[i][bj], M[i][t]);
            bool clean = true;
            for (size_t i = t + 1; i < nr; ++i)
                if (M[i][t] != 0) {
                    row_sub(i, t, M[i][t] / M[t][t]);
                    if (M[i][t] != 0) clean = false;
                }
            for (size_t j = t + 1; j < nc; ++j)
                if (M[t][j] != 0) {
                    col_sub(j, t, M[t][j] / M[t][t]);
                    if (M[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            // enforce divisibility of the remaining block by the pivot
            bool fixed = false;
            for (size_t i = t + 1; i < nr && !fixed; ++i)
                for (size_t j = t + 1; j < nc && !fixed; ++j)
                    if (M[i][j] % M[t][t] != 0) {
                        row_sub(t, i, T(-1));  // add row i to row t
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (M[t][t] < 0) {
            for (size_t j = 0; j < nc; ++j) M[t][j] = checked_sub(T(0), M[t][j]);
            if (left)
                for (auto& v : (*left)[t]) v = checked_sub(T(0), v);
        }
    }
    return finish_diagonal(M, t);
}

template <typename T>
std::vector<T> finish_diagonal(std::vector<std::vector<T>>& M, size_t t) {
    size_t nr = M.size(), nc = nr ? M[0].size() : 0;
    std::vector<T> d(std::min(nr, nc), T(0));
    for (size_t i = 0; i < t; ++i) d[i] = t_abs(M[i][i]);
    return d;
}

}  // namespace detail

struct SmithCokernel {
    AbelianGroup group;
    // coordinates of each ambient basis vector e_j in the invariant-factor
    // decomposition; entry i reduced mod group.factors[i] (free factors raw)
    std::vector<std::vector<long long>> coords;
};

// Cokernel Z^num_cols / <rows>, with coordinate maps. Internally diagonalizes
// the transpose so that left transforms act on the ambient Z^num_cols.
template <typename T>
SmithCokernel smith_cokernel_impl(const std::vector<std::vector<long long>>& rows,
                                  size_t num_cols) {
    std::vector<std::vector<T>> M(num_cols, std::vector<T>(rows.size(), T(0)));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < num_cols; ++c) M[c][r] = T(rows[r][c]);
    std::vector<std::vector<T>> U(num_cols, std::vector<T>(num_cols, T(0)));
    for (size_t i = 0; i < num_cols; ++i) U[i][i] = T(1);
    auto diag = detail::smith_diagonalize(M, &U);

    SmithCokernel out;
    std::vector<long long> moduli(num_cols, 0);
    for (size_t i = 0; i < diag.size(); ++i) {
        if constexpr (std::is_same_v<T, long long>)
            moduli[i] = diag[i];
        else {
            if (diag[i] > std::numeric_limits<long long>::max())
                throw std::overflow_error("invariant factor exceeds int64");
            moduli[i] = diag[i].template convert_to<long long>();
        }
    }
    std::vector<size_t> keep;  // positions with factor != 1
    for (size_t i = 0; i < num_cols; ++i)
        if (moduli[i] != 1) keep.push_back(i);
    // order: finite factors ascending (diagonal is already a divisibility
    // chain), then zeros; the chain property puts 1s first, so `keep` is
    // already ascending-with-zeros-last except zeros come after by position.
    for (size_t i : keep) out.group.factors.push_back(moduli[i]);
    out.coords.assign(num_cols, std::vector<long long>(keep.size(), 0));
    for (size_t j = 0; j < num_cols; ++j)
        for (size_t k = 0; k < keep.size(); ++k) {
            size_t i = keep[k];
            T v = U[i][j];
            if (moduli[i] > 0) {
                T m = T(moduli[i]);
                v %= m;
                if (v < 0) v += m;
            }
            if constexpr (std::is_same_v<T, long long>)
                out.coords[j][k] = v;
            else {
                if (v > std::numeric_limits<long long>::max() ||
                    v < std::numeric_limits<long long>::min())
                    throw std::overflow_error("coordinate exceeds int64");
                out.coords[j][k] = v.template convert_to<long long>();
            }
        }
    return out;
}

inline SmithCokernel smith_cokernel(const std::vector<std::vector<long long>>& rows,
                                    size_t num_cols) {
    try {
        return smith_cokernel_impl<long long>(rows, num_cols);
    } catch (const detail::Int64Overflow&) {
        return smith_cokernel_impl<boost::multiprecision::cpp_int>(rows, num_cols);
    }
}

// Invariant factors of Z^num_cols / <rows> from dense rows.
inline AbelianGroup smith_invariants(const std::vector<std::vector<long long>>& rows,
                                     size_t num_cols) {
    return smith_cokernel(rows, num_cols).group;
}

// ---------------------------------------------------------------------------
// Streaming row reduction mod 2^e (Howell form) or mod an odd prime.

struct ModRow {
    std::vector<std::pair<uint32_t, uint32_t>> terms;  // sorted by column
    uint32_t lead_col() const { return terms.front().first; }
    uint32_t lead_coef() const { return terms.front().second; }
};

struct HowellBasis {
    uint32_t num_cols = 0;
    uint32_t modulus = 0;
    std::vector<ModRow> rows;             // pivot columns strictly increasing
    std::vector<int32_t> pivot_of_col;    // -1 where no pivot
};

class StreamingReducer {
  public:
    StreamingReducer(uint32_t num_cols, uint32_t modulus)
        : num_cols_(num_cols), m_(modulus), pow2_(std::has_single_bit(modulus)) {
        if (modulus < 2) throw std::invalid_argument("modulus too small");
        pivot_of_col_.assign(num_cols, -1);
        inv_table_.assign(m_, 0);
        for (uint32_t x = 1; x < m_; ++x) {
            if (pow2_ && (x & 1) == 0) continue;
            if (!pow2_ && !coprime(x)) continue;
            inv_table_[x] = mod_inverse(x);
        }
    }

    size_t rows_consumed() const { return consumed_; }
    size_t basis_size() const { return rows_.size(); }

    // Terms may repeat columns and carry arbitrary integer coefficients.
    void add(const std::vector<std::pair<uint32_t, long long>>& terms) {
        ++consumed_;
        scratch_.clear();
        for (auto [c, v] : terms) {
            uint32_t r = uint32_t(((v % (long long)m_) + (long long)m_) % (long long)m_);
            if (r) scratch_.push_back({c, r});
        }
        std::sort(scratch_.begin(), scratch_.end());
        merge_duplicates(scratch_, m_);
        insert(scratch_);
    }

    // Howell saturation plus full back-substitution; call once, then finish().
    void normalize() {
        if (pow2_) {
            // saturation: 2^(e-k) times a row with lead 2^k lands in the span
            // with the lead erased; sweep until no insert changes the basis
            while (true) {
                uint64_t ev = events_;
                size_t nrows = rows_.size();
                for (size_t i = 0; i < nrows; ++i) {
                    if (rows_[i].terms.empty()) continue;
                    uint32_t lead = rows_[i].lead_coef();
                    if (lead <= 1) continue;
                    uint32_t shift = m_ / lead;  // lead = 2^k, shift = 2^(e-k)
                    std::vector<std::pair<uint32_t, uint32_t>> shifted;
                    for (auto [c, v] : rows_[i].terms) {
                        uint64_t nv = (uint64_t(v) * shift) % m_;
                        if (nv) shifted.push_back({c, uint32_t(nv)});
                    }
                    insert(shifted);
                }
                if (events_ == ev && rows_.size() == nrows) break;
            }
        }
        back_substitute();
    }

    HowellBasis finish() {
        HowellBasis B;
        B.num_cols = num_cols_;
        B.modulus = m_;
        std::vector<size_t> order;
        for (size_t i = 0; i < rows_.size(); ++i)
            if (!rows_[i].terms.empty()) order.push_back(i);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return rows_[a].lead_col() < rows_[b].lead_col();
        });
        B.pivot_of_col.assign(num_cols_, -1);
        for (size_t i : order) {
            B.pivot_of_col[rows_[i].lead_col()] = int32_t(B.rows.size());
            B.rows.push_back(std::move(rows_[i]));
        }
        rows_.clear();
        pivot_of_col_.assign(num_cols_, -1);
        return B;
    }

    // All pivots present with unit leads: the map is onto mod m (prime case).
    bool full_column_rank() const {
        for (uint32_t c = 0; c < num_cols_; ++c) {
            int32_t p = pivot_of_col_[c];
            if (p < 0 || rows_[p].lead_coef() != 1) return false;
        }
        return true;
    }

  private:
    static void merge_duplicates(std::vector<std::pair<uint32_t, uint32_t>>& v,
                                 uint32_t m) {
        size_t w = 0;
        for (size_t i = 0; i < v.size();) {
            uint64_t sum = 0;
            size_t j = i;
            while (j < v.size() && v[j].first == v[i].first) sum += v[j++].second;
            uint32_t r = uint32_t(sum % m);
            if (r) v[w++] = {v[i].first, r};
            i = j;
        }
        v.resize(w);
    }

    bool coprime(uint32_t x) const { return std::gcd(x, m_) == 1; }

    uint32_t mod_inverse(uint32_t x) const {
        // small moduli: direct scan
        for (uint32_t y = 1; y < m_; ++y)
            if ((uint64_t(x) * y) % m_ == 1) return y;
        throw std::logic_error("no inverse");
    }

    // valuation used for pivot strength: 2-adic for 2^e, 0/unit for primes
    uint32_t strength(uint32_t x) const {
        return pow2_ ? uint32_t(std::countr_zero(x)) : 0;
    }

    // scale row so the lead coefficient is exactly 2^k (or 1 mod p)
    void normalize_lead(std::vector<std::pair<uint32_t, uint32_t>>& row) const {
        uint32_t lead = row.front().second;
        uint32_t odd = pow2_ ? (lead >> strength(lead)) : lead;
        uint32_t inv = inv_table_[odd % m_];
        if (inv == 1) return;
        for (auto& [c, v] : row) {
            uint64_t nv = (uint64_t(v) * inv) % m_;
            v = uint32_t(nv);
        }
    }

    // dst -= q * src, both sorted; result in dst (via merge buffer)
    void axpy(std::vector<std::pair<uint32_t, uint32_t>>& dst,
              const std::vector<std::pair<uint32_t, uint32_t>>& src, uint32_t q) {
        merge_.clear();
        size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                merge_.push_back(dst[i++]);
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                uint64_t sub = (uint64_t(q) * src[j].second) % m_;
                uint32_t nv = uint32_t((m_ - sub) % m_);
                if (nv) merge_.push_back({src[j].first, nv});
                ++j;
            } else {
                uint64_t sub = (uint64_t(q) * src[j].second) % m_;
                uint32_t nv = uint32_t((dst[i].second + m_ - uint32_t(sub)) % m_);
                if (nv) merge_.push_back({dst[i].first, nv});
                ++i;
                ++j;
            }
        }
        dst.swap(merge_);
    }

    void insert(std::vector<std::pair<uint32_t, uint32_t>>& row) {
        while (!row.empty()) {
            uint32_t c = row.front().first;
            int32_t p = pivot_of_col_[c];
            if (p < 0) {
                normalize_lead(row);
                pivot_of_col_[c] = int32_t(rows_.size());
                rows_.push_back({row});
                return;
            }
            uint32_t x = row.front().second;
            uint32_t plead = rows_[p].lead_coef();
            uint32_t pk = strength(plead);
            if (strength(x) >= pk) {
                uint32_t q = pow2_ ? (x >> pk)
                                   : uint32_t((uint64_t(x) * inv_table_[plead]) % m_);
                axpy(row, rows_[p].terms, q);
            } else {
                // incoming row has the stronger pivot: swap roles
                normalize_lead(row);
                rows_[p].terms.swap(row);
                ++events_;
            }
        }
    }

    // Reduce every entry lying under another row's pivot column modulo that
    // pivot's power; process rows by descending lead so referenced pivot rows
    // are already canonical.
    void back_substitute() {
        std::vector<size_t> order;
        for (size_t i = 0; i < rows_.size(); ++i)
            if (!rows_[i].terms.empty()) order.push_back(i);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return rows_[a].lead_col() > rows_[b].lead_col();
        });
        for (size_t idx : order) {
            auto& terms = rows_[idx].terms;
            size_t i = 1;
            while (i < terms.size()) {
                uint32_t c = terms[i].first;
                int32_t p = pivot_of_col_[c];
                if (p < 0 || size_t(p) == idx) {
                    ++i;
                    continue;
                }
                uint32_t plead = rows_[p].lead_coef();
                uint32_t pk = strength(plead);
                uint32_t q = pow2_ ? (terms[i].second >> pk)
                                   : uint32_t((uint64_t(terms[i].second) *
                                               inv_table_[plead]) %
                                              m_);
                if (q == 0) {
                    ++i;
                    continue;
                }
                uint32_t col_before = c;
                axpy(terms, rows_[p].terms, q);
                // restart scan at the same column position
                i = size_t(std::lower_bound(terms.begin(), terms.end(),
                                            std::make_pair(col_before, 0u)) -
                           terms.begin());
                if (i < terms.size() && terms[i].first == col_before) ++i;
            }
        }
    }

    uint32_t num_cols_;
    uint32_t m_;
    bool pow2_;
    size_t consumed_ = 0;
    uint64_t events_ = 0;
    std::vector<ModRow> rows_;
    std::vector<int32_t> pivot_of_col_;
    std::vector<uint32_t> inv_table_;
    std::vector<std::pair<uint32_t, uint32_t>> scratch_;
    std::vector<std::pair<uint32_t, uint32_t>> merge_;
};

// ---------------------------------------------------------------------------
// Cokernel of a mod-2^e basis: Z^n / (row space + 2^e Z^n), exact.

struct ModularCokernel {
    AbelianGroup group;
    std::vector<std::vector<long long>> col_coords;  // per ambient column
    bool capped = false;  // some factor equals the working modulus
};

inline ModularCokernel modular_cokernel(const HowellBasis& B) {
    if (!std::has_single_bit(B.modulus))
        throw std::invalid_argument("cokernel needs a 2-power modulus");
    // columns whose pivot is a unit are eliminated: e_c = -tail; the rest
    // (non-unit pivots and pivot-free columns) form the core presentation
    std::vector<uint32_t> core_cols;
    std::vector<int64_t> core_index(B.num_cols, -1);
    for (uint32_t c = 0; c < B.num_cols; ++c) {
        int32_t p = B.pivot_of_col[c];
        if (p < 0 || B.rows[p].lead_coef() != 1) {
            core_index[c] = int64_t(core_cols.size());
            core_cols.push_back(c);
        }
    }
    std::vector<std::vector<long long>> rel;
    for (const auto& row : B.rows) {
        if (row.lead_coef() == 1) continue;
        std::vector<long long> r(core_cols.size(), 0);
        for (auto [c, v] : row.terms) {
            if (core_index[c] < 0)
                throw std::logic_error("basis not back-substituted");
            r[size_t(core_index[c])] = (long long)(v);
        }
        rel.push_back(std::move(r));
    }
    for (size_t i = 0; i < core_cols.size(); ++i) {
        std::vector<long long> r(core_cols.size(), 0);
        r[i] = (long long)(B.modulus);
        rel.push_back(std::move(r));
    }
    auto smith = smith_cokernel(rel, core_cols.size());

    ModularCokernel out;
    out.group = smith.group;
    for (long long d : out.group.factors)
        if (d == (long long)(B.modulus)) out.capped = true;
    size_t nf = out.group.factors.size();
    out.col_coords.assign(B.num_cols, std::vector<long long>(nf, 0));
    for (size_t k = 0; k < core_cols.size(); ++k)
        out.col_coords[core_cols[k]] = smith.coords[k];
    auto reduce_mod = [&](long long v, long long d) {
        if (d == 0) return v;
        v %= d;
        if (v < 0) v += d;
        return v;
    };
    for (uint32_t c = 0; c < B.num_cols; ++c) {
        int32_t p = B.pivot_of_col[c];
        if (p < 0 || B.rows[p].lead_coef() != 1) continue;
        std::vector<long long> acc(nf, 0);
        const auto& terms = B.rows[p].terms;
        for (size_t i = 1; i < terms.size(); ++i) {
            auto [tc, tv] = terms[i];
            if (core_index[tc] < 0)
                throw std::logic_error("unit-pivot tail not on core columns");
            const auto& cc = out.col_coords[tc];
            for (size_t k = 0; k < nf; ++k)
                acc[k] = reduce_mod(acc[k] - (long long)(tv)*cc[k],
                                    out.group.factors[k]);
        }
        out.col_coords[c] = std::move(acc);
    }
    return out;
}

inline AbelianGroup cokernel(const HowellBasis& B) { return modular_cokernel(B).group; }

// ---------------------------------------------------------------------------
// Tensor, Tor, homology, the case table, kernels and quotients.

inline AbelianGroup tensor(const AbelianGroup& A, const AbelianGroup& B) {
    std::vector<long long> orders;
    for (long long a : A.factors)
        for (long long b : B.factors) orders.push_back(std::gcd(a, b));
    return canonical_abelian(std::move(orders));
}

inline AbelianGroup tor(const AbelianGroup& A, const AbelianGroup& B) {
    std::vector<long long> orders;
    for (long long a : A.factors)
        for (long long b : B.factors)
            if (a != 0 && b != 0) orders.push_back(std::gcd(a, b));
    return canonical_abelian(std::move(orders));
}

// H_n(A; Z) for finite A: H_*(Z_m) has Z, 0, Z_m alternating, and products
// recurse through the full Kunneth formula including Tor.
inline AbelianGroup homology(const AbelianGroup& A, int n) {
    if (!A.is_finite()) throw std::domain_error("homology needs a finite group");
    if (n < 0) return AbelianGroup::trivial();
    if (n == 0) return AbelianGroup::cyclic(0);  // Z
    if (A.factors.empty()) return AbelianGroup::trivial();
    if (A.factors.size() == 1)
        return n % 2 == 1 ? AbelianGroup::cyclic(A.factors[0]) : AbelianGroup::trivial();
    AbelianGroup head = AbelianGroup::cyclic(A.factors.back());
    AbelianGroup rest{{A.factors.begin(), A.factors.end() - 1}};
    AbelianGroup out;
    for (int p = 0; p <= n; ++p) {
        out = direct_sum(out, tensor(homology(head, p), homology(rest, n - p)));
        if (p <= n - 1)
            out = direct_sum(out, tor(homology(head, p), homology(rest, n - 1 - p)));
    }
    return out;
}

// All abelian groups of 2-power order up to `max_order` with exponent <= 4.
inline std::vector<AbelianGroup> small_2groups_exponent4(long long max_order) {
    std::vector<AbelianGroup> out;
    for (int n4 = 0; (1ll << (2 * n4)) <= max_order; ++n4)
        for (int n2 = 0; (1ll << (2 * n4 + n2)) <= max_order; ++n2) {
            std::vector<long long> f;
            for (int i = 0; i < n2; ++i) f.push_back(2);
            for (int i = 0; i < n4; ++i) f.push_back(4);
            out.push_back(AbelianGroup{f});
        }
    return out;
}

namespace detail {

// Enumerate A's elements as coordinate tuples; A finite and small.
inline std::vector<std::vector<long long>> all_elements(const AbelianGroup& A) {
    long long n = A.order();
    if (n > (1 << 22)) throw std::domain_error("group too large to enumerate");
    std::vector<std::vector<long long>> els;
    els.reserve(size_t(n));
    std::vector<long long> cur(A.factors.size(), 0);
    while (true) {
        els.push_back(cur);
        size_t i = 0;
        while (i < cur.size() && ++cur[i] == A.factors[i]) cur[i++] = 0;
        if (i == cur.size()) break;
    }
    if ((long long)els.size() != n) throw std::logic_error("enumeration mismatch");
    return els;
}

// Structure of a finite subgroup given its element tuples inside ⊕ Z_{d_i},
// via p-power layer counting.
inline AbelianGroup structure_from_elements(
    const std::vector<std::vector<long long>>& els,
    const std::vector<long long>& moduli) {
    if (els.empty()) throw std::invalid_argument("empty subgroup");
    long long n = (long long)els.size();
    std::vector<long long> orders;
    for (auto [p, e_tot] : factorize(n)) {
        (void)e_tot;
        // layer i: elements killed by p^i
        std::vector<int> layer_log;
        long long pi = 1;
        while (true) {
            size_t cnt = 0;
            for (const auto& x : els) {
                bool zero = true;
                for (size_t k = 0; k < x.size() && zero; ++k)
                    zero = (x[k] * pi) % moduli[k] == 0;
                cnt += zero;
            }
            int lg = 0;
            long long pw = 1;
            while (pw < (long long)cnt) pw *= p, ++lg;
            if (pw != (long long)cnt)
                throw std::logic_error("subgroup layer not a p-power");
            layer_log.push_back(lg);
            if ((long long)cnt == n || pi > n) break;
            pi *= p;
        }
        for (size_t i = 1; i < layer_log.size(); ++i) {
            int ge = layer_log[i] - layer_log[i - 1];
            int next = i + 1 < layer_log.size() ? layer_log[i + 1] - layer_log[i] : 0;
            long long pw = 1;
            for (size_t k = 0; k < i; ++k) pw *= p;
            for (int c = 0; c < ge - next; ++c) orders.push_back(pw);
        }
    }
    return canonical_abelian(std::move(orders));
}

}  // namespace detail

// Kernel of the homomorphism A -> B sending generator i of A to images[i]
// (coordinates in B). Verifies the map respects A's relations.
inline AbelianGroup kernel_of_map(const AbelianGroup& A,
                                  const std::vector<std::vector<long long>>& images,
                                  const AbelianGroup& B) {
    if (images.size() != A.factors.size())
        throw std::invalid_argument("one image per generator required");
    for (size_t i = 0; i < images.size(); ++i) {
        if (images[i].size() != B.factors.size())
            throw std::invalid_argument("image coordinate size mismatch");
        for (size_t k = 0; k < B.factors.size(); ++k)
            if (B.factors[k] != 0 &&
                (A.factors[i] * images[i][k]) % B.factors[k] != 0)
                throw std::domain_error("map does not respect relations");
    }
    auto els = detail::all_elements(A);
    std::vector<std::vector<long long>> kernel_els;
    for (const auto& x : els) {
        bool zero = true;
        for (size_t k = 0; k < B.factors.size() && zero; ++k) {
            long long s = 0;
            for (size_t i = 0; i < x.size(); ++i) s += x[i] * images[i][k];
            zero = B.factors[k] == 0 ? s == 0 : s % B.factors[k] == 0;
        }
        if (zero) kernel_els.push_back(x);
    }
    if (kernel_els.size() <= 1) return AbelianGroup::trivial();
    return detail::structure_from_elements(kernel_els, A.factors);
}

// Quotient of A by the subgroup generated by the given elements.
inline AbelianGroup quotient_by(const AbelianGroup& A,
                                const std::vector<std::vector<long long>>& gens) {
    std::vector<std::vector<long long>> rows;
    for (size_t i = 0; i < A.factors.size(); ++i) {
        std::vector<long long> r(A.factors.size(), 0);
        r[i] = A.factors[i];
        rows.push_back(std::move(r));
    }
    for (const auto& g : gens) {
        if (g.size() != A.factors.size())
            throw std::invalid_argument("generator coordinate size mismatch");
        rows.push_back(g);
    }
    return smith_invariants(rows, A.factors.size());
}

// The extension case analysis: for each kernel K in {0, Z_2, Z_2^2}, the
// abelian candidates D of exponent <= 4 containing a copy of K with quotient
// Z_2^3, and H_2 of each candidate.
struct ExtensionCase {
    AbelianGroup kernel;
    AbelianGroup middle;
    AbelianGroup h2;
};

inline std::vector<ExtensionCase> case_table() {
    const AbelianGroup target{{2, 2, 2}};
    std::vector<AbelianGroup> kernels = {AbelianGroup::trivial(), {{2}}, {{2, 2}}};
    std::vector<ExtensionCase> out;
    for (const auto& K : kernels) {
        long long want = 8 * K.order();
        for (const auto& D : small_2groups_exponent4(want)) {
            if (D.order() != want) continue;
            // search a subgroup S of D with S = K and D/S = Z_2^3; kernels
            // here need at most two generators
            auto els = detail::all_elements(D);
            bool found = false;
            for (size_t ia = 0; ia < els.size() && !found; ++ia)
                for (size_t ib = ia; ib < els.size() && !found; ++ib) {
                    // subgroup generated by els[ia], els[ib]
                    std::vector<std::vector<long long>> sub;
                    std::map<std::vector<long long>, bool> seen;
                    std::vector<std::vector<long long>> frontier = {
                        std::vector<long long>(D.factors.size(), 0)};
                    seen[frontier[0]] = true;
                    auto add_el = [&](std::vector<long long> v) {
                        if (!seen.count(v)) {
                            seen[v] = true;
                            frontier.push_back(std::move(v));
                        }
                    };
                    for (size_t h = 0; h < frontier.size(); ++h) {
                        for (const auto* g : {&els[ia], &els[ib]}) {
                            auto v = frontier[h];
                            for (size_t k = 0; k < v.size(); ++k)
                                v[k] = (v[k] + (*g)[k]) % D.factors[k];
                            add_el(std::move(v));
                        }
                    }
                    for (auto& kv : seen) sub.push_back(kv.first);
                    AbelianGroup S =
                        sub.size() == 1
                            ? AbelianGroup::trivial()
                            : detail::structure_from_elements(sub, D.factors);
                    if (!(S == K)) continue;
                    if (quotient_by(D, {els[ia], els[ib]}) == target) found = true;
                }
            if (found) out.push_back({K, D, homology(D, 2)});
        }
    }
    return out;
}

}  // namespace k2forge
