#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "k2forge/group.hpp"

namespace k2forge {

// Element of F_2[G]: bit i is the coefficient of canonical basis element i.
// Addition is xor. All rings here have dim <= 8, so encodings fit a byte,
// but a wider type keeps arithmetic free of promotion surprises.
using elem = uint32_t;

struct Ideal {
    elem generator = 0;
    std::vector<elem> elements;          // sorted additive span
    std::vector<uint8_t> member;         // membership table over the whole ring
    bool contains(elem x) const { return member[x] != 0; }
    size_t size() const { return elements.size(); }
};

struct GroupAlgebra {
    FiniteGroup group;
    int dim = 0;
    size_t card = 0;                     // 2^dim encodings
    std::vector<elem> table;             // card*card product table
    std::vector<elem> inv_table;         // 0 where no inverse exists
    std::vector<uint8_t> unit_mask;

    static GroupAlgebra build(const FiniteGroup& g) {
        GroupAlgebra A;
        A.group = g;
        A.dim = g.order;
        if (A.dim > 16) throw std::invalid_argument("group too large for dense tables");
        A.card = size_t(1) << A.dim;
        A.build_product_table();
        A.build_unit_tables();
        return A;
    }

    elem mul(elem x, elem y) const { return table[size_t(x) * card + y]; }
    static elem add(elem x, elem y) { return x ^ y; }
    elem one() const { return 1; }

    int augmentation(elem x) const { return std::popcount(x) & 1; }

    bool is_unit(elem x) const { return unit_mask[x] != 0; }

    elem inverse(elem x) const {
        if (!unit_mask[x]) throw std::domain_error("not a unit");
        return inv_table[x];
    }

    elem pow(elem x, unsigned n) const {
        elem r = 1;
        for (unsigned i = 0; i < n; ++i) r = mul(r, x);
        return r;
    }

    int unit_order(elem x) const {
        if (!is_unit(x)) throw std::domain_error("not a unit");
        elem y = x;
        int n = 1;
        while (y != 1) {
            y = mul(y, x);
            ++n;
        }
        return n;
    }

    // Local iff the non-units form a two-sided ideal.
    bool is_local() const {
        for (elem x = 0; x < card; ++x) {
            if (is_unit(x)) continue;
            for (elem y = 0; y < card; ++y) {
                if (!is_unit(y) && is_unit(x ^ y)) return false;
                if (is_unit(mul(x, y)) || is_unit(mul(y, x))) return false;
            }
        }
        return true;
    }

    // Additive span of all two-sided multiples a*g*b.
    Ideal ideal_of(elem g) const {
        std::array<elem, 16> pivot{};
        auto insert = [&](elem v) {
            while (v) {
                int h = std::bit_width(v) - 1;
                if (!pivot[h]) {
                    pivot[h] = v;
                    return;
                }
                v ^= pivot[h];
            }
        };
        for (elem a = 0; a < card; ++a) {
            elem ag = mul(a, g);
            for (elem b = 0; b < card; ++b) insert(mul(ag, b));
        }
        std::vector<elem> basis;
        for (elem p : pivot)
            if (p) basis.push_back(p);
        Ideal I;
        I.generator = g;
        I.member.assign(card, 0);
        size_t span = size_t(1) << basis.size();
        I.elements.reserve(span);
        for (size_t mask = 0; mask < span; ++mask) {
            elem v = 0;
            for (size_t i = 0; i < basis.size(); ++i)
                if (mask >> i & 1) v ^= basis[i];
            I.member[v] = 1;
            I.elements.push_back(v);
        }
        std::sort(I.elements.begin(), I.elements.end());
        return I;
    }

    // Commuting with every basis element suffices by bilinearity.
    std::vector<elem> center() const {
        std::vector<elem> c;
        for (elem x = 0; x < card; ++x) {
            bool central = true;
            for (int g = 0; g < dim && central; ++g)
                central = mul(x, elem(1) << g) == mul(elem(1) << g, x);
            if (central) c.push_back(x);
        }
        return c;
    }

    size_t unit_count() const {
        size_t n = 0;
        for (elem x = 0; x < card; ++x) n += unit_mask[x];
        return n;
    }

  private:
    void build_product_table() {
        const int n = dim;
        // basis_row[g][y] = encoding of (basis g) * y
        std::vector<std::vector<elem>> basis_row(n, std::vector<elem>(card, 0));
        for (int g = 0; g < n; ++g)
            for (elem y = 0; y < card; ++y) {
                elem r = 0;
                for (int h = 0; h < n; ++h)
                    if (y >> h & 1) r ^= elem(1) << group.mul(uint8_t(g), uint8_t(h));
                basis_row[g][y] = r;
            }
        table.assign(card * card, 0);
        for (elem x = 0; x < card; ++x) {
            elem* row = &table[size_t(x) * card];
            for (int g = 0; g < n; ++g)
                if (x >> g & 1) {
                    const elem* br = basis_row[g].data();
                    for (elem y = 0; y < card; ++y) row[y] ^= br[y];
                }
        }
    }

    // Units found by exhaustive two-sided inverse search, not by the
    // augmentation criterion; the criterion is verified externally.
    void build_unit_tables() {
        unit_mask.assign(card, 0);
        inv_table.assign(card, 0);
        for (elem x = 0; x < card; ++x)
            for (elem y = 0; y < card; ++y)
                if (mul(x, y) == 1 && mul(y, x) == 1) {
                    unit_mask[x] = 1;
                    inv_table[x] = y;
                    break;
                }
    }
};

// Ring map induced by a group homomorphism, extended linearly; coincident
// images cancel in characteristic 2.
inline std::vector<elem> algebra_hom_from_group_hom(const GroupAlgebra& src,
                                                    const GroupHom& h) {
    std::vector<elem> image(src.card, 0);
    for (elem x = 0; x < src.card; ++x) {
        elem r = 0;
        for (int g = 0; g < src.dim; ++g)
            if (x >> g & 1) r ^= elem(1) << h.image[g];
        image[x] = r;
    }
    return image;
}

// The quotient F_2[D_4] -> F_2[Z_2+Z_2] killing s^2-1, as (target algebra, map).
struct QuotientHom {
    GroupAlgebra target;
    std::vector<elem> image;
};

inline QuotientHom quotient_algebra_hom(const GroupAlgebra& R) {
    if (R.group.name != "D4") throw std::invalid_argument("quotient defined over D4");
    QuotientHom q;
    q.target = GroupAlgebra::build(build_klein());
    q.image = algebra_hom_from_group_hom(R, quotient_hom_d4_to_klein());
    return q;
}

// Text form: '+'-separated basis labels, e.g. "1+s+t"; "0" is the zero element.
inline elem parse_element(const GroupAlgebra& A, std::string_view text) {
    elem r = 0;
    size_t pos = 0;
    bool any = false;
    while (pos <= text.size()) {
        size_t next = text.find('+', pos);
        if (next == std::string_view::npos) next = text.size();
        std::string_view tok = text.substr(pos, next - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (!tok.empty()) {
            any = true;
            if (tok == "0") {
                // zero contributes nothing
            } else {
                bool found = false;
                for (int g = 0; g < A.dim; ++g)
                    if (tok == A.group.labels[g]) {
                        r ^= elem(1) << g;
                        found = true;
                        break;
                    }
                if (!found)
                    throw std::invalid_argument("unknown basis label: " + std::string(tok));
            }
        }
        if (next == text.size()) break;
        pos = next + 1;
    }
    if (!any) throw std::invalid_argument("empty element text");
    return r;
}

inline std::string format_element(const GroupAlgebra& A, elem x) {
    if (x == 0) return "0";
    std::string s;
    for (int g = 0; g < A.dim; ++g)
        if (x >> g & 1) {
            if (!s.empty()) s += '+';
            s += A.group.labels[g];
        }
    return s;
}

}  // namespace k2forge
