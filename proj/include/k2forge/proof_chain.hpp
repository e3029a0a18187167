#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "dennis_stein.hpp"

namespace k2forge {

// Plain-text symbol-rewriting chains, one step per line:
//     <formal-sum> => <formal-sum> ; <kind>(<elem>, <elem>[, <elem>])
// A formal sum is "0" or +/- separated terms [k]<a,b>; elements use the
// basis-label grammar of parse_element.  A file opens with "ring <name>",
// groups steps under "chain <name>" headers, and '#' starts a comment.
// Within a chain each step's left side must equal the previous right side,
// and the step difference must be an integer multiple of the cited
// relation row.  ds2 citations are admitted but counted separately; the
// streamed presentation never contains them.

struct ProofStep {
    FormalSum before;
    FormalSum after;
    RelKind kind = RelKind::r1;
    std::vector<elem> params;
    int line = 0;  // 1-based line in the source text

    bool operator==(const ProofStep&) const = default;
};

struct ProofChain {
    std::string name;
    std::vector<ProofStep> steps;

    bool operator==(const ProofChain&) const = default;
};

struct ReplayReport {
    bool passed = true;
    int failed_step = -1;  // index into chain.steps
    std::string message;
    uint64_t steps_checked = 0;
    uint64_t ds2_steps = 0;  // derived-rule citations, flagged
};

namespace detail {

inline void strip_ws(std::string_view& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
}

[[noreturn]] inline void chain_error(int line, const std::string& why) {
    throw std::invalid_argument("chain text line " + std::to_string(line) +
                                ": " + why);
}

inline uint32_t parse_symbol(const GroupAlgebra& A, const SymbolIndex& S,
                             std::string_view text, int line) {
    size_t comma = text.find(',');
    if (comma == std::string_view::npos)
        chain_error(line, "symbol needs two comma-separated elements");
    std::string_view at = text.substr(0, comma), bt = text.substr(comma + 1);
    strip_ws(at);
    strip_ws(bt);
    elem a = parse_element(A, at), b = parse_element(A, bt);
    int32_t id = S.id(a, b);
    if (id < 0) chain_error(line, "pair is not a symbol, 1+ab is no unit");
    return uint32_t(id);
}

inline FormalSum parse_formal_sum(const GroupAlgebra& A, const SymbolIndex& S,
                                  std::string_view text, int line) {
    strip_ws(text);
    if (text == "0") return {};
    FormalSum fs;
    size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos >= text.size()) break;
        long long sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            chain_error(line, "terms must be joined by + or -");
        }
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        long long coeff = 1;
        if (pos < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = 0;
            while (pos < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[pos])))
                coeff = coeff * 10 + (text[pos++] - '0');
        }
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos >= text.size() || text[pos] != '<')
            chain_error(line, "expected <a,b> term");
        size_t close = text.find('>', pos);
        if (close == std::string_view::npos)
            chain_error(line, "unterminated symbol");
        fs.add_term(parse_symbol(A, S, text.substr(pos + 1, close - pos - 1), line),
                    sign * coeff);
        pos = close + 1;
        first = false;
    }
    return fs;
}

inline RelKind parse_kind(std::string_view name, int line) {
    if (name == "r1") return RelKind::r1;
    if (name == "r2") return RelKind::r2;
    if (name == "r4") return RelKind::r4;
    if (name == "soc") return RelKind::soc;
    if (name == "ds2") return RelKind::ds2;
    chain_error(line, "unknown relation kind");
}

inline size_t kind_arity(RelKind k) {
    return k == RelKind::r1 || k == RelKind::soc ? 2 : 3;
}

inline const char* kind_name(RelKind k) {
    switch (k) {
        case RelKind::r1: return "r1";
        case RelKind::r2: return "r2";
        case RelKind::r4: return "r4";
        case RelKind::soc: return "soc";
        case RelKind::ds2: return "ds2";
    }
    return "?";
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace detail

inline std::vector<ProofChain> parse_chains(const GroupAlgebra& A,
                                            const SymbolIndex& S,
                                            std::string_view text) {
    std::vector<ProofChain> chains;
    bool ring_seen = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view sv = raw;
        if (size_t hash = sv.find('#'); hash != std::string_view::npos)
            sv = sv.substr(0, hash);
        detail::strip_ws(sv);
        if (sv.empty()) continue;
        if (sv.starts_with("ring ")) {
            std::string_view name = sv.substr(5);
            detail::strip_ws(name);
            if (detail::lower(name) != detail::lower(A.group.name))
                detail::chain_error(line, "ring header does not match algebra");
            ring_seen = true;
            continue;
        }
        if (sv.starts_with("chain ")) {
            std::string_view name = sv.substr(6);
            detail::strip_ws(name);
            if (name.empty()) detail::chain_error(line, "empty chain name");
            chains.push_back({std::string(name), {}});
            continue;
        }
        if (!ring_seen) detail::chain_error(line, "ring header must come first");
        if (chains.empty())
            detail::chain_error(line, "step outside any chain header");
        size_t arrow = sv.find("=>");
        size_t semi = sv.find(';');
        if (arrow == std::string_view::npos || semi == std::string_view::npos ||
            semi < arrow)
            detail::chain_error(line, "step needs => and ; parts");
        ProofStep st;
        st.line = line;
        st.before = detail::parse_formal_sum(A, S, sv.substr(0, arrow), line);
        st.after = detail::parse_formal_sum(
            A, S, sv.substr(arrow + 2, semi - arrow - 2), line);
        std::string_view just = sv.substr(semi + 1);
        detail::strip_ws(just);
        size_t open = just.find('(');
        if (open == std::string_view::npos || just.back() != ')')
            detail::chain_error(line, "justification needs kind(params)");
        std::string_view kname = just.substr(0, open);
        detail::strip_ws(kname);
        st.kind = detail::parse_kind(kname, line);
        std::string_view plist = just.substr(open + 1, just.size() - open - 2);
        size_t pos = 0;
        while (pos <= plist.size()) {
            size_t comma = plist.find(',', pos);
            if (comma == std::string_view::npos) comma = plist.size();
            std::string_view tok = plist.substr(pos, comma - pos);
            detail::strip_ws(tok);
            if (tok.empty()) detail::chain_error(line, "empty parameter");
            st.params.push_back(parse_element(A, tok));
            if (comma == plist.size()) break;
            pos = comma + 1;
        }
        if (st.params.size() != detail::kind_arity(st.kind))
            detail::chain_error(line, "wrong parameter count for kind");
        chains.back().steps.push_back(std::move(st));
    }
    return chains;
}

inline std::string format_symbol(const GroupAlgebra& A, const SymbolIndex& S,
                                 uint32_t id) {
    auto [a, b] = S.pairs[id];
    return "<" + format_element(A, a) + "," + format_element(A, b) + ">";
}

inline std::string format_formal_sum(const GroupAlgebra& A,
                                     const SymbolIndex& S,
                                     const FormalSum& fs) {
    if (fs.empty()) return "0";
    std::string out;
    for (auto [id, c] : fs.terms) {
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        long long k = c < 0 ? -c : c;
        if (k != 1) out += std::to_string(k);
        out += format_symbol(A, S, id);
    }
    return out;
}

inline std::string format_chains(const GroupAlgebra& A, const SymbolIndex& S,
                                 const std::vector<ProofChain>& chains) {
    std::string out = "ring " + detail::lower(A.group.name) + "\n";
    for (const ProofChain& ch : chains) {
        out += "\nchain " + ch.name + "\n";
        for (const ProofStep& st : ch.steps) {
            out += format_formal_sum(A, S, st.before) + " => " +
                   format_formal_sum(A, S, st.after) + " ; " +
                   detail::kind_name(st.kind) + "(";
            for (size_t j = 0; j < st.params.size(); ++j) {
                if (j) out += ", ";
                out += format_element(A, st.params[j]);
            }
            out += ")\n";
        }
    }
    return out;
}

// Validates one chain against the bare presentation, no d1 needed.  Each
// step must continue the previous right side, its cited instance must meet
// the side conditions, and before - after must equal an integer multiple of
// the cited row (zero for restatements).
inline ReplayReport replay_chain(const GroupAlgebra& A, const SymbolIndex& S,
                                 const ProofChain& chain) {
    ReplayReport rep;
    auto fail = [&](size_t idx, const char* why) {
        rep.passed = false;
        rep.failed_step = int(idx);
        rep.message = why;
        return rep;
    };
    for (size_t i = 0; i < chain.steps.size(); ++i) {
        const ProofStep& st = chain.steps[i];
        ++rep.steps_checked;
        if (i && st.before != chain.steps[i - 1].after)
            return fail(i, "left side does not continue the previous step");
        if (st.kind == RelKind::ds2) ++rep.ds2_steps;
        RelationInstance inst;
        inst.kind = st.kind;
        for (size_t j = 0; j < st.params.size(); ++j) inst.par[j] = st.params[j];
        auto row = relation_row(A, S, inst);
        if (!row) return fail(i, "cited instance fails its side conditions");
        FormalSum diff = fs_sub(st.before, st.after);
        auto [id0, c0] = row->terms.front();
        long long d0 = 0;
        for (auto [id, c] : diff.terms)
            if (id == id0) {
                d0 = c;
                break;
            }
        if (d0 % c0 != 0 || diff != fs_scale(*row, d0 / c0))
            return fail(i, "difference is not a multiple of the cited row");
    }
    return rep;
}

}  // namespace k2forge
