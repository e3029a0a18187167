#include <catch2/catch_amalgamated.hpp>

#include "k2forge/proof_chain.hpp"

using namespace k2forge;

namespace {

const GroupAlgebra& v4_algebra() {
    static GroupAlgebra A = GroupAlgebra::build(build_klein());
    return A;
}
const SymbolIndex& v4_symbols() {
    static SymbolIndex S = SymbolIndex::build(v4_algebra());
    return S;
}

ReplayReport replay_text(const std::string& text) {
    auto chains = parse_chains(v4_algebra(), v4_symbols(), text);
    REQUIRE(chains.size() == 1);
    return replay_chain(v4_algebra(), v4_symbols(), chains[0]);
}

}  // namespace

TEST_CASE("chain text parses into steps", "[chains]") {
    std::string text =
        "# leading comment\n"
        "ring v4\n"
        "\n"
        "chain demo\n"
        "<1+s,1+t> + <1+t,1+s> => 0 ; r1(1+s, 1+t)  # trailing note\n"
        "\n"
        "chain second\n"
        "2<1+s,1+s> => 0 ; r1(1+s, 1+s)\n";
    auto chains = parse_chains(v4_algebra(), v4_symbols(), text);
    REQUIRE(chains.size() == 2);
    CHECK(chains[0].name == "demo");
    CHECK(chains[1].name == "second");
    REQUIRE(chains[0].steps.size() == 1);
    const ProofStep& st = chains[0].steps[0];
    CHECK(st.line == 5);
    CHECK(st.kind == RelKind::r1);
    CHECK(st.params == std::vector<elem>{3, 5});
    CHECK(st.before.terms.size() == 2);
    CHECK(st.after.empty());
    CHECK(chains[1].steps[0].before ==
          FormalSum::single(v4_symbols().require(3, 3), 2));
}

TEST_CASE("format and parse round-trip", "[chains]") {
    std::string text =
        "ring v4\n"
        "chain demo\n"
        "<1+s,1+t> + <1+t,1+s> => 0 ; r1(1+s, 1+t)\n"
        "2<1+s,1+t> - <1+s,0> => 0 ; ds2(1+s, 1+t, 1+t)\n";
    auto chains = parse_chains(v4_algebra(), v4_symbols(), text);
    std::string formatted = format_chains(v4_algebra(), v4_symbols(), chains);
    auto reparsed = parse_chains(v4_algebra(), v4_symbols(), formatted);
    REQUIRE(reparsed.size() == chains.size());
    // line numbers differ between the two texts, compare the content
    for (size_t i = 0; i < chains.size(); ++i) {
        CHECK(reparsed[i].name == chains[i].name);
        REQUIRE(reparsed[i].steps.size() == chains[i].steps.size());
        for (size_t j = 0; j < chains[i].steps.size(); ++j) {
            const ProofStep &a = chains[i].steps[j], &b = reparsed[i].steps[j];
            CHECK(a.before == b.before);
            CHECK(a.after == b.after);
            CHECK(a.kind == b.kind);
            CHECK(a.params == b.params);
        }
    }
}

TEST_CASE("replay accepts honest steps", "[chains]") {
    ReplayReport rep = replay_text(
        "ring v4\n"
        "chain ok\n"
        "<0,0> => 0 ; r2(0, 0, 0)\n");
    CHECK(rep.passed);
    CHECK(rep.steps_checked == 1);
    CHECK(rep.ds2_steps == 0);

    // multi-step with continuity and an inferred coefficient
    rep = replay_text(
        "ring v4\n"
        "chain ok\n"
        "<1+s,1+t> + <1+t,1+s> + <0,0> => <0,0> ; r1(1+s, 1+t)\n"
        "<0,0> => 0 ; r2(0, 0, 0)\n");
    CHECK(rep.passed);
    CHECK(rep.steps_checked == 2);

    // restatement steps carry a valid citation and a zero multiple
    rep = replay_text(
        "ring v4\n"
        "chain ok\n"
        "<1+s,1+t> => <1+s,1+t> ; r1(1+s, 1+t)\n");
    CHECK(rep.passed);
}

TEST_CASE("replay flags ds2 citations", "[chains]") {
    ReplayReport rep = replay_text(
        "ring v4\n"
        "chain derived\n"
        "2<1+s,1+t> - <1+s,0> => 0 ; ds2(1+s, 1+t, 1+t)\n");
    CHECK(rep.passed);
    CHECK(rep.ds2_steps == 1);
}

TEST_CASE("replay reports the first failing step", "[chains]") {
    // broken continuity
    ReplayReport rep = replay_text(
        "ring v4\n"
        "chain bad\n"
        "<0,0> => 0 ; r2(0, 0, 0)\n"
        "<1+s,1+s> => <1+s,1+s> ; r1(1+s, 1+s)\n");
    CHECK_FALSE(rep.passed);
    CHECK(rep.failed_step == 1);
    CHECK(rep.message.find("continue") != std::string::npos);

    // cited instance invalid, 1+ab is not a unit for a = b = 1
    rep = replay_text(
        "ring v4\n"
        "chain bad\n"
        "0 => 0 ; r1(1, 1)\n");
    CHECK_FALSE(rep.passed);
    CHECK(rep.failed_step == 0);
    CHECK(rep.message.find("side conditions") != std::string::npos);

    // difference is not a multiple of the cited row
    rep = replay_text(
        "ring v4\n"
        "chain bad\n"
        "<1+s,1+t> => 0 ; r1(1+s, 1+t)\n");
    CHECK_FALSE(rep.passed);
    CHECK(rep.failed_step == 0);
    CHECK(rep.message.find("multiple") != std::string::npos);
}

TEST_CASE("chain grammar errors throw", "[chains]") {
    const auto& A = v4_algebra();
    const auto& S = v4_symbols();
    // ring header must match the algebra and come first
    CHECK_THROWS_AS(parse_chains(A, S, "ring d4\nchain c\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_chains(A, S, "chain c\n0 => 0 ; r1(0, 0)\n"),
                    std::invalid_argument);
    // step lines need a chain, a => and a ; part, a known kind, right arity
    CHECK_THROWS_AS(parse_chains(A, S, "ring v4\n0 => 0 ; r1(0, 0)\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_chains(A, S, "ring v4\nchain c\n0 => 0\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_chains(A, S, "ring v4\nchain c\n0 => 0 ; r9(0)\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_chains(A, S, "ring v4\nchain c\n0 => 0 ; r1(0)\n"),
                    std::invalid_argument);
    // symbols must satisfy the unit condition and use known labels
    CHECK_THROWS_AS(
        parse_chains(A, S, "ring v4\nchain c\n<1,1> => 0 ; r1(0, 0)\n"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_chains(A, S, "ring v4\nchain c\n<q,0> => 0 ; r1(0, 0)\n"),
        std::invalid_argument);
}
