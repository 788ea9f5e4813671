#include <doctest.h>

#include "fixtures.hpp"
#include "mmu/closure.hpp"
#include "mmu/errors.hpp"
#include "mmu/game.hpp"
#include "mmu/random.hpp"

using namespace mmu;
using fixtures::F;

namespace {

FormulaSet set(std::initializer_list<Formula> fs) { return FormulaSet(fs.begin(), fs.end()); }

std::shared_ptr<const ClosureTable> table(const char* rho1, const char* rho0 = "true") {
    auto [r1, r0] = prepare(F(rho1), F(rho0));
    return std::make_shared<const ClosureTable>(r1, r0);
}

}  // namespace

TEST_CASE("Eloise moves") {
    auto ct = table("p");
    auto moves = eloise_moves(*ct, set({F("p")}), {});
    REQUIRE(moves.size() == 1);
    CHECK(moves[0].state == set({F("p"), F("true")}));
    CHECK(moves[0].word.empty());

    auto dt = table("p | q");
    auto two = eloise_moves(*dt, set({F("p | q")}), {});
    REQUIRE(two.size() == 2);
    CHECK(two[0].state == set({F("p"), F("true")}));
    CHECK(two[1].state == set({F("q"), F("true")}));
    CHECK(two[0].word == Word{make_prop_letter(*dt, F("p | q"), 0)});

    auto clash = table("p & ~p");
    CHECK(eloise_moves(*clash, set({F("p & ~p")}), {}).empty());
    auto half = table("p & (~p | q)");
    auto hm = eloise_moves(*half, set({F("p & (~p | q)")}), {});
    REQUIRE(hm.size() == 1);
    CHECK(hm[0].state == set({F("p"), F("q"), F("true")}));
}

TEST_CASE("Abelard moves") {
    auto ct = table("<a> p & [a] q & [b] r & <c> true");
    CHECK(abelard_moves(*ct, set({F("p"), F("[a] q")}), {}).empty());
    CHECK(abelard_moves(*ct, set({F("<a> p"), F("[b] r")}), {}).empty());
    auto m = abelard_moves(*ct, set({F("<a> p"), F("[a] q"), F("[b] r"), F("<c> true")}), {});
    REQUIRE(m.size() == 1);
    CHECK(m[0].formulas == set({F("p"), F("q")}));
    CHECK(m[0].focus.empty());

    auto loop = table("mu X. <a> X", "[a] true");
    Formula psi = F("mu X. <a> X");
    auto r = abelard_moves(*loop, set({Formula::dia("a", psi), F("[a] true")}), {});
    REQUIRE(r.size() == 1);
    CHECK(r[0].formulas == set({psi, F("true")}));
    CHECK(r[0].focus == set({psi}));
}

TEST_CASE("arena construction and solving") {
    GameArena a = build_arena(table("p"));
    CHECK(a.eloise_count() == 1);
    CHECK(a.abelard_count() == 1);
    BuchiSolution s = solve_buchi(a);
    CHECK(s.eloise_wins);

    GameArena clash = build_arena(table("p & ~p"));
    CHECK(clash.size() == 1);
    CHECK_FALSE(solve_buchi(clash).eloise_wins);

    // The only play cycles with the deferral in focus forever.
    GameArena loop = build_arena(table("mu X. <a> X", "[a] true"));
    CHECK_FALSE(solve_buchi(loop).eloise_wins);

    CHECK_THROWS_AS(build_arena(table("mu X. (p | <a> X)", "[a] true"), {2}), ResourceLimitError);
}

TEST_CASE("decide_sat examples") {
    CHECK_FALSE(decide_sat(F("<a> true & [a] false"), F("true")).satisfiable);
    CHECK(decide_sat(F("mu X. <a> X"), F("true")).satisfiable);
    CHECK_FALSE(decide_sat(F("p & ~p"), F("true")).satisfiable);
    CHECK_FALSE(decide_sat(F("mu X. <a> X"), F("[a] true")).satisfiable);
    CHECK(decide_sat(F("mu X. (p | <a> X)"), F("[a] ~p")).satisfiable);
    CHECK_FALSE(decide_sat(F("mu X. (p | <a> X)"), F("[a] ~p & ~p")).satisfiable);
    CHECK(decide_sat(F("p"), F("q")).satisfiable);
    CHECK_THROWS_AS(decide_sat(F("nu X. mu Y. <a> (X & Y)"), F("true")), ValidationError);
}

TEST_CASE("arena invariants on random inputs") {
    Rng rng(41);
    for (int i = 0; i < 80; ++i) {
        auto [r1, r0] = prepare(random_formula(rng), random_formula(rng));
        auto ct = std::make_shared<const ClosureTable>(r1, r0);
        GameArena a = build_arena(ct);
        const std::size_t n = ct->size();
        CHECK(a.eloise_count() <= 4 * n * n);
        for (std::size_t v = 0; v < a.size(); ++v) {
            const GameNode& node = a.node(v);
            for (std::size_t k = 0; k < a.successors(v).size(); ++k) {
                const GameNode& t = a.node(a.successors(v)[k]);
                CHECK(t.eloise != node.eloise);
                if (node.eloise) {
                    CHECK(is_formal_state(t.formulas));
                    CHECK(a.word(v, k).size() <= 3 * n);
                    FormulaSet g = node.formulas;
                    g.insert(r0);
                    g = gamma(g, a.word(v, k));
                    CHECK(g == t.formulas);
                    for (Formula f : t.focus) CHECK(g.contains(f));
                }
            }
            if (node.eloise) {
                CHECK(std::includes(node.formulas.begin(), node.formulas.end(), node.focus.begin(), node.focus.end()));
                CHECK(node.formulas.size() <= 2);
            }
        }
        BuchiSolution s = solve_buchi(a);
        SatResult r = decide_sat(r1, r0);
        CHECK(r.satisfiable == s.eloise_wins);
        if (r.satisfiable) {
            REQUIRE(r.certificate);
            CHECK(verify_certificate(*r.certificate).ok());
            CHECK(verify_certificate(*r.certificate, r1, r0).ok());
        }
    }
}

TEST_CASE("certificates round-trip through JSON") {
    Rng rng(42);
    int sat = 0;
    for (int i = 0; i < 80; ++i) {
        SatResult r = decide_sat(random_formula(rng), random_formula(rng));
        if (!r.satisfiable) continue;
        ++sat;
        auto j = certificate_to_json(*r.certificate);
        StrategyCertificate back = certificate_from_json(j);
        CHECK(back == *r.certificate);
        CHECK(certificate_to_json(back).dump() == j.dump());
        CHECK(certificate_from_json(nlohmann::json::parse(j.dump())) == back);
    }
    CHECK(sat > 10);
}

TEST_CASE("certificate rejections") {
    SatResult r = decide_sat(F("<a> (p | q) & [a] r"), F("true"));
    REQUIRE(r.satisfiable);
    const StrategyCertificate& good = *r.certificate;
    CHECK(verify_certificate(good).ok());
    CHECK(verify_certificate(good, F("<a> (p | q) & [a] r"), F("true")).ok());
    CHECK(verify_certificate(good, F("p"), F("true")).failure == CertificateFailure::Malformed);

    SUBCASE("wrong bit") {
        StrategyCertificate c = good;
        bool flipped = false;
        for (auto& [id, m] : c.moves) {
            for (auto& l : m.word) {
                if (l.formula.is(Kind::Or) && !flipped) {
                    l.bit ^= 1;
                    flipped = true;
                }
            }
        }
        REQUIRE(flipped);
        CHECK(verify_certificate(c).failure == CertificateFailure::IllegalMove);
    }
    SUBCASE("missing initial move") {
        StrategyCertificate c = good;
        c.moves.erase(c.initial);
        CHECK(verify_certificate(c).failure == CertificateFailure::Initial);
    }
    SUBCASE("missing Abelard response") {
        StrategyCertificate c = good;
        std::string victim;
        for (const auto& [id, m] : c.moves) {
            if (id != c.initial) victim = id;
        }
        REQUIRE_FALSE(victim.empty());
        c.moves.erase(victim);
        CHECK(verify_certificate(c).failure == CertificateFailure::MissingResponse);
    }
    CHECK_THROWS_AS(certificate_from_json(nlohmann::json::parse("{}")), FormatError);
    CHECK(failure_code(CertificateFailure::NonAcceptingCycle) == std::string("non-accepting-cycle"));
}

TEST_CASE("a strategy that never fulfils its focus is rejected") {
    auto ct = table("mu X. (p | <a> X)", "[a] true");
    GameArena a = build_arena(ct);
    BuchiSolution s = solve_buchi(a);
    REQUIRE(s.eloise_wins);
    // Always take the last successor: the <a> branch, never p.
    BuchiSolution bad = s;
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (a.node(v).eloise && !a.successors(v).empty()) bad.choice[v] = a.successors(v).size() - 1;
    }
    StrategyCertificate c = extract_certificate(a, bad);
    CHECK(verify_certificate(c).failure == CertificateFailure::NonAcceptingCycle);
}
