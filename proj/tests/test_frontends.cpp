#include <doctest.h>

#include "fixtures.hpp"
#include "mmu/closure.hpp"
#include "mmu/errors.hpp"
#include "mmu/gamelogic.hpp"
#include "mmu/oracle.hpp"
#include "mmu/random.hpp"
#include "mmu/universal.hpp"

using namespace mmu;
using fixtures::F;

namespace {

Formula gl(const char* text) { return translate_game_formula(text, Dialect::GameLogic); }
Formula pdl(const char* text) { return translate_game_formula(text, Dialect::Cpdl); }

bool has_nu(Formula f) {
    for (Formula g : subformulas(f)) {
        if (g.is(Kind::Nu)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("translation clauses") {
    CHECK(to_string(gl("<a*> p")) == "mu X. (p | <a> X)");
    CHECK(to_string(gl("<a n b> p")) == "<a> p & <b> p");
    CHECK(to_string(gl("<a x> p")) == "nu Y. (p & <a> Y)");
    CHECK(gl("<a u b> p") == F("<a> p | <b> p"));
    CHECK(gl("<a ; b> p") == F("<a> <b> p"));
    CHECK(gl("<?q> p") == F("q & p"));
    CHECK(gl("<a^d> p") == F("[a] p"));
    CHECK(gl("[a] p") == F("[a] p"));
    CHECK(gl("<(?q)^d> p") == F("~q | p"));
    CHECK(gl("<(a u b)^d> p") == F("[a] p & [b] p"));
    CHECK(gl("[a*] p") == F("nu Y. (p & [a] Y)"));
    CHECK(gl("~<a> p") == F("[a] ~p"));
}

TEST_CASE("translation keeps fresh variables apart") {
    Formula f = gl("<a*> <b*> p");
    CHECK(validate(f).ok());
    CHECK(f == F("mu X1. ((mu X. (p | <b> X)) | <a> X1)"));
}

TEST_CASE("translation rejects alternation and CPDL duals") {
    CHECK_THROWS_AS(gl("<(a x)*> p"), ValidationError);
    CHECK_NOTHROW(gl("<(?(<a x> q))*> p"));
    CHECK_THROWS_AS(pdl("<a^d> p"), ValidationError);
    CHECK_THROWS_AS(pdl("<a x> p"), ValidationError);
    CHECK_THROWS_AS(gl("<u> p"), ParseError);
    CHECK_THROWS_AS(gl("mu X. <a> X"), ParseError);
    CHECK_THROWS_AS(gl("<a p"), ParseError);
}

TEST_CASE("dual pushing") {
    GamePtr g = parse_game_term("(a ; b*)^d", Dialect::GameLogic);
    CHECK(game_alternation_free(g));
    GamePtr p = push_duals(g);
    REQUIRE(p->op == GameTerm::Op::Seq);
    CHECK(p->lhs->op == GameTerm::Op::Dual);
    CHECK(p->rhs->op == GameTerm::Op::DemonicIterate);
    CHECK_FALSE(game_alternation_free(parse_game_term("(a* ; b)x", Dialect::GameLogic)));
    CHECK(game_size(parse_game_term("a ; b", Dialect::GameLogic)) == 3);
}

TEST_CASE("CPDL diamonds never produce greatest fixpoints") {
    for (const char* t : {"<a*> p", "<(a u b)*; c> p", "<a ; (b n c)> p", "<(?q ; a)*> p", "<a*> <b*> p"}) {
        CAPTURE(t);
        CHECK_FALSE(has_nu(pdl(t)));
    }
}

TEST_CASE("translated formulas are decided like their meaning") {
    CHECK_FALSE(decide_sat(gl("<a*> p"), gl("~p & [a] ~p")).satisfiable);
    CHECK(decide_sat(gl("<a*> p"), F("true")).satisfiable);
    CHECK_FALSE(decide_sat(gl("<a x> false"), F("true")).satisfiable);
    CHECK(decide_sat(gl("<(a u b^d)*> p"), F("true")).satisfiable);
}

TEST_CASE("universal reduction instances") {
    auto none = reduce_universal(F("p & <a> q"));
    REQUIRE(none.size() == 1);
    CHECK(none[0].core == F("p & <a> q"));
    CHECK(none[0].global == F("true"));
    CHECK(none[0].side.empty());

    auto box = reduce_universal(F("p & A ~p"));
    REQUIRE(box.size() == 2);
    CHECK(box[0].guess == std::vector<bool>{true});
    CHECK(box[0].core == F("p & true"));
    CHECK(box[0].global == F("~p"));
    CHECK(box[1].core == F("p & false"));
    CHECK(box[1].side == std::vector<Formula>{F("p")});

    CHECK_THROWS_AS(reduce_universal(F("A p & A q & A r"), 2), ResourceLimitError);
}

TEST_CASE("solving with universal modalities") {
    CHECK_FALSE(solve(F("p & A ~p"), F("true")).satisfiable);
    CHECK_FALSE(brute_force_sat(F("p & A ~p"), F("true"), 2, 2));

    SolveResult some = solve(F("p & E ~p"), F("true"));
    REQUIRE(some.satisfiable);
    REQUIRE(some.model);
    CHECK(some.model->size() == 2);
    CHECK(extension(*some.model, F("p & E ~p")).any());

    SolveResult g = solve(F("E p"), F("<a> q"));
    REQUIRE(g.satisfiable);
    CHECK(is_global_model(*g.model, F("<a> q")));
    CHECK(extension(*g.model, F("E p")).any());

    CHECK_FALSE(solve(F("E (p & ~p)"), F("true")).satisfiable);
    CHECK(solve(F("A (mu X. (p | <a> X))"), F("true")).satisfiable);
}

TEST_CASE("universal reduction agrees with brute force on small inputs") {
    Rng rng(61);
    RandomFormulaOptions o;
    o.universals = true;
    o.atoms = {"p"};
    o.actions = {"a"};
    o.depth = 4;
    int tried = 0;
    while (tried < 120) {
        Formula f = random_formula(rng, o);
        if (!contains_universal(f)) continue;
        ++tried;
        CAPTURE(to_string(f));
        SolveResult r = solve(f, F("true"));
        auto brute = brute_force_sat(f, F("true"), 3, 2);
        if (brute) CHECK(r.satisfiable);
        if (r.satisfiable) {
            REQUIRE(r.model);
            CHECK(extension(*r.model, f).any());
        }
    }
}
