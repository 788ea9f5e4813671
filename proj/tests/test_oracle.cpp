#include <doctest.h>

#include "fixtures.hpp"
#include "mmu/errors.hpp"
#include "mmu/game.hpp"
#include "mmu/oracle.hpp"
#include "mmu/random.hpp"

using namespace mmu;
using fixtures::F;

TEST_CASE("brute-force examples") {
    CHECK_FALSE(brute_force_sat(F("<a> true & [a] false"), F("true"), 2, 2));
    auto loop = brute_force_sat(F("mu X. <a> X"), F("true"), 1, 1);
    REQUIRE(loop);
    REQUIRE(loop->neighbourhoods(Symbol("a"), 0).size() == 1);
    CHECK(loop->neighbourhoods(Symbol("a"), 0)[0].none());
    CHECK(brute_force_sat(F("true"), F("true"), 1, 0));
    CHECK_THROWS_AS(brute_force_sat(F("true"), F("true"), 5, 1), ResourceLimitError);
    CHECK_THROWS_AS(brute_force_sat(F("true"), F("true"), 2, 4), ResourceLimitError);
}

TEST_CASE("brute-force models are genuine") {
    Rng rng(71);
    for (int i = 0; i < 40; ++i) {
        Formula psi = random_formula(rng), phi = random_formula(rng);
        auto m = brute_force_sat(psi, phi, 2, 2);
        if (!m) continue;
        CHECK(is_global_model(*m, phi));
        CHECK(extension(*m, psi).any());
    }
}

TEST_CASE("batch search matches single searches") {
    Rng rng(72);
    RandomFormulaOptions o;
    o.atoms = {"p"};
    o.actions = {"a"};
    std::vector<std::pair<Formula, Formula>> problems;
    for (int i = 0; i < 60; ++i) problems.emplace_back(random_formula(rng, o), F("true"));
    std::vector<bool> batch = brute_force_sat_batch(problems, 2, 2);
    std::vector<bool> sharded = brute_force_sat_batch(problems, 2, 2, 4);
    CHECK(batch == sharded);
    for (std::size_t i = 0; i < problems.size(); ++i) {
        CHECK(batch[i] == brute_force_sat(problems[i].first, problems[i].second, 2, 2).has_value());
    }
}

TEST_CASE("relational translation") {
    CHECK(relational_translate(F("[a] p")) == F("[a] <e> p"));
    CHECK(relational_translate(F("<a> p")) == F("<a> [e] p"));
    CHECK(relational_translate(F("p & q")) == F("p & q"));
    CHECK(relational_translate(F("mu X. (p | <a> X)")) == F("mu X. (p | <a> [e] X)"));
    CHECK_THROWS_AS(relational_translate(F("A p")), ValidationError);
    CHECK_THROWS_AS(relational_translate(F("<e> p")), ValidationError);
}

TEST_CASE("model conversions") {
    NeighbourhoodModel single(std::vector<std::string>{"w"});
    single.add_neighbourhood(Symbol("a"), 0, single.empty_set());
    RelationalModel c = model_to_relational(single);
    CHECK(c.size() == 2);
    CHECK(c.state_names()[1] == "{}");
    CHECK(c.successors(Symbol("a"), 0).count() == 1);
    CHECK(c.successors(Symbol("a"), 0)[1]);
    CHECK(c.successors(membership_action(), 1).none());

    RelationalModel bare = model_to_relational(NeighbourhoodModel(2));
    CHECK(bare.size() == 2);
    CHECK(bare.actions().empty());

    NeighbourhoodModel none = relational_to_model(RelationalModel(3));
    for (StateId w = 0; w < 3; ++w) CHECK(none.neighbourhoods(Symbol("a"), w).empty());

    RelationalModel r(3);
    r.add_edge(Symbol("a"), 0, 1);
    r.add_edge(membership_action(), 1, 0);
    r.add_edge(membership_action(), 1, 2);
    NeighbourhoodModel back = relational_to_model(r);
    REQUIRE(back.neighbourhoods(Symbol("a"), 0).size() == 1);
    CHECK(back.neighbourhoods(Symbol("a"), 0)[0] == fixtures::set_of(back, {"s0", "s2"}));
}

TEST_CASE("relational evaluation") {
    RelationalModel r(3);
    r.add_edge(membership_action(), 0, 1);
    r.set_atom(Symbol("p"), r.full_set());
    StateSet e = relational_eval(r, F("<e> true"));
    CHECK(e[0]);
    CHECK_FALSE(e[1]);
    // p holds everywhere, so the submodel formula holds everywhere.
    CHECK(relational_eval(r, submodel_formula(F("p"), {})).all());
    r.set_atom(Symbol("p"), fixtures::set_of(NeighbourhoodModel(3), {"s0"}));
    StateSet box = relational_eval(r, submodel_formula(F("p"), {}));
    CHECK_FALSE(box[0]);
    CHECK_FALSE(box[1]);
    CHECK(box[2] == false);
    CHECK_THROWS_AS(relational_eval(r, Formula::var("X")), ValidationError);
}

TEST_CASE("translation round trips preserve extensions") {
    Rng rng(73);
    RandomModelOptions mo;
    for (int i = 0; i < 60; ++i) {
        Formula f = random_formula(rng);
        Formula t = relational_translate(f);
        NeighbourhoodModel m = random_model(rng, mo);
        RelationalModel c = model_to_relational(m);
        StateSet lhs = extension(m, f), rhs = relational_eval(c, t);
        for (StateId w = 0; w < m.size(); ++w) CHECK(lhs[w] == rhs[w]);
        NeighbourhoodModel back = relational_to_model(c);
        StateSet again = extension(back, f);
        for (StateId w = 0; w < m.size(); ++w) CHECK(again[w] == lhs[w]);
    }
}
