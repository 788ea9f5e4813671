#include <doctest.h>

#include "fixtures.hpp"
#include "mmu/closure.hpp"
#include "mmu/errors.hpp"
#include "mmu/random.hpp"

using namespace mmu;
using fixtures::F;

namespace {

NeighbourhoodModel one_state(bool empty_nbhd) {
    NeighbourhoodModel m(1);
    if (empty_nbhd) m.add_neighbourhood(Symbol("a"), 0, m.empty_set());
    return m;
}

// Kleene iteration by plain repetition, |W| + 1 rounds, no early stop.
StateSet slow_mu(const NeighbourhoodModel& m, Formula fix) {
    StateSet x = fix.is(Kind::Mu) ? m.empty_set() : m.full_set();
    for (std::size_t i = 0; i <= m.size(); ++i) x = extension(m, fix.body(), {{fix.symbol(), x}});
    return x;
}

}  // namespace

TEST_CASE("extension examples") {
    Rng rng(1);
    NeighbourhoodModel r = random_model(rng);
    CHECK(extension(r, F("true")).all());
    CHECK(extension(one_state(true), F("mu X. <a> X")).all());
    CHECK(extension(one_state(false), F("[a] false")).all());
    CHECK(extension(one_state(false), F("mu X. <a> X")).none());
    CHECK(slow_mu(one_state(true), F("mu X. <a> X")).all());
}

TEST_CASE("modal clauses use upward closure") {
    NeighbourhoodModel m(3);
    Symbol a("a");
    m.add_neighbourhood(a, 0, fixtures::set_of(m, {"s1"}));
    m.add_neighbourhood(a, 0, fixtures::set_of(m, {"s1", "s2"}));
    m.set_atom(Symbol("p"), fixtures::set_of(m, {"s1"}));
    ModelChecker mc(m);
    CHECK(mc.extension(F("<a> p"))[0]);
    CHECK(mc.extension(F("[a] p"))[0]);
    CHECK_FALSE(mc.extension(F("[a] ~p"))[0]);
    // States without neighbourhoods fail every diamond and pass every box.
    CHECK_FALSE(mc.extension(F("<a> true"))[1]);
    CHECK(mc.extension(F("[a] false"))[1]);
}

TEST_CASE("free variables must be covered") {
    NeighbourhoodModel m(2);
    CHECK_THROWS_AS(extension(m, Formula::dia("a", Formula::var("X"))), ValidationError);
    StateSet all = m.full_set();
    CHECK(extension(m, Formula::var("X"), {{Symbol("X"), all}}) == all);
}

TEST_CASE("universal modalities") {
    NeighbourhoodModel m(2);
    m.set_atom(Symbol("p"), fixtures::set_of(m, {"s0"}));
    CHECK(extension(m, F("E p")).all());
    CHECK(extension(m, F("A p")).none());
    CHECK(extension(m, F("A (p | ~p)")).all());
}

TEST_CASE("global models") {
    Rng rng(2);
    NeighbourhoodModel m = random_model(rng);
    CHECK(is_global_model(m, F("true")));
    NeighbourhoodModel n(2);
    n.set_atom(Symbol("p"), fixtures::set_of(n, {"s0"}));
    CHECK_FALSE(is_global_model(n, F("p")));
}

TEST_CASE("semantic laws on random models") {
    Rng rng(4);
    RandomModelOptions mo;
    RandomFormulaOptions fo;
    fo.universals = true;
    for (int i = 0; i < 300; ++i) {
        mo.states = 1 + rng() % 4;
        NeighbourhoodModel m = random_model(rng, mo);
        Formula f = random_formula(rng, fo);
        ModelChecker mc(m);
        StateSet ext = mc.extension(f);
        CHECK(mc.extension(negation_nnf(f)) == ~ext);
        for (Formula g : subformulas(f)) {
            if (g.closed() && g.is_fixpoint()) {
                CHECK(mc.extension(g) == mc.extension(unfold(g)));
                CHECK(mc.extension(g) == slow_mu(m, g));
            }
        }
    }
}

TEST_CASE("monotonicity in a variable") {
    Rng rng(6);
    RandomModelOptions mo;
    for (int i = 0; i < 200; ++i) {
        NeighbourhoodModel m = random_model(rng, mo);
        Formula f = random_formula(rng);
        if (!f.is_fixpoint()) continue;
        StateSet small = m.empty_set(), big = m.empty_set();
        for (StateId w = 0; w < m.size(); ++w) {
            bool in = rng() & 1;
            big[w] = in || (rng() & 1);
            small[w] = in && big[w];
        }
        Symbol x = f.symbol();
        CHECK(extension(m, f.body(), {{x, small}}).is_subset_of(extension(m, f.body(), {{x, big}})));
    }
}

TEST_CASE("timeouts") {
    NeighbourhoodModel m = one_state(true);
    ClosureTable ct(F("mu X. <a> X"), F("true"));
    TimeoutEvaluator te(m, ct);
    CHECK(te.full_timeout() == TimeoutVector{1});
    CHECK(te.extension(F("mu X. <a> X"), {0}).none());
    CHECK(te.extension(F("mu X. <a> X"), {1}).all());
    CHECK(te.extension(F("true"), {0}).all());
    CHECK_THROWS_AS(te.extension(F("mu X. <a> X"), {2}), std::invalid_argument);
    CHECK_THROWS_AS(te.extension(F("mu X. <a> X"), {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(te.extension(F("p"), {1}), ValidationError);

    CHECK(timeout_step({3, 1, 0}, 1, 3) == TimeoutVector{2, 3, 3});
    CHECK(timeout_step({3, 1, 0}, 2, 3) == TimeoutVector{3, 0, 3});
}

TEST_CASE("timeouts agree with plain extensions off the deferrals") {
    Rng rng(9);
    RandomModelOptions mo;
    for (int i = 0; i < 60; ++i) {
        auto [r1, r0] = prepare(random_formula(rng), F("true"));
        ClosureTable ct(r1, r0);
        NeighbourhoodModel m = random_model(rng, mo);
        TimeoutEvaluator te(m, ct);
        ModelChecker mc(m);
        TimeoutVector zero(ct.max_idx(), 0);
        for (Formula f : ct.entries()) {
            StateSet full = te.extension(f, te.full_timeout());
            CHECK(mc.extension(f).is_subset_of(full));
            CHECK(te.extension(f, zero).is_subset_of(full));
            if (!ct.is_deferral(f)) CHECK(te.extension(f, zero) == mc.extension(f));
        }
    }
}

TEST_CASE("monotone bisimulation between the two example models") {
    NeighbourhoodModel l = fixtures::bisim_left(), r = fixtures::bisim_right();
    CHECK(check_monotone_bisimulation(l, r, {}));
    CHECK(check_monotone_bisimulation(l, r, fixtures::bisim_relation()));
    CHECK_FALSE(check_monotone_bisimulation(l, r, {{0, 1}}));
    // Dropping (v12, v2) breaks the neighbourhood {v11, v12}.
    CHECK_FALSE(check_monotone_bisimulation(l, r, {{0, 0}, {1, 1}, {2, 2}}));
}

TEST_CASE("submodel modality") {
    NeighbourhoodModel l = fixtures::bisim_left(), r = fixtures::bisim_right();
    CHECK(submodel_modality(r, F("p"), 0));
    CHECK_FALSE(submodel_modality(l, F("p"), 0));
    CHECK(submodel_modality(l, F("true"), 1));
    CHECK_THROWS_AS(submodel_modality(NeighbourhoodModel(13), F("true"), 0), ResourceLimitError);

    auto [sub, ids] = induced_submodel(r, fixtures::set_of(r, {"x2", "v2"}));
    CHECK(sub.size() == 2);
    StateRelation incl;
    for (StateId i = 0; i < ids.size(); ++i) incl.emplace_back(i, ids[i]);
    CHECK(check_monotone_bisimulation(sub, r, incl));
}

TEST_CASE("model JSON") {
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        NeighbourhoodModel m = random_model(rng);
        NeighbourhoodModel back = model_from_json(model_to_json(m));
        CHECK(model_to_json(back) == model_to_json(m));
        Formula f = random_formula(rng);
        CHECK(extension(back, f) == extension(m, f));
    }
    using nlohmann::json;
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"states":["w"],"atoms":{"~p":["w"]}})")), FormatError);
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"states":["w","w"]})")), FormatError);
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"states":["w"],"nbhd":{"a":{"w":[["v"]]}}})")), FormatError);
    CHECK_THROWS_AS(model_from_json(json::parse(R"([1,2])")), FormatError);
}

TEST_CASE("disjoint union preserves extensions") {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        NeighbourhoodModel a = random_model(rng), b = random_model(rng);
        NeighbourhoodModel u = disjoint_union(a, b, "l_", "r_");
        Formula f = random_formula(rng);
        StateSet eu = extension(u, f), ea = extension(a, f), eb = extension(b, f);
        for (StateId w = 0; w < a.size(); ++w) CHECK(eu[w] == ea[w]);
        for (StateId w = 0; w < b.size(); ++w) CHECK(eu[a.size() + w] == eb[w]);
    }
}
