#include <doctest.h>

#include "fixtures.hpp"
#include "mmu/closure.hpp"
#include "mmu/errors.hpp"
#include "mmu/random.hpp"
#include "mmu/tracking.hpp"

using namespace mmu;
using fixtures::F;

namespace {

FormulaSet set(std::initializer_list<Formula> fs) { return FormulaSet(fs.begin(), fs.end()); }

std::vector<PropLetter> prop_letters(const ClosureTable& ct) {
    std::vector<PropLetter> out;
    for (Formula f : ct.entries()) {
        if (f.is(Kind::Or)) {
            out.push_back(make_prop_letter(ct, f, 0));
            out.push_back(make_prop_letter(ct, f, 1));
        } else if (f.is(Kind::And) || f.is_fixpoint()) {
            out.push_back(make_prop_letter(ct, f, 0));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("deferral examples") {
    Formula psi = F("mu X. ([b] true | <a> X)");
    ClosureTable ct(psi, F("true"));
    FormulaSet dfr = deferrals(ct);
    CHECK(dfr.contains(Formula::disj(F("[b] true"), Formula::dia("a", psi))));
    CHECK(dfr.contains(psi));
    CHECK_FALSE(dfr.contains(F("[b] true")));

    ClosureTable nu(F("nu X. <a> X"), F("true"));
    CHECK(deferrals(nu).empty());
}

TEST_CASE("delta examples") {
    Formula foc = F("mu X. (p | (<b> p & [a] X))");
    ClosureTable ct(foc, F("true"));
    Formula unf = unfold(foc);
    Formula conj = unf.rhs();
    Word w{make_prop_letter(ct, foc, 0), make_prop_letter(ct, unf, 1), make_prop_letter(ct, conj, 0)};
    CHECK(delta_set(ct, set({foc}), w) == set({Formula::box("a", foc)}));

    // A letter about another formula leaves the focus alone.
    CHECK(delta(ct, unf, make_prop_letter(ct, conj, 0)) == set({unf}));
    // Choosing the non-deferral disjunct drops the focus.
    CHECK(delta(ct, unf, make_prop_letter(ct, unf, 0)).empty());

    Formula d = F("mu X. <a> X");
    ClosureTable dt(d, F("[a] true"));
    Formula dia = Formula::dia("a", d);
    ModalLetter ml = make_modal_letter(dt, dia, F("[a] true"));
    CHECK(delta(dt, dia, ml) == set({d}));
    CHECK(delta_set(dt, FormulaSet{}, ml).empty());
    CHECK_THROWS_AS(delta(dt, F("true"), ml), ValidationError);
}

TEST_CASE("letters are validated") {
    Formula psi = F("mu X. (p | <a> X) & q");
    ClosureTable ct(psi, F("true"));
    CHECK_THROWS_AS(make_prop_letter(ct, psi, 1), ValidationError);
    CHECK_THROWS_AS(make_prop_letter(ct, F("p"), 0), ValidationError);
    CHECK_THROWS_AS(make_prop_letter(ct, F("r | s"), 0), ValidationError);
    CHECK_THROWS_AS(make_prop_letter(ct, psi.lhs(), 0), ValidationError);
    CHECK_NOTHROW(make_prop_letter(ct, psi, 0));
    CHECK_THROWS_AS(make_modal_letter(ct, F("<b> true"), F("[b] true")), ValidationError);
}

TEST_CASE("gamma examples") {
    // chi | nu X. (psi1 & psi2), with chi = p, psi1 = <a> X, psi2 = [b] X.
    Formula nu = F("nu X. (<a> X & [b] X)");
    Formula phi = Formula::disj(F("p"), nu);
    ClosureTable ct(phi, F("true"));
    Formula body = unfold(nu);
    // The branch bit on the conjunction letter is 0 here.
    Word w{make_prop_letter(ct, phi, 1), make_prop_letter(ct, nu, 0), make_prop_letter(ct, body, 0)};
    CHECK(gamma(set({phi}), w) == set({Formula::dia("a", nu), Formula::box("b", nu)}));

    CHECK(gamma(set({F("p")}), make_prop_letter(ct, phi, 0)) == set({F("p")}));
    CHECK(gamma(set({F("q")}), make_prop_letter(ct, phi, 1)) == set({F("q")}));
}

TEST_CASE("formal states") {
    CHECK(is_formal_state(set({F("p"), F("<a> q"), F("true")})));
    CHECK_FALSE(is_formal_state(set({F("p"), F("~p")})));
    CHECK_FALSE(is_formal_state(set({F("false")})));
    CHECK_FALSE(is_formal_state(set({F("p | q")})));
    CHECK_FALSE(is_formal_state(set({F("mu X. <a> X")})));
    CHECK(is_contradictory(set({F("p"), F("~p")})));
    CHECK_FALSE(is_contradictory(set({F("p | ~p")})));
}

TEST_CASE("tracking laws on random closures") {
    Rng rng(31);
    for (int i = 0; i < 60; ++i) {
        auto [r1, r0] = prepare(random_formula(rng), random_formula(rng));
        ClosureTable ct(r1, r0);
        FormulaSet dfr = deferrals(ct);
        auto letters = prop_letters(ct);
        for (const auto& l : letters) {
            for (Formula foc : dfr) {
                FormulaSet d = delta(ct, foc, l);
                for (Formula g : d) CHECK(dfr.contains(g));
                // Coupling: a tracked formula reappears in the transformed label.
                FormulaSet label = gamma(set({foc}), l);
                for (Formula g : d) CHECK(label.contains(g));
            }
            FormulaSet all(ct.entries().begin(), ct.entries().end());
            for (Formula g : gamma(all, l)) CHECK(ct.contains(g));
        }
        // Union distributivity over single letters and short words.
        std::vector<Formula> dv(dfr.begin(), dfr.end());
        for (int k = 0; k < 20 && !dv.empty() && !letters.empty(); ++k) {
            FormulaSet a, b;
            for (Formula f : dv) (rng() & 1 ? a : b).insert(f);
            Word w;
            for (int j = 0; j < 4; ++j) w.push_back(letters[rng() % letters.size()]);
            FormulaSet u = a;
            u.insert(b.begin(), b.end());
            FormulaSet da = delta_set(ct, a, w), db = delta_set(ct, b, w);
            da.insert(db.begin(), db.end());
            CHECK(delta_set(ct, u, w) == da);
        }
    }
}

TEST_CASE("propositional rewriting reaches a formal state within 3n letters") {
    Rng rng(32);
    for (int i = 0; i < 60; ++i) {
        auto [r1, r0] = prepare(random_formula(rng), random_formula(rng));
        ClosureTable ct(r1, r0);
        FormulaSet g = set({r1, r0});
        std::size_t steps = 0;
        for (;;) {
            auto it = std::find_if(g.begin(), g.end(), [](Formula f) {
                return f.is(Kind::And) || f.is(Kind::Or) || f.is_fixpoint();
            });
            if (it == g.end()) break;
            g = gamma(g, make_prop_letter(ct, *it, it->is(Kind::Or) ? int(rng() & 1) : 0));
            ++steps;
        }
        CHECK(steps <= 3 * ct.size());
    }
}

TEST_CASE("letter order and printing") {
    Formula psi = F("p | q");
    ClosureTable ct(psi, F("true"));
    PropLetter l0 = make_prop_letter(ct, psi, 0), l1 = make_prop_letter(ct, psi, 1);
    CHECK(letter_less(ct, l0, l1));
    CHECK_FALSE(letter_less(ct, l1, l0));
    CHECK(word_shortlex_less(ct, {l1}, {l0, l0}));
    CHECK(word_shortlex_less(ct, {l0, l0}, {l0, l1}));
    CHECK(to_string(set({F("q"), F("p")})) == "{p, q}");
}
