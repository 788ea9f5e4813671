#include "mmu/gamelogic.hpp"

#include <optional>

#include "lexer.hpp"
#include "mmu/errors.hpp"
#include "mmu/normal_forms.hpp"

namespace mmu {

using Op = GameTerm::Op;

GamePtr GameTerm::atomic(Symbol a) {
    auto g = std::make_shared<GameTerm>();
    g->op = Op::Atomic;
    g->action = a;
    return g;
}

GamePtr GameTerm::test_of(Formula f) {
    auto g = std::make_shared<GameTerm>();
    g->op = Op::Test;
    g->test = f;
    return g;
}

GamePtr GameTerm::binary(Op op, GamePtr l, GamePtr r) {
    auto g = std::make_shared<GameTerm>();
    g->op = op;
    g->lhs = std::move(l);
    g->rhs = std::move(r);
    return g;
}

GamePtr GameTerm::unary(Op op, GamePtr inner) {
    auto g = std::make_shared<GameTerm>();
    g->op = op;
    g->lhs = std::move(inner);
    return g;
}

namespace {

GamePtr push(const GamePtr& g, bool dual) {
    switch (g->op) {
        case Op::Atomic:
        case Op::Test: return dual ? GameTerm::unary(Op::Dual, g) : g;
        case Op::Dual: return push(g->lhs, !dual);
        case Op::Choice:
        case Op::DemonicChoice: {
            bool angelic = (g->op == Op::Choice) != dual;
            return GameTerm::binary(angelic ? Op::Choice : Op::DemonicChoice, push(g->lhs, dual), push(g->rhs, dual));
        }
        case Op::Seq: return GameTerm::binary(Op::Seq, push(g->lhs, dual), push(g->rhs, dual));
        case Op::Iterate:
        case Op::DemonicIterate: {
            bool angelic = (g->op == Op::Iterate) != dual;
            return GameTerm::unary(angelic ? Op::Iterate : Op::DemonicIterate, push(g->lhs, dual));
        }
    }
    throw std::logic_error("unknown game operator");
}

// `outer` is the iteration kind enclosing g, if any.
bool alternation_free(const GamePtr& g, std::optional<Op> outer) {
    switch (g->op) {
        case Op::Atomic:
        case Op::Test: return true;
        case Op::Dual: return alternation_free(g->lhs, outer);
        case Op::Choice:
        case Op::DemonicChoice:
        case Op::Seq: return alternation_free(g->lhs, outer) && alternation_free(g->rhs, outer);
        case Op::Iterate:
        case Op::DemonicIterate:
            if (outer && *outer != g->op) return false;
            return alternation_free(g->lhs, g->op);
    }
    return false;
}

}  // namespace

GamePtr push_duals(const GamePtr& g) { return push(g, false); }

bool game_alternation_free(const GamePtr& g) { return alternation_free(push_duals(g), std::nullopt); }

Symbol FreshVariables::next(bool least) {
    const std::string stem = least ? "X" : "Y";
    for (;;) {
        int& k = counter_[least ? 0 : 1];
        std::string name = k == 0 ? stem : stem + std::to_string(k);
        ++k;
        if (used_.insert(name).second) return Symbol(name);
    }
}

namespace {

Formula tau(const GamePtr& g, Formula psi, FreshVariables& fresh) {
    switch (g->op) {
        case Op::Atomic: return Formula::dia(g->action, psi);
        case Op::Test: return Formula::conj(g->test, psi);
        case Op::Dual: {
            const GamePtr& inner = g->lhs;
            if (inner->op == Op::Atomic) return Formula::box(inner->action, psi);
            if (inner->op == Op::Test) return Formula::disj(negation_nnf(inner->test), psi);
            throw std::logic_error("dual not pushed to an atom or test");
        }
        case Op::Choice:
        case Op::DemonicChoice: {
            // Left operand first so fresh names do not depend on argument evaluation order.
            Formula l = tau(g->lhs, psi, fresh);
            Formula r = tau(g->rhs, psi, fresh);
            return g->op == Op::Choice ? Formula::disj(l, r) : Formula::conj(l, r);
        }
        case Op::Seq: return tau(g->lhs, tau(g->rhs, psi, fresh), fresh);
        case Op::Iterate: {
            Symbol x = fresh.next(true);
            return Formula::mu(x, Formula::disj(psi, tau(g->lhs, Formula::var(x), fresh)));
        }
        case Op::DemonicIterate: {
            Symbol y = fresh.next(false);
            return Formula::nu(y, Formula::conj(psi, tau(g->lhs, Formula::var(y), fresh)));
        }
    }
    throw std::logic_error("unknown game operator");
}

}  // namespace

Formula translate_game(const GamePtr& g, Formula psi, FreshVariables& fresh) {
    GamePtr pushed = push_duals(g);
    if (!alternation_free(pushed, std::nullopt)) {
        throw ValidationError("game term nests angelic and demonic iteration");
    }
    return tau(pushed, psi, fresh);
}

std::size_t game_size(const GamePtr& g) {
    switch (g->op) {
        case Op::Atomic: return 1;
        case Op::Test: return 1 + tree_size(g->test);
        case Op::Dual:
        case Op::Iterate:
        case Op::DemonicIterate: return 1 + game_size(g->lhs);
        default: return 1 + game_size(g->lhs) + game_size(g->rhs);
    }
}

// --- Parser ---------------------------------------------------------------------

namespace {

using detail::Lexer;
using detail::Tok;

bool reserved(const std::string& s) { return s == "u" || s == "n" || s == "x" || s == "d"; }

class GameParser {
public:
    GameParser(std::string_view text, Dialect d) : lex_(text), dialect_(d) {}

    Formula formula_top() {
        Formula f = disjunction();
        if (lex_.peek().type != Tok::End) lex_.fail("unexpected trailing input");
        return f;
    }

    GamePtr game_top() {
        GamePtr g = game();
        if (lex_.peek().type != Tok::End) lex_.fail("unexpected trailing input");
        return g;
    }

private:
    Formula disjunction() {
        Formula f = conjunction();
        while (lex_.accept("|")) f = Formula::disj(f, conjunction());
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (lex_.accept("&")) f = Formula::conj(f, unary());
        return f;
    }

    Formula unary() {
        if (lex_.accept("~")) return negation_nnf(unary());
        if (lex_.accept("<")) {
            GamePtr g = game();
            lex_.expect(">");
            return translate_game(g, unary(), fresh_);
        }
        if (lex_.accept("[")) {
            GamePtr g = game();
            lex_.expect("]");
            return translate_game(GameTerm::unary(Op::Dual, g), unary(), fresh_);
        }
        if (lex_.accept("(")) {
            Formula f = disjunction();
            lex_.expect(")");
            return f;
        }
        if (lex_.accept("true")) return Formula::top();
        if (lex_.accept("false")) return Formula::bot();
        const auto& t = lex_.peek();
        if (t.type == Tok::Ident) {
            if (t.is("mu") || t.is("nu") || detail::is_variable_name(t.text)) {
                lex_.fail("fixpoints are not part of game-logic formulas");
            }
            return Formula::atom(lex_.next().text);
        }
        lex_.fail("expected a formula");
    }

    GamePtr game() {
        GamePtr g = sequence();
        for (;;) {
            if (lex_.accept("u")) g = GameTerm::binary(Op::Choice, g, sequence());
            else if (lex_.accept("n")) g = GameTerm::binary(Op::DemonicChoice, g, sequence());
            else return g;
        }
    }

    GamePtr sequence() {
        GamePtr g = postfix();
        while (lex_.accept(";")) g = GameTerm::binary(Op::Seq, g, postfix());
        return g;
    }

    GamePtr postfix() {
        GamePtr g = primary();
        for (;;) {
            if (lex_.accept("*")) {
                g = GameTerm::unary(Op::Iterate, g);
            } else if (lex_.peek().is("x")) {
                if (dialect_ == Dialect::Cpdl) throw ValidationError("demonic iteration is not available in CPDL");
                lex_.next();
                g = GameTerm::unary(Op::DemonicIterate, g);
            } else if (lex_.peek().is("^")) {
                if (dialect_ == Dialect::Cpdl) throw ValidationError("dual games are not available in CPDL");
                lex_.next();
                lex_.expect("d");
                g = GameTerm::unary(Op::Dual, g);
            } else {
                return g;
            }
        }
    }

    GamePtr primary() {
        if (lex_.accept("?")) return GameTerm::test_of(unary());
        if (lex_.accept("(")) {
            GamePtr g = game();
            lex_.expect(")");
            return g;
        }
        const auto& t = lex_.peek();
        if (t.type != Tok::Ident || reserved(t.text)) lex_.fail("expected a game");
        return GameTerm::atomic(Symbol(lex_.next().text));
    }

    Lexer lex_;
    Dialect dialect_;
    FreshVariables fresh_;
};

}  // namespace

GamePtr parse_game_term(std::string_view text, Dialect dialect) { return GameParser(text, dialect).game_top(); }

Formula translate_game_formula(std::string_view text, Dialect dialect) {
    Formula raw = GameParser(text, dialect).formula_top();
    Formula out = guardedness_transform(make_clean_irredundant(raw));
    FormulaDiagnostics d = validate(out);
    if (!d.ok()) throw ValidationError("translation is not a valid solver input: " + d.describe());
    return out;
}

}  // namespace mmu
