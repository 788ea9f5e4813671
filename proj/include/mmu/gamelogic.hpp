#pragma once

// Game logic and CPDL on top of the monotone mu-calculus.
//
// Game terms:  a   ?phi   g u g   g n g   g ; g   g*   g x   g^d   ( g )
// Postfix operators bind tightest, then `;`, then `u` and `n` (left
// associative). `u`, `n`, `x` and `d` are reserved and cannot name actions.
// Formulas:    true  false  p  ~phi  phi & phi  phi | phi  <g> phi  [g] phi

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "mmu/formula.hpp"

namespace mmu {

struct GameTerm;
using GamePtr = std::shared_ptr<const GameTerm>;

struct GameTerm {
    enum class Op { Atomic, Test, Choice, DemonicChoice, Seq, Iterate, DemonicIterate, Dual };
    Op op;
    Symbol action;   ///< Atomic
    Formula test;    ///< Test; already translated
    GamePtr lhs;     ///< binary operators and the unary ones
    GamePtr rhs;

    static GamePtr atomic(Symbol a);
    static GamePtr test_of(Formula f);
    static GamePtr binary(Op op, GamePtr l, GamePtr r);
    static GamePtr unary(Op op, GamePtr g);
};

enum class Dialect { GameLogic, Cpdl };

/// Moves every dual down to atoms and tests: (g u h)^d = g^d n h^d,
/// (g;h)^d = g^d;h^d, (g*)^d = (g^d)x and so on.
GamePtr push_duals(const GamePtr& g);

/// No angelic iteration inside a demonic one or vice versa, except across
/// a test. Checked on the dual-pushed term.
bool game_alternation_free(const GamePtr& g);

/// Supplies fixpoint variables X, X1, X2, ... (least) and Y, Y1, ... (greatest)
/// that avoid a given set of names.
class FreshVariables {
public:
    explicit FreshVariables(std::set<std::string> avoid = {}) : used_(std::move(avoid)) {}
    Symbol next(bool least);

private:
    std::set<std::string> used_;
    int counter_[2] = {0, 0};
};

/// tau_g(psi): the formula that <g>psi translates to.
/// Throws ValidationError for alternating game terms.
Formula translate_game(const GamePtr& g, Formula psi, FreshVariables& fresh);

/// Parses and translates a game-logic or CPDL formula; the result is cleaned
/// and made guarded. CPDL rejects `^d` and `x` in the input; boxes are
/// translated through duals in both dialects. Throws ParseError or
/// ValidationError.
Formula translate_game_formula(std::string_view text, Dialect dialect);

/// Parses a game term on its own (tests may contain formulas).
GamePtr parse_game_term(std::string_view text, Dialect dialect);

/// Number of operators in a game term, counting test formulas by tree size.
std::size_t game_size(const GamePtr& g);

}  // namespace mmu
