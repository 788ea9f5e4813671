#pragma once

// Letters for traversing the closure, the deferral tracking function delta
// and the propositional transformation gamma.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/container/flat_set.hpp>

#include "mmu/closure.hpp"
#include "mmu/formula.hpp"

namespace mmu {

/// Formula sets ordered by interning id.
using FormulaSet = boost::container::flat_set<Formula>;

/// (chi, b) with chi a conjunction, disjunction or fixpoint of the closure.
/// The bit selects a disjunct; it is 0 for the other shapes.
struct PropLetter {
    Formula formula;
    int bit = 0;
    friend bool operator==(const PropLetter&, const PropLetter&) = default;
};

/// (<a>phi0, [a]phi1): one application of the modal rule.
struct ModalLetter {
    Formula dia;
    Formula box;
    friend bool operator==(const ModalLetter&, const ModalLetter&) = default;
};

using Letter = std::variant<PropLetter, ModalLetter>;
using Word = std::vector<PropLetter>;

/// Validated constructors; throw ValidationError for components outside the
/// closure, wrong shapes, mismatched actions or bits other than 0/1.
PropLetter make_prop_letter(const ClosureTable& ct, Formula chi, int bit);
ModalLetter make_modal_letter(const ClosureTable& ct, Formula dia, Formula box);

/// Letters are compared by the closure position of their formula, then by bit.
bool letter_less(const ClosureTable& ct, const PropLetter& a, const PropLetter& b);
bool word_shortlex_less(const ClosureTable& ct, const Word& a, const Word& b);

FormulaSet deferrals(const ClosureTable& ct);

/// delta(foc, l). Throws ValidationError if foc is not a deferral.
FormulaSet delta(const ClosureTable& ct, Formula foc, const Letter& l);
FormulaSet delta_set(const ClosureTable& ct, const FormulaSet& foc, const Letter& l);
FormulaSet delta_set(const ClosureTable& ct, FormulaSet foc, std::span<const PropLetter> w);

FormulaSet gamma(FormulaSet g, const PropLetter& l);
FormulaSet gamma(FormulaSet g, std::span<const PropLetter> w);

/// No false, no clashing literal pair, no top-level and/or/fixpoint.
bool is_formal_state(const FormulaSet& g);
/// False or a clashing literal pair: no sequence of letters leads to a state.
bool is_contradictory(const FormulaSet& g);

std::string to_string(const FormulaSet& g);
std::string to_string(const PropLetter& l);

}  // namespace mmu
