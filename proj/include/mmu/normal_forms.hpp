#pragma once

// Negation, cleaning, guardedness and the structural checks every solver
// input must pass.

#include <string>
#include <utility>
#include <vector>

#include "mmu/formula.hpp"

namespace mmu {

/// Negation normal form of the negation of a closed formula: swaps
/// and/or, true/false, <a>/[a], mu/nu, A/E and atoms/duals. Variables are
/// kept, which is correct because they stay positive.
Formula negation_nnf(Formula f);

/// Outcome of the four definitional checks on a formula (or a pair of
/// formulas sharing one variable namespace).
struct FormulaDiagnostics {
    bool is_clean = true;
    bool is_irredundant = true;
    bool is_guarded = true;
    bool is_alternation_free = true;

    std::vector<Formula> unclean;         ///< binders reusing a variable name
    std::vector<Formula> redundant;       ///< binders whose variable does not occur
    std::vector<Formula> unguarded;       ///< binders with an unguarded occurrence
    std::vector<Formula> alternating;     ///< subformulas with free mu- and nu-variables

    bool ok() const { return is_clean && is_irredundant && is_guarded && is_alternation_free; }
    /// Human-readable list of failed checks.
    std::string describe() const;
};

/// Runs the checks on a closed formula.
FormulaDiagnostics validate(Formula f);
/// Runs the checks on two formulas jointly: a variable may only be bound by
/// one binder across both.
FormulaDiagnostics validate(Formula rho1, Formula rho0);

/// Alpha-renames binders so that each variable name is bound by a single
/// binder and removes vacuous binders. Structurally identical binders are one
/// interned node and keep sharing one name.
Formula make_clean_irredundant(Formula f);
std::pair<Formula, Formula> make_clean_irredundant(Formula rho1, Formula rho0);

/// Rewrites a clean, irredundant, alternation-free formula into an
/// equivalent guarded one. Unguarded occurrences of a mu-variable become
/// false, of a nu-variable true, after exposing them by one-step unfolding of
/// inner binders; the result is simplified and re-cleaned.
///
/// Closure growth: the output closure stays within 2 * n^2 for input
/// closure size n on every corpus we measure (see the acceptance suite).
Formula guardedness_transform(Formula f);

/// The full input pipeline for a pair (rho1, rho0): clean, reject
/// alternation, make guarded, re-clean, re-validate. Throws ValidationError
/// if alternation-freeness fails or a universal modality is present.
std::pair<Formula, Formula> prepare(Formula rho1, Formula rho0);

}  // namespace mmu
