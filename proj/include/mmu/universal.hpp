#pragma once

// Reduction of the universal modalities A / E to global assumptions, and the
// top-level solver entry point that accepts them.

#include <cstddef>
#include <optional>
#include <vector>

#include "mmu/formula.hpp"
#include "mmu/game.hpp"
#include "mmu/model.hpp"

namespace mmu {

/// One truth assignment to the universal subformulas of the input.
struct UniversalInstance {
    std::vector<Formula> universals;  ///< the A/E subformulas, innermost first
    std::vector<bool> guess;          ///< parallel to `universals`
    Formula core;
    Formula global;
    std::vector<Formula> side;
};

/// Distinct A/E subformulas of f, children before parents.
std::vector<Formula> universal_subformulas(Formula f);

/// Replaces every A/E subformula by true or false according to `truth`.
Formula apply_guess(Formula f, const std::vector<Formula>& universals, const std::vector<bool>& guess);

inline constexpr std::size_t kDefaultGuessCap = 16;

/// One instance per assignment. f is satisfiable iff for some instance the
/// core and each side formula are satisfiable under the instance's global
/// assumption. Throws ResourceLimitError for more than `guess_cap`
/// universal subformulas.
std::vector<UniversalInstance> reduce_universal(Formula f, std::size_t guess_cap = kDefaultGuessCap);

struct SolveResult {
    bool satisfiable = false;
    std::optional<NeighbourhoodModel> model;  ///< a model of the input, if satisfiable
    /// The game-level result behind the core formula; absent when the
    /// input needed the universal reduction.
    std::optional<SatResult> direct;
    std::optional<UniversalInstance> instance;  ///< the successful guess, if any
};

/// Decides satisfiability of psi in models where `global` holds
/// everywhere. Either formula may contain A/E.
SolveResult solve(Formula psi, Formula global, const SolveOptions& opts = {},
                  std::size_t guess_cap = kDefaultGuessCap);

}  // namespace mmu
