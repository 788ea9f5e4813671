#pragma once

// Seeded generators for formulas and models, used by the test suites and
// the `random` CLI command.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "mmu/formula.hpp"
#include "mmu/model.hpp"
#include "mmu/oracle.hpp"

namespace mmu {

using Rng = std::mt19937_64;

struct RandomFormulaOptions {
    std::vector<std::string> atoms{"p", "q"};
    std::vector<std::string> actions{"a", "b"};
    std::size_t depth = 4;
    bool fixpoints = true;
    bool universals = false;
};

/// A closed, clean, alternation-free formula of at most `depth` nested
/// operators. Variables only occur below a modality of their binder.
Formula random_formula(Rng& rng, const RandomFormulaOptions& opts = {});

struct RandomModelOptions {
    std::size_t states = 3;
    std::vector<std::string> atoms{"p", "q"};
    std::vector<std::string> actions{"a", "b"};
    std::size_t max_nbhds = 2;  ///< per (action, state)
};

NeighbourhoodModel random_model(Rng& rng, const RandomModelOptions& opts = {});

/// Random Kripke model; relations cover the given actions plus the
/// membership action.
RelationalModel random_relational_model(Rng& rng, const RandomModelOptions& opts = {});

}  // namespace mmu
