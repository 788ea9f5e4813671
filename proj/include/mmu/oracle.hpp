#pragma once

// Independent reference procedures used to cross-check the solver:
// exhaustive small-model search and the translation into the relational
// mu-calculus together with its model conversions.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmu/formula.hpp"
#include "mmu/model.hpp"
#include "mmu/semantics.hpp"

namespace mmu {

// --- Brute force -----------------------------------------------------------------

inline constexpr std::size_t kBruteForceMaxStates = 4;
inline constexpr std::size_t kBruteForceMaxNeighbourhoods = 3;

/// Searches every model with at most `max_states` states and at most
/// `max_nbhds` neighbourhoods per (action, state), over the atoms and
/// actions of psi and phi, for one where phi holds everywhere and psi
/// somewhere. Returns the first such model. Throws ResourceLimitError
/// beyond kBruteForceMaxStates / kBruteForceMaxNeighbourhoods.
std::optional<NeighbourhoodModel> brute_force_sat(Formula psi, Formula phi, std::size_t max_states,
                                                  std::size_t max_nbhds);

/// The same search for many (psi, phi) problems at once, sharing the model
/// enumeration. Atoms and actions are pooled over all problems. Problems
/// are split into `workers` contiguous shards searched on separate threads;
/// the answer does not depend on the split.
std::vector<bool> brute_force_sat_batch(const std::vector<std::pair<Formula, Formula>>& problems,
                                        std::size_t max_states, std::size_t max_nbhds, std::size_t workers = 1);

// --- Relational side -------------------------------------------------------------

/// Kripke models with one relation per action.
class RelationalModel {
public:
    explicit RelationalModel(std::vector<std::string> state_names);
    explicit RelationalModel(std::size_t num_states);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& state_names() const { return names_; }
    StateSet empty_set() const { return StateSet(size()); }
    StateSet full_set() const { return ~StateSet(size()); }

    void add_edge(Symbol a, StateId from, StateId to);
    /// R_a(x); empty for actions the model does not mention.
    const StateSet& successors(Symbol a, StateId x) const;
    std::vector<Symbol> actions() const;

    const StateSet& atom(Symbol p) const;
    void set_atom(Symbol p, StateSet ext);
    std::vector<Symbol> atoms() const;

private:
    std::vector<std::string> names_;
    std::map<Symbol, std::vector<StateSet>> rel_;
    std::map<Symbol, StateSet> atoms_;
    StateSet none_;
};

/// The relation connecting neighbourhood nodes to their members.
Symbol membership_action();

/// t: [a]psi -> [a]<e>psi, <a>psi -> <a>[e]psi, commuting with everything
/// else. Throws ValidationError on universal modalities or if the input
/// already uses the reserved action.
Formula relational_translate(Formula f);

/// nu X. phi & [b]X for every b in `actions` plus the membership action.
Formula submodel_formula(Formula phi, const std::vector<Symbol>& actions);

/// States W followed by one node per distinct neighbourhood occurring in N.
RelationalModel model_to_relational(const NeighbourhoodModel& m);

/// N(a,w) = {{w' | (n,w') in R_e} | (w,n) in R_a} over the same states.
NeighbourhoodModel relational_to_model(const RelationalModel& c);

/// Standard Kripke semantics with Kleene fixpoints. Throws ValidationError
/// for uncovered free variables.
StateSet relational_eval(const RelationalModel& c, Formula f, const Valuation& v = {});

}  // namespace mmu
