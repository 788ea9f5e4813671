#pragma once

// Extensions of formulas in finite neighbourhood models.

#include <cstddef>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mmu/closure.hpp"
#include "mmu/formula.hpp"
#include "mmu/model.hpp"

namespace mmu {

using Valuation = std::map<Symbol, StateSet>;

/// Evaluates formulas over one model. Extensions of closed formulas are
/// cached, so a checker should be reused for many queries on the same model.
class ModelChecker {
public:
    explicit ModelChecker(const NeighbourhoodModel& model) : model_(model) {}

    const NeighbourhoodModel& model() const { return model_; }

    /// [[f]] under `v`. Throws ValidationError if a free variable of `f` is
    /// not covered by `v`.
    StateSet extension(Formula f, const Valuation& v = {});

    /// {w | exists S in N(a,w). S subset of target}
    StateSet diamond(Symbol a, const StateSet& target) const;
    /// {w | forall S in N(a,w). S meets target}
    StateSet box(Symbol a, const StateSet& target) const;

private:
    StateSet eval(Formula f, const Valuation& v);

    const NeighbourhoodModel& model_;
    std::unordered_map<Formula, StateSet> closed_;
};

StateSet extension(const NeighbourhoodModel& m, Formula f, const Valuation& v = {});

/// True iff [[phi]] = W.
bool is_global_model(const NeighbourhoodModel& m, Formula phi);

/// Timeout vector (m_1, ..., m_k), indexed from 1 in the accessors below.
using TimeoutVector = std::vector<std::size_t>;

/// m@i: decrements position i and resets every later position to |W|.
TimeoutVector timeout_step(const TimeoutVector& m, std::size_t i, std::size_t num_states);

/// Extension under a timeout for formulas of the closure `ct`. Non-deferrals
/// get their plain extension; unfolding a least fixpoint consumes one unit
/// at the position given by its variable's idx.
class TimeoutEvaluator {
public:
    TimeoutEvaluator(const NeighbourhoodModel& model, const ClosureTable& ct);

    /// Throws std::invalid_argument if `m` has the wrong length or an entry
    /// exceeds |W|, and ValidationError if `f` is not in the closure.
    StateSet extension(Formula f, const TimeoutVector& m);
    /// The vector (|W|, ..., |W|).
    TimeoutVector full_timeout() const;

private:
    StateSet eval(Formula f, const TimeoutVector& m);

    ModelChecker checker_;
    const ClosureTable& ct_;
    std::map<std::pair<Formula, TimeoutVector>, StateSet> memo_;
};

/// A relation between the states of two models, as pairs (x in M1, y in M2).
using StateRelation = std::vector<std::pair<StateId, StateId>>;

/// Checks the three monotone-bisimulation conditions for every pair in `s`.
/// Atoms and actions range over those mentioned by either model.
bool check_monotone_bisimulation(const NeighbourhoodModel& m1, const NeighbourhoodModel& m2,
                                 const StateRelation& s);

/// The submodel induced by `keep`: N'(a,w) keeps the neighbourhoods of w
/// that lie inside `keep`. Returns the model and the map from new to old ids.
std::pair<NeighbourhoodModel, std::vector<StateId>> induced_submodel(const NeighbourhoodModel& m,
                                                                     const StateSet& keep);

/// Largest model accepted by submodel_modality.
inline constexpr std::size_t kSubmodelStateLimit = 12;

/// True iff some W' containing w carries a submodel in which every state
/// satisfies phi. Brute force over subsets; throws ResourceLimitError above
/// kSubmodelStateLimit states.
bool submodel_modality(const NeighbourhoodModel& m, Formula phi, StateId w);

}  // namespace mmu
