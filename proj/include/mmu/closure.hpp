#pragma once

// The closure of a pair (rho1, rho0) together with the per-variable
// metadata the tracking and game layers rely on: binder map, binder depth,
// mu-variable indices and the deferral flags.

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mmu/formula.hpp"

namespace mmu {

class ClosureTable {
public:
    /// Saturates the closure of rho1 and rho0. Both must be closed, clean,
    /// irredundant, guarded and alternation-free jointly; otherwise throws
    /// ValidationError naming the failing property.
    ClosureTable(Formula rho1, Formula rho0);

    Formula rho1() const { return rho1_; }
    Formula rho0() const { return rho0_; }

    /// Entries in discovery order (breadth-first from rho1, then rho0).
    const std::vector<Formula>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool contains(Formula f) const { return index_.contains(f); }
    /// Position of `f` in entries(); throws std::out_of_range if absent.
    std::size_t index_of(Formula f) const { return index_.at(f); }

    /// theta(X): the binder of X inside rho1 or rho0 (may have free variables).
    Formula binder(Symbol x) const;
    bool is_least(Symbol x) const;
    /// Nesting depth of the binder of X (number of enclosing binders).
    std::size_t depth(Symbol x) const;
    /// idx(X) for mu-variables; 0 for nu-variables.
    std::size_t idx(Symbol x) const;
    /// Greatest idx of any mu-variable (length of timeout vectors).
    std::size_t max_idx() const { return max_idx_; }

    /// Closes a subformula of rho1/rho0 by substituting binders for free
    /// variables, innermost binder first. Throws ValidationError for
    /// variables unknown to this table.
    Formula clf(Formula sub) const;

    bool is_deferral(Formula f) const { return deferrals_.contains(f); }
    /// Deferrals in entries() order.
    std::vector<Formula> deferrals() const;

    /// Every distinct subformula of rho1 and rho0.
    const std::vector<Formula>& subformulas() const { return subformulas_; }

    std::vector<Symbol> actions() const;
    std::vector<Symbol> atoms() const;

private:
    void index_variables();
    void saturate();
    void compute_mu_order();
    void compute_deferrals();
    Formula compute_clf(Formula sub) const;

    Formula rho1_;
    Formula rho0_;
    std::vector<Formula> entries_;
    std::unordered_map<Formula, std::size_t> index_;
    std::vector<Formula> subformulas_;
    std::map<Symbol, Formula> binder_;
    std::map<Symbol, std::size_t> depth_;
    std::map<Symbol, std::size_t> idx_;
    std::size_t max_idx_ = 0;
    std::unordered_set<Formula> deferrals_;
    std::unordered_map<Formula, Formula> clf_of_sub_;
};

}  // namespace mmu
