#include "mmu/closure.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mmu/errors.hpp"
#include "mmu/normal_forms.hpp"
#include "mmu/syntax.hpp"

namespace mmu {

ClosureTable::ClosureTable(Formula rho1, Formula rho0) : rho1_(rho1), rho0_(rho0) {
    for (Formula f : {rho1, rho0}) {
        if (!f.closed()) throw ValidationError("closure input is not closed: " + to_string(f));
    }
    FormulaDiagnostics d = validate(rho1, rho0);
    if (!d.ok()) throw ValidationError("closure input rejected: " + d.describe());

    index_variables();
    saturate();
    compute_mu_order();
    for (Formula sub : subformulas_) clf_of_sub_.emplace(sub, compute_clf(sub));
    compute_deferrals();
}

void ClosureTable::index_variables() {
    std::unordered_set<Formula> seen;
    for (Formula root : {rho1_, rho0_}) {
        for (Formula g : mmu::subformulas(root)) {
            if (seen.insert(g).second) subformulas_.push_back(g);
        }
    }
    // Binder depth: minimal number of enclosing binders over all positions.
    std::unordered_map<Formula, std::size_t> best;
    std::vector<std::pair<Formula, std::size_t>> stack{{rho1_, 0}, {rho0_, 0}};
    while (!stack.empty()) {
        auto [g, d] = stack.back();
        stack.pop_back();
        auto it = best.find(g);
        if (it != best.end() && it->second <= d) continue;
        best[g] = d;
        switch (g.kind()) {
            case Kind::And:
            case Kind::Or:
                stack.emplace_back(g.lhs(), d);
                stack.emplace_back(g.rhs(), d);
                break;
            case Kind::Mu:
            case Kind::Nu:
                binder_[g.symbol()] = g;
                depth_[g.symbol()] = d;
                stack.emplace_back(g.body(), d + 1);
                break;
            case Kind::Dia:
            case Kind::Box:
            case Kind::UnivBox:
            case Kind::UnivDia:
                stack.emplace_back(g.body(), d);
                break;
            default:
                break;
        }
    }
    for (auto& [x, b] : binder_) depth_[x] = best.at(b);
}

void ClosureTable::saturate() {
    std::deque<Formula> queue;
    auto add = [&](Formula f) {
        if (index_.emplace(f, entries_.size()).second) {
            entries_.push_back(f);
            queue.push_back(f);
        }
    };
    add(rho1_);
    add(rho0_);
    while (!queue.empty()) {
        Formula f = queue.front();
        queue.pop_front();
        switch (f.kind()) {
            case Kind::And:
            case Kind::Or:
                add(f.lhs());
                add(f.rhs());
                break;
            case Kind::Dia:
            case Kind::Box:
            case Kind::UnivBox:
            case Kind::UnivDia:
                add(f.body());
                break;
            case Kind::Mu:
            case Kind::Nu:
                add(unfold(f));
                break;
            default:
                break;
        }
    }
}

void ClosureTable::compute_mu_order() {
    // Y >=_mu X iff theta(X) sits inside theta(Y) with no nu-binder between.
    std::map<Symbol, std::set<Symbol>> above;  // X -> {Y | Y >=_mu X}
    for (auto& [y, theta] : binder_) {
        if (!theta.is(Kind::Mu)) continue;
        above[y].insert(y);
        std::unordered_set<Formula> seen;
        std::vector<Formula> stack{theta.body()};
        while (!stack.empty()) {
            Formula g = stack.back();
            stack.pop_back();
            if (!seen.insert(g).second) continue;
            switch (g.kind()) {
                case Kind::Nu: break;
                case Kind::Mu:
                    above[g.symbol()].insert(y);
                    stack.push_back(g.body());
                    break;
                case Kind::And:
                case Kind::Or:
                    stack.push_back(g.lhs());
                    stack.push_back(g.rhs());
                    break;
                case Kind::Dia:
                case Kind::Box:
                case Kind::UnivBox:
                case Kind::UnivDia:
                    stack.push_back(g.body());
                    break;
                default:
                    break;
            }
        }
    }
    for (auto& [x, ys] : above) {
        idx_[x] = ys.size();
        max_idx_ = std::max(max_idx_, ys.size());
    }
}

Formula ClosureTable::binder(Symbol x) const {
    auto it = binder_.find(x);
    if (it == binder_.end()) throw ValidationError("variable '" + x.str() + "' is not bound in the closure inputs");
    return it->second;
}

bool ClosureTable::is_least(Symbol x) const { return binder(x).is(Kind::Mu); }

std::size_t ClosureTable::depth(Symbol x) const {
    binder(x);
    return depth_.at(x);
}

std::size_t ClosureTable::idx(Symbol x) const {
    auto it = idx_.find(x);
    return it == idx_.end() ? 0 : it->second;
}

Formula ClosureTable::compute_clf(Formula phi) const {
    while (!phi.closed()) {
        // Innermost variable first: one that no other free variable's binder
        // mentions. Among candidates prefer the deepest binder.
        auto fv = phi.free_vars();
        Symbol pick;
        for (Symbol x : fv) {
            bool needed = false;
            for (Symbol z : fv) {
                if (z != x && binder(z).has_free(x)) {
                    needed = true;
                    break;
                }
            }
            if (needed) continue;
            if (!pick.valid() || depth(x) > depth(pick)) pick = x;
        }
        if (!pick.valid()) throw std::logic_error("clf: cyclic binder dependencies");
        phi = substitute(phi, pick, binder(pick));
    }
    return phi;
}

Formula ClosureTable::clf(Formula sub) const {
    if (auto it = clf_of_sub_.find(sub); it != clf_of_sub_.end()) return it->second;
    return compute_clf(sub);
}

void ClosureTable::compute_deferrals() {
    for (Formula chi : subformulas_) {
        bool has_mu = std::any_of(chi.free_vars().begin(), chi.free_vars().end(),
                                  [&](Symbol x) { return is_least(x); });
        if (!has_mu) continue;
        Formula c = clf(chi);
        if (!contains(c)) throw std::logic_error("clf result outside the closure: " + to_string(c));
        deferrals_.insert(c);
    }
}

std::vector<Formula> ClosureTable::deferrals() const {
    std::vector<Formula> out;
    for (Formula f : entries_) {
        if (is_deferral(f)) out.push_back(f);
    }
    return out;
}

std::vector<Symbol> ClosureTable::actions() const {
    std::set<Symbol> out;
    for (Formula f : entries_) {
        if (f.is_modal()) out.insert(f.symbol());
    }
    return {out.begin(), out.end()};
}

std::vector<Symbol> ClosureTable::atoms() const {
    std::set<Symbol> out;
    for (Formula f : entries_) {
        if (f.is_literal()) out.insert(f.symbol());
    }
    return {out.begin(), out.end()};
}

}  // namespace mmu
