#include "mmu/random.hpp"

namespace mmu {

namespace {

class FormulaGen {
public:
    FormulaGen(Rng& rng, const RandomFormulaOptions& o) : rng_(rng), o_(o) {}

    Formula gen(std::size_t depth, bool guarded) {
        if (depth == 0 || pick(4) == 0) return leaf(guarded);
        std::size_t k = pick(o_.universals ? 8 : 7);
        switch (k) {
            case 0:
            case 1: {
                // Sequenced so a seed gives the same formula on every compiler.
                Formula l = gen(depth - 1, guarded);
                Formula r = gen(depth - 1, guarded);
                return k == 0 ? Formula::conj(l, r) : Formula::disj(l, r);
            }
            case 2:
            case 3: {
                Symbol a(o_.actions[pick(o_.actions.size())]);
                Formula body = gen(depth - 1, true);
                return pick(2) ? Formula::dia(a, body) : Formula::box(a, body);
            }
            case 4:
            case 5: {
                if (!o_.fixpoints) return gen(depth - 1, guarded);
                bool least = pick(2) == 0;
                Symbol x(std::string(1, least ? 'X' : 'Y') + std::to_string(next_var_++));
                // An opposite binder starts a scope of its own, so no
                // subformula has free variables of both kinds.
                std::vector<Symbol> saved = scope_;
                bool saved_least = scope_least_;
                if (scope_.empty() || scope_least_ != least) scope_.clear();
                scope_.push_back(x);
                scope_least_ = least;
                Formula body = gen(depth - 1, false);
                scope_ = std::move(saved);
                scope_least_ = saved_least;
                return Formula::fix(least, x, body);
            }
            case 6: return gen(depth - 1, guarded);
            default: {
                // Universal modalities only apply to closed formulas here.
                std::vector<Symbol> saved = std::move(scope_);
                scope_.clear();
                Formula body = gen(depth - 1, false);
                scope_ = std::move(saved);
                return pick(2) ? Formula::univ_box(body) : Formula::univ_dia(body);
            }
        }
    }

private:
    Formula leaf(bool guarded) {
        if (guarded && !scope_.empty() && pick(2) == 0) return Formula::var(scope_[pick(scope_.size())]);
        std::size_t k = pick(o_.atoms.size() * 2 + 2);
        if (k == 0) return Formula::top();
        if (k == 1) return Formula::bot();
        k -= 2;
        return Formula::literal(Symbol(o_.atoms[k / 2]), k % 2 == 0);
    }

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    Rng& rng_;
    const RandomFormulaOptions& o_;
    std::vector<Symbol> scope_;
    bool scope_least_ = true;
    std::size_t next_var_ = 0;
};

StateSet random_set(Rng& rng, std::size_t n) {
    StateSet s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = rng() & 1;
    return s;
}

}  // namespace

Formula random_formula(Rng& rng, const RandomFormulaOptions& opts) {
    if (opts.atoms.empty() || opts.actions.empty()) throw std::invalid_argument("need at least one atom and action");
    return FormulaGen(rng, opts).gen(opts.depth, false);
}

NeighbourhoodModel random_model(Rng& rng, const RandomModelOptions& opts) {
    NeighbourhoodModel m(opts.states);
    for (const auto& p : opts.atoms) m.set_atom(Symbol(p), random_set(rng, opts.states));
    std::uniform_int_distribution<std::size_t> count(0, opts.max_nbhds);
    for (const auto& a : opts.actions) {
        for (StateId w = 0; w < opts.states; ++w) {
            for (std::size_t k = count(rng); k > 0; --k) m.add_neighbourhood(Symbol(a), w, random_set(rng, opts.states));
        }
    }
    return m;
}

RelationalModel random_relational_model(Rng& rng, const RandomModelOptions& opts) {
    RelationalModel c(opts.states);
    for (const auto& p : opts.atoms) c.set_atom(Symbol(p), random_set(rng, opts.states));
    std::vector<Symbol> rels;
    for (const auto& a : opts.actions) rels.emplace_back(a);
    rels.push_back(membership_action());
    for (Symbol a : rels) {
        for (StateId x = 0; x < opts.states; ++x) {
            for (StateId y = 0; y < opts.states; ++y) {
                if (rng() % 3 == 0) c.add_edge(a, x, y);
            }
        }
    }
    return c;
}

}  // namespace mmu
