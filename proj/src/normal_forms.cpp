#include "mmu/normal_forms.hpp"

#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mmu/errors.hpp"
#include "mmu/syntax.hpp"

namespace mmu {

// --- Negation ------------------------------------------------------------------

namespace {

Formula negate_rec(Formula f, std::unordered_map<Formula, Formula>& memo) {
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    Formula out;
    switch (f.kind()) {
        case Kind::Bot: out = Formula::top(); break;
        case Kind::Top: out = Formula::bot(); break;
        case Kind::Atom: out = Formula::dual_atom(f.symbol()); break;
        case Kind::DualAtom: out = Formula::atom(f.symbol()); break;
        case Kind::Var: out = f; break;
        case Kind::And: out = Formula::disj(negate_rec(f.lhs(), memo), negate_rec(f.rhs(), memo)); break;
        case Kind::Or: out = Formula::conj(negate_rec(f.lhs(), memo), negate_rec(f.rhs(), memo)); break;
        case Kind::Dia: out = Formula::box(f.symbol(), negate_rec(f.body(), memo)); break;
        case Kind::Box: out = Formula::dia(f.symbol(), negate_rec(f.body(), memo)); break;
        case Kind::Mu: out = Formula::nu(f.symbol(), negate_rec(f.body(), memo)); break;
        case Kind::Nu: out = Formula::mu(f.symbol(), negate_rec(f.body(), memo)); break;
        case Kind::UnivBox: out = Formula::univ_dia(negate_rec(f.body(), memo)); break;
        case Kind::UnivDia: out = Formula::univ_box(negate_rec(f.body(), memo)); break;
    }
    memo.emplace(f, out);
    return out;
}

}  // namespace

Formula negation_nnf(Formula f) {
    std::unordered_map<Formula, Formula> memo;
    return negate_rec(f, memo);
}

// --- Diagnostics -------------------------------------------------------------------

namespace {

/// True iff `x` occurs free in `f` outside the scope of any modality.
bool occurs_unguarded(Formula f, Symbol x) {
    if (!f.has_free(x)) return false;
    switch (f.kind()) {
        case Kind::Var: return true;
        case Kind::And:
        case Kind::Or: return occurs_unguarded(f.lhs(), x) || occurs_unguarded(f.rhs(), x);
        case Kind::Mu:
        case Kind::Nu: return occurs_unguarded(f.body(), x);
        default: return false;
    }
}

std::string join(const std::vector<Formula>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size() && i < 3; ++i) {
        if (i) out += "; ";
        out += to_string(fs[i]);
    }
    if (fs.size() > 3) out += "; ...";
    return out;
}

FormulaDiagnostics diagnose(std::initializer_list<Formula> roots) {
    FormulaDiagnostics d;
    std::vector<Formula> all;
    std::unordered_set<Formula> seen;
    for (Formula r : roots) {
        for (Formula g : subformulas(r)) {
            if (seen.insert(g).second) all.push_back(g);
        }
    }

    std::map<Symbol, std::vector<Formula>> binders;
    for (Formula g : all) {
        if (g.is_fixpoint()) binders[g.symbol()].push_back(g);
    }
    std::map<Symbol, bool> least;
    for (auto& [x, bs] : binders) {
        least[x] = bs.front().is(Kind::Mu);
        if (bs.size() > 1) {
            d.is_clean = false;
            d.unclean.insert(d.unclean.end(), bs.begin(), bs.end());
        }
    }

    for (Formula g : all) {
        if (!g.is_fixpoint()) continue;
        if (!g.body().has_free(g.symbol())) {
            d.is_irredundant = false;
            d.redundant.push_back(g);
        }
        if (occurs_unguarded(g.body(), g.symbol())) {
            d.is_guarded = false;
            d.unguarded.push_back(g);
        }
    }

    for (Formula g : all) {
        bool has_mu = false;
        bool has_nu = false;
        for (Symbol x : g.free_vars()) {
            auto it = least.find(x);
            if (it == least.end()) continue;
            (it->second ? has_mu : has_nu) = true;
        }
        if (has_mu && has_nu) {
            d.is_alternation_free = false;
            d.alternating.push_back(g);
        }
    }
    return d;
}

}  // namespace

std::string FormulaDiagnostics::describe() const {
    std::ostringstream os;
    bool first = true;
    auto item = [&](bool ok, const char* what, const std::vector<Formula>& where) {
        if (ok) return;
        if (!first) os << "; ";
        first = false;
        os << "not " << what << " (" << join(where) << ")";
    };
    item(is_clean, "clean", unclean);
    item(is_irredundant, "irredundant", redundant);
    item(is_guarded, "guarded", unguarded);
    item(is_alternation_free, "alternation-free", alternating);
    if (first) os << "ok";
    return os.str();
}

FormulaDiagnostics validate(Formula f) { return diagnose({f}); }
FormulaDiagnostics validate(Formula rho1, Formula rho0) { return diagnose({rho1, rho0}); }

// --- Cleaning --------------------------------------------------------------------

namespace {

class Cleaner {
public:
    explicit Cleaner(std::initializer_list<Formula> roots) {
        for (Formula r : roots) {
            for (Symbol s : variables_of(r)) used_.insert(s.str());
        }
    }

    Formula run(Formula f) { return run(f, {}); }

private:
    using Env = std::map<Symbol, Symbol>;

    Formula run(Formula f, const Env& env) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> key_env;
        for (Symbol x : f.free_vars()) {
            if (auto it = env.find(x); it != env.end()) key_env.emplace_back(x.id(), it->second.id());
        }
        auto key = std::make_pair(f.id(), key_env);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        Formula out;
        switch (f.kind()) {
            case Kind::Var: {
                auto it = env.find(f.symbol());
                out = it == env.end() ? f : Formula::var(it->second);
                break;
            }
            case Kind::And:
            case Kind::Or: {
                // Renaming is stateful, so the left operand goes first.
                Formula l = run(f.lhs(), env);
                Formula r = run(f.rhs(), env);
                out = f.is(Kind::And) ? Formula::conj(l, r) : Formula::disj(l, r);
                break;
            }
            case Kind::Dia: out = Formula::dia(f.symbol(), run(f.body(), env)); break;
            case Kind::Box: out = Formula::box(f.symbol(), run(f.body(), env)); break;
            case Kind::UnivBox: out = Formula::univ_box(run(f.body(), env)); break;
            case Kind::UnivDia: out = Formula::univ_dia(run(f.body(), env)); break;
            case Kind::Mu:
            case Kind::Nu: out = binder(f, env); break;
            default: out = f; break;
        }
        memo_.emplace(std::move(key), out);
        return out;
    }

    Formula binder(Formula f, const Env& env) {
        Symbol x = f.symbol();
        if (!f.body().has_free(x)) {
            Env inner = env;
            inner.erase(x);
            return run(f.body(), inner);
        }
        Symbol name = x;
        for (;;) {
            Env inner = env;
            inner[x] = name;
            Formula candidate = Formula::fix(f.is(Kind::Mu), name, run(f.body(), inner));
            auto [it, fresh_claim] = claims_.try_emplace(name, candidate);
            if (fresh_claim || it->second == candidate) {
                used_.insert(name.str());
                return candidate;
            }
            name = fresh(x);
        }
    }

    Symbol fresh(Symbol base) {
        std::string stem = base.str();
        for (int i = 1;; ++i) {
            std::string cand = stem + "_" + std::to_string(i);
            if (used_.insert(cand).second) return Symbol(cand);
        }
    }

    std::set<std::string> used_;
    std::map<Symbol, Formula> claims_;
    std::map<std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>, Formula> memo_;
};

}  // namespace

Formula make_clean_irredundant(Formula f) {
    Cleaner c{f};
    return c.run(f);
}

std::pair<Formula, Formula> make_clean_irredundant(Formula rho1, Formula rho0) {
    Cleaner c{rho1, rho0};
    Formula a = c.run(rho1);
    Formula b = c.run(rho0);
    return {a, b};
}

// --- Guardedness -------------------------------------------------------------------

namespace {

Formula simp_and(Formula l, Formula r) {
    if (l.is(Kind::Bot) || r.is(Kind::Bot)) return Formula::bot();
    if (l.is(Kind::Top)) return r;
    if (r.is(Kind::Top)) return l;
    return Formula::conj(l, r);
}

Formula simp_or(Formula l, Formula r) {
    if (l.is(Kind::Top) || r.is(Kind::Top)) return Formula::top();
    if (l.is(Kind::Bot)) return r;
    if (r.is(Kind::Bot)) return l;
    return Formula::disj(l, r);
}

/// Replaces the unguarded occurrences of `x` by false (least) or true
/// (greatest), unfolding inner binders that hide such occurrences.
Formula expose(Formula f, Symbol x, bool least) {
    if (!occurs_unguarded(f, x)) return f;
    switch (f.kind()) {
        case Kind::Var: return least ? Formula::bot() : Formula::top();
        case Kind::And: return simp_and(expose(f.lhs(), x, least), expose(f.rhs(), x, least));
        case Kind::Or: return simp_or(expose(f.lhs(), x, least), expose(f.rhs(), x, least));
        case Kind::Mu:
        case Kind::Nu: return expose(unfold(f), x, least);
        default: return f;
    }
}

class Guarder {
public:
    Formula run(Formula f) {
        if (auto it = memo_.find(f); it != memo_.end()) return it->second;
        Formula out;
        switch (f.kind()) {
            case Kind::And: out = Formula::conj(run(f.lhs()), run(f.rhs())); break;
            case Kind::Or: out = Formula::disj(run(f.lhs()), run(f.rhs())); break;
            case Kind::Dia: out = Formula::dia(f.symbol(), run(f.body())); break;
            case Kind::Box: out = Formula::box(f.symbol(), run(f.body())); break;
            case Kind::UnivBox: out = Formula::univ_box(run(f.body())); break;
            case Kind::UnivDia: out = Formula::univ_dia(run(f.body())); break;
            case Kind::Mu:
            case Kind::Nu: {
                bool least = f.is(Kind::Mu);
                Formula body = expose(run(f.body()), f.symbol(), least);
                out = body.has_free(f.symbol()) ? Formula::fix(least, f.symbol(), body) : body;
                break;
            }
            default: out = f; break;
        }
        memo_.emplace(f, out);
        return out;
    }

private:
    std::unordered_map<Formula, Formula> memo_;
};

}  // namespace

Formula guardedness_transform(Formula f) {
    Guarder g;
    return make_clean_irredundant(g.run(f));
}

std::pair<Formula, Formula> prepare(Formula rho1, Formula rho0) {
    for (Formula f : {rho1, rho0}) {
        if (!f.closed()) throw ValidationError("formula is not closed: " + to_string(f));
        if (contains_universal(f)) {
            throw ValidationError("universal modality must be reduced before solving: " + to_string(f));
        }
    }
    auto [a, b] = make_clean_irredundant(rho1, rho0);
    FormulaDiagnostics d = validate(a, b);
    if (!d.is_alternation_free) throw ValidationError("input is not alternation-free: " + d.describe());

    Guarder g;
    auto [ga, gb] = make_clean_irredundant(g.run(a), g.run(b));
    d = validate(ga, gb);
    if (!d.ok()) throw std::logic_error("input pipeline produced an invalid formula: " + d.describe());
    return {ga, gb};
}

}  // namespace mmu
