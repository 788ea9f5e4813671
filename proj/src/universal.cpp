#include "mmu/universal.hpp"

#include <unordered_map>

#include "mmu/errors.hpp"
#include "mmu/normal_forms.hpp"
#include "mmu/semantics.hpp"
#include "mmu/syntax.hpp"
#include "mmu/tableau.hpp"

namespace mmu {

std::vector<Formula> universal_subformulas(Formula f) {
    std::vector<Formula> out;
    for (Formula g : subformulas(f)) {
        if (g.is_universal()) out.push_back(g);
    }
    return out;
}

namespace {

Formula replace(Formula f, const std::unordered_map<Formula, bool>& truth, std::unordered_map<Formula, Formula>& memo) {
    if (!contains_universal(f)) return f;
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    Formula out;
    switch (f.kind()) {
        case Kind::UnivBox:
        case Kind::UnivDia: out = truth.at(f) ? Formula::top() : Formula::bot(); break;
        case Kind::And: out = Formula::conj(replace(f.lhs(), truth, memo), replace(f.rhs(), truth, memo)); break;
        case Kind::Or: out = Formula::disj(replace(f.lhs(), truth, memo), replace(f.rhs(), truth, memo)); break;
        case Kind::Dia: out = Formula::dia(f.symbol(), replace(f.body(), truth, memo)); break;
        case Kind::Box: out = Formula::box(f.symbol(), replace(f.body(), truth, memo)); break;
        case Kind::Mu:
        case Kind::Nu: out = Formula::fix(f.is(Kind::Mu), f.symbol(), replace(f.body(), truth, memo)); break;
        default: out = f; break;
    }
    memo.emplace(f, out);
    return out;
}

Formula conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::top();
    Formula out = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
    return out;
}

}  // namespace

Formula apply_guess(Formula f, const std::vector<Formula>& universals, const std::vector<bool>& guess) {
    std::unordered_map<Formula, bool> truth;
    for (std::size_t i = 0; i < universals.size(); ++i) truth.emplace(universals[i], guess.at(i));
    std::unordered_map<Formula, Formula> memo;
    return replace(f, truth, memo);
}

std::vector<UniversalInstance> reduce_universal(Formula f, std::size_t guess_cap) {
    if (!f.closed()) throw ValidationError("formula is not closed: " + to_string(f));
    std::vector<Formula> us = universal_subformulas(f);
    if (us.size() > guess_cap) {
        throw ResourceLimitError(std::to_string(us.size()) + " universal subformulas exceed the guess cap of " +
                                 std::to_string(guess_cap));
    }
    std::vector<UniversalInstance> out;
    const std::uint64_t count = std::uint64_t{1} << us.size();
    out.reserve(count);
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        UniversalInstance inst;
        inst.universals = us;
        // Guess "true" first for every subformula, so the all-true instance is tried first.
        for (std::size_t i = 0; i < us.size(); ++i) inst.guess.push_back(!(bits >> i & 1));
        inst.core = apply_guess(f, us, inst.guess);
        std::vector<Formula> globals;
        for (std::size_t i = 0; i < us.size(); ++i) {
            Formula chi = apply_guess(us[i].body(), us, inst.guess);
            bool box = us[i].is(Kind::UnivBox);
            bool truth = inst.guess[i];
            if (box && truth) globals.push_back(chi);
            else if (!box && !truth) globals.push_back(negation_nnf(chi));
            else if (!box && truth) inst.side.push_back(chi);
            else inst.side.push_back(negation_nnf(chi));
        }
        inst.global = conj_all(globals);
        out.push_back(std::move(inst));
    }
    return out;
}

SolveResult solve(Formula psi, Formula global, const SolveOptions& opts, std::size_t guess_cap) {
    SolveResult res;
    if (!contains_universal(psi) && !contains_universal(global)) {
        SatResult r = decide_sat(psi, global, opts);
        res.satisfiable = r.satisfiable;
        if (r.satisfiable) res.model = extract_model(r);
        res.direct = std::move(r);
        return res;
    }
    if (!global.closed()) throw ValidationError("global assumption is not closed: " + to_string(global));
    Formula whole = global.is(Kind::Top) ? psi : Formula::conj(psi, Formula::univ_box(global));
    for (auto& inst : reduce_universal(whole, guess_cap)) {
        SatResult core = decide_sat(inst.core, inst.global, opts);
        if (!core.satisfiable) continue;
        std::vector<SatResult> sides;
        bool all = true;
        for (Formula s : inst.side) {
            sides.push_back(decide_sat(s, inst.global, opts));
            if (!sides.back().satisfiable) {
                all = false;
                break;
            }
        }
        if (!all) continue;
        // Models of a global assumption are closed under disjoint union.
        NeighbourhoodModel m = extract_model(core);
        for (std::size_t i = 0; i < sides.size(); ++i) {
            m = disjoint_union(m, extract_model(sides[i]), i == 0 ? "c_" : "", "side" + std::to_string(i) + "_");
        }
        if (!extension(m, whole).any()) throw std::logic_error("universal reduction produced a non-model");
        res.satisfiable = true;
        res.model = std::move(m);
        res.instance = std::move(inst);
        return res;
    }
    return res;
}

}  // namespace mmu
