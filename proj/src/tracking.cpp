#include "mmu/tracking.hpp"

#include <algorithm>

#include "mmu/errors.hpp"
#include "mmu/syntax.hpp"

namespace mmu {

PropLetter make_prop_letter(const ClosureTable& ct, Formula chi, int bit) {
    if (!ct.contains(chi)) throw ValidationError("letter formula is not in the closure: " + to_string(chi));
    if (bit != 0 && bit != 1) throw ValidationError("letter bit must be 0 or 1");
    if (chi.is(Kind::Or)) return {chi, bit};
    if (chi.is(Kind::And) || chi.is_fixpoint()) {
        if (bit != 0) throw ValidationError("bit must be 0 for a conjunction or fixpoint: " + to_string(chi));
        return {chi, 0};
    }
    throw ValidationError("propositional letter needs a conjunction, disjunction or fixpoint: " + to_string(chi));
}

ModalLetter make_modal_letter(const ClosureTable& ct, Formula dia, Formula box) {
    if (!ct.contains(dia) || !ct.contains(box)) throw ValidationError("modal letter component is not in the closure");
    if (!dia.is(Kind::Dia) || !box.is(Kind::Box)) throw ValidationError("modal letter needs a diamond and a box");
    if (dia.symbol() != box.symbol()) throw ValidationError("modal letter mixes actions");
    return {dia, box};
}

bool letter_less(const ClosureTable& ct, const PropLetter& a, const PropLetter& b) {
    auto ia = ct.index_of(a.formula);
    auto ib = ct.index_of(b.formula);
    return ia != ib ? ia < ib : a.bit < b.bit;
}

bool word_shortlex_less(const ClosureTable& ct, const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (letter_less(ct, a[i], b[i])) return true;
        if (letter_less(ct, b[i], a[i])) return false;
    }
    return false;
}

FormulaSet deferrals(const ClosureTable& ct) {
    auto d = ct.deferrals();
    return FormulaSet(d.begin(), d.end());
}

FormulaSet delta(const ClosureTable& ct, Formula foc, const Letter& l) {
    if (!ct.is_deferral(foc)) throw ValidationError("not a deferral: " + to_string(foc));
    FormulaSet out;
    auto keep = [&](Formula f) {
        if (ct.is_deferral(f)) out.insert(f);
    };
    if (const auto* p = std::get_if<PropLetter>(&l)) {
        if (p->formula != foc) return {foc};
        switch (foc.kind()) {
            case Kind::And:
                keep(foc.lhs());
                keep(foc.rhs());
                break;
            case Kind::Or: keep(p->bit == 0 ? foc.lhs() : foc.rhs()); break;
            case Kind::Mu: out.insert(unfold(foc)); break;
            default: throw ValidationError("malformed letter for focus " + to_string(foc));
        }
        return out;
    }
    const auto& m = std::get<ModalLetter>(l);
    if (foc == m.dia) keep(m.dia.body());
    else if (foc == m.box) keep(m.box.body());
    return out;
}

FormulaSet delta_set(const ClosureTable& ct, const FormulaSet& foc, const Letter& l) {
    FormulaSet out;
    for (Formula f : foc) {
        FormulaSet d = delta(ct, f, l);
        out.insert(d.begin(), d.end());
    }
    return out;
}

FormulaSet delta_set(const ClosureTable& ct, FormulaSet foc, std::span<const PropLetter> w) {
    for (const auto& l : w) foc = delta_set(ct, foc, Letter{l});
    return foc;
}

FormulaSet gamma(FormulaSet g, const PropLetter& l) {
    auto it = g.find(l.formula);
    if (it == g.end()) return g;
    g.erase(it);
    Formula chi = l.formula;
    switch (chi.kind()) {
        case Kind::Or: g.insert(l.bit == 0 ? chi.lhs() : chi.rhs()); break;
        case Kind::And:
            g.insert(chi.lhs());
            g.insert(chi.rhs());
            break;
        case Kind::Mu:
        case Kind::Nu: g.insert(unfold(chi)); break;
        default: throw ValidationError("malformed propositional letter: " + to_string(chi));
    }
    return g;
}

FormulaSet gamma(FormulaSet g, std::span<const PropLetter> w) {
    for (const auto& l : w) g = gamma(std::move(g), l);
    return g;
}

bool is_contradictory(const FormulaSet& g) {
    for (Formula f : g) {
        if (f.is(Kind::Bot)) return true;
        if (f.is(Kind::Atom) && g.contains(Formula::dual_atom(f.symbol()))) return true;
    }
    return false;
}

bool is_formal_state(const FormulaSet& g) {
    if (is_contradictory(g)) return false;
    return std::none_of(g.begin(), g.end(), [](Formula f) {
        return f.is(Kind::And) || f.is(Kind::Or) || f.is_fixpoint();
    });
}

std::string to_string(const FormulaSet& g) {
    std::vector<std::string> parts;
    for (Formula f : g) parts.push_back(to_string(f));
    std::sort(parts.begin(), parts.end());
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    return out + "}";
}

std::string to_string(const PropLetter& l) { return "(" + to_string(l.formula) + ", " + std::to_string(l.bit) + ")"; }

}  // namespace mmu
