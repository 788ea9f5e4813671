#include "mmu/semantics.hpp"

#include <set>
#include <stdexcept>

#include "mmu/errors.hpp"
#include "mmu/syntax.hpp"

namespace mmu {

StateSet ModelChecker::diamond(Symbol a, const StateSet& target) const {
    StateSet out = model_.empty_set();
    for (StateId w = 0; w < model_.size(); ++w) {
        for (const auto& s : model_.neighbourhoods(a, w)) {
            if (s.is_subset_of(target)) {
                out.set(w);
                break;
            }
        }
    }
    return out;
}

StateSet ModelChecker::box(Symbol a, const StateSet& target) const {
    StateSet out = model_.full_set();
    for (StateId w = 0; w < model_.size(); ++w) {
        for (const auto& s : model_.neighbourhoods(a, w)) {
            if (!s.intersects(target)) {
                out.reset(w);
                break;
            }
        }
    }
    return out;
}

StateSet ModelChecker::extension(Formula f, const Valuation& v) {
    for (Symbol x : f.free_vars()) {
        auto it = v.find(x);
        if (it == v.end()) throw ValidationError("free variable '" + x.str() + "' is not covered by the valuation");
        if (it->second.size() != model_.size()) throw std::invalid_argument("valuation has the wrong universe size");
    }
    return eval(f, v);
}

StateSet ModelChecker::eval(Formula f, const Valuation& v) {
    const bool closed = f.closed();
    if (closed) {
        if (auto it = closed_.find(f); it != closed_.end()) return it->second;
    }
    StateSet out;
    switch (f.kind()) {
        case Kind::Bot: out = model_.empty_set(); break;
        case Kind::Top: out = model_.full_set(); break;
        case Kind::Atom: out = model_.atom(f.symbol()); break;
        case Kind::DualAtom: out = ~model_.atom(f.symbol()); break;
        case Kind::Var: out = v.at(f.symbol()); break;
        case Kind::And: out = eval(f.lhs(), v) & eval(f.rhs(), v); break;
        case Kind::Or: out = eval(f.lhs(), v) | eval(f.rhs(), v); break;
        case Kind::Dia: out = diamond(f.symbol(), eval(f.body(), v)); break;
        case Kind::Box: out = box(f.symbol(), eval(f.body(), v)); break;
        case Kind::UnivBox: out = eval(f.body(), v).all() ? model_.full_set() : model_.empty_set(); break;
        case Kind::UnivDia: out = eval(f.body(), v).any() ? model_.full_set() : model_.empty_set(); break;
        case Kind::Mu:
        case Kind::Nu: {
            // Kleene iteration from the bottom or top element; stops as soon as
            // two consecutive approximants agree.
            Valuation inner = v;
            StateSet& cur = inner[f.symbol()];
            cur = f.is(Kind::Mu) ? model_.empty_set() : model_.full_set();
            for (;;) {
                StateSet next = eval(f.body(), inner);
                if (next == cur) break;
                cur = std::move(next);
            }
            out = cur;
            break;
        }
    }
    if (closed) closed_.emplace(f, out);
    return out;
}

StateSet extension(const NeighbourhoodModel& m, Formula f, const Valuation& v) {
    ModelChecker mc(m);
    return mc.extension(f, v);
}

bool is_global_model(const NeighbourhoodModel& m, Formula phi) { return extension(m, phi).all(); }

// --- Timeouts --------------------------------------------------------------------

TimeoutVector timeout_step(const TimeoutVector& m, std::size_t i, std::size_t num_states) {
    if (i == 0 || i > m.size() || m[i - 1] == 0) throw std::invalid_argument("m@i is undefined for this position");
    TimeoutVector out = m;
    out[i - 1] -= 1;
    for (std::size_t j = i; j < out.size(); ++j) out[j] = num_states;
    return out;
}

TimeoutEvaluator::TimeoutEvaluator(const NeighbourhoodModel& model, const ClosureTable& ct)
    : checker_(model), ct_(ct) {}

TimeoutVector TimeoutEvaluator::full_timeout() const {
    return TimeoutVector(ct_.max_idx(), checker_.model().size());
}

StateSet TimeoutEvaluator::extension(Formula f, const TimeoutVector& m) {
    if (m.size() != ct_.max_idx()) throw std::invalid_argument("timeout vector has the wrong length");
    for (std::size_t x : m) {
        if (x > checker_.model().size()) throw std::invalid_argument("timeout entry exceeds |W|");
    }
    if (!ct_.contains(f)) throw ValidationError("formula is not in the closure: " + to_string(f));
    return eval(f, m);
}

StateSet TimeoutEvaluator::eval(Formula f, const TimeoutVector& m) {
    if (!ct_.is_deferral(f)) return checker_.extension(f);
    auto key = std::make_pair(f, m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto& model = checker_.model();
    StateSet out;
    switch (f.kind()) {
        case Kind::And: out = eval(f.lhs(), m) & eval(f.rhs(), m); break;
        case Kind::Or: out = eval(f.lhs(), m) | eval(f.rhs(), m); break;
        case Kind::Dia: out = checker_.diamond(f.symbol(), eval(f.body(), m)); break;
        case Kind::Box: out = checker_.box(f.symbol(), eval(f.body(), m)); break;
        case Kind::Mu: {
            std::size_t i = ct_.idx(f.symbol());
            out = m.at(i - 1) == 0 ? model.empty_set() : eval(unfold(f), timeout_step(m, i, model.size()));
            break;
        }
        default:
            throw std::logic_error("unexpected deferral shape: " + to_string(f));
    }
    memo_.emplace(std::move(key), out);
    return out;
}

// --- Bisimulation ------------------------------------------------------------------

namespace {

std::vector<Symbol> union_of(std::vector<Symbol> a, const std::vector<Symbol>& b) {
    std::set<Symbol> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return {s.begin(), s.end()};
}

}  // namespace

bool check_monotone_bisimulation(const NeighbourhoodModel& m1, const NeighbourhoodModel& m2,
                                 const StateRelation& s) {
    // image[u] = {v | (u,v) in S}, preimage[v] = {u | (u,v) in S}
    std::vector<StateSet> image(m1.size(), m2.empty_set());
    std::vector<StateSet> preimage(m2.size(), m1.empty_set());
    for (auto [u, v] : s) {
        if (u >= m1.size() || v >= m2.size()) throw std::invalid_argument("relation mentions an unknown state");
        image[u].set(v);
        preimage[v].set(u);
    }
    auto covered_by = [](const StateSet& inner, const StateSet& outer, const std::vector<StateSet>& link) {
        // every element of `inner` is linked to some element of `outer`
        for (auto x = inner.find_first(); x != StateSet::npos; x = inner.find_next(x)) {
            if (!link[x].intersects(outer)) return false;
        }
        return true;
    };
    const auto atoms = union_of(m1.atoms(), m2.atoms());
    const auto actions = union_of(m1.actions(), m2.actions());
    for (auto [x, y] : s) {
        for (Symbol p : atoms) {
            if (m1.atom(p).test(x) != m2.atom(p).test(y)) return false;
        }
        for (Symbol a : actions) {
            const auto& n1 = m1.neighbourhoods(a, x);
            const auto& n2 = m2.neighbourhoods(a, y);
            for (const auto& A : n1) {
                bool found = false;
                for (const auto& B : n2) {
                    if (covered_by(B, A, preimage)) {
                        found = true;
                        break;
                    }
                }
                if (!found) return false;
            }
            for (const auto& B : n2) {
                bool found = false;
                for (const auto& A : n1) {
                    if (covered_by(A, B, image)) {
                        found = true;
                        break;
                    }
                }
                if (!found) return false;
            }
        }
    }
    return true;
}

std::pair<NeighbourhoodModel, std::vector<StateId>> induced_submodel(const NeighbourhoodModel& m,
                                                                     const StateSet& keep) {
    std::vector<StateId> old_of_new;
    std::vector<std::string> names;
    std::vector<StateId> new_of_old(m.size(), StateSet::npos);
    for (auto w = keep.find_first(); w != StateSet::npos; w = keep.find_next(w)) {
        new_of_old[w] = old_of_new.size();
        old_of_new.push_back(w);
        names.push_back(m.state_name(w));
    }
    NeighbourhoodModel sub(std::move(names));
    auto restrict = [&](const StateSet& s) {
        StateSet out = sub.empty_set();
        for (auto w = s.find_first(); w != StateSet::npos; w = s.find_next(w)) out.set(new_of_old[w]);
        return out;
    };
    for (Symbol p : m.atoms()) sub.set_atom(p, restrict(m.atom(p) & keep));
    for (Symbol a : m.actions()) {
        for (StateId nw = 0; nw < old_of_new.size(); ++nw) {
            for (const auto& s : m.neighbourhoods(a, old_of_new[nw])) {
                if (s.is_subset_of(keep)) sub.add_neighbourhood(a, nw, restrict(s));
            }
        }
    }
    return {std::move(sub), std::move(old_of_new)};
}

bool submodel_modality(const NeighbourhoodModel& m, Formula phi, StateId w) {
    if (m.size() > kSubmodelStateLimit) {
        throw ResourceLimitError("submodel modality is limited to " + std::to_string(kSubmodelStateLimit) +
                                 " states");
    }
    if (w >= m.size()) throw std::invalid_argument("unknown state");
    // Any submodel on W' is bisimilar to the one keeping exactly the
    // neighbourhoods inside W', so only that candidate needs checking.
    const std::size_t n = m.size();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        if (!(bits >> w & 1)) continue;
        StateSet keep(n, bits);
        auto [sub, old_of_new] = induced_submodel(m, keep);
        StateRelation incl;
        for (StateId i = 0; i < old_of_new.size(); ++i) incl.emplace_back(i, old_of_new[i]);
        if (!check_monotone_bisimulation(sub, m, incl)) continue;
        if (extension(sub, phi).all()) return true;
    }
    return false;
}

}  // namespace mmu
