#pragma once

// Shared inputs for the unit and acceptance suites.

#include <map>
#include <string>
#include <vector>

#include "mmu/formula.hpp"
#include "mmu/model.hpp"
#include "mmu/normal_forms.hpp"
#include "mmu/semantics.hpp"
#include "mmu/syntax.hpp"

namespace fixtures {

using namespace mmu;

inline Formula F(const char* text) { return parse_formula(text); }

inline StateSet set_of(const NeighbourhoodModel& m, std::initializer_list<const char*> names) {
    StateSet s = m.empty_set();
    for (const char* n : names) s.set(*m.find_state(n));
    return s;
}

/// F1: x1 has neighbourhoods {u1,v11} and {v11,v12}; p on x1, v11, v12.
inline NeighbourhoodModel bisim_left() {
    NeighbourhoodModel m({"x1", "u1", "v11", "v12"});
    m.add_neighbourhood(Symbol("a"), 0, set_of(m, {"u1", "v11"}));
    m.add_neighbourhood(Symbol("a"), 0, set_of(m, {"v11", "v12"}));
    m.set_atom(Symbol("p"), set_of(m, {"x1", "v11", "v12"}));
    return m;
}

/// F2: x2 has the single neighbourhood {v2}; p on x2, v2.
inline NeighbourhoodModel bisim_right() {
    NeighbourhoodModel m({"x2", "u2", "v2"});
    m.add_neighbourhood(Symbol("a"), 0, set_of(m, {"v2"}));
    m.set_atom(Symbol("p"), set_of(m, {"x2", "v2"}));
    return m;
}

/// {(x1,x2), (u1,u2), (v11,v2), (v12,v2)}
inline StateRelation bisim_relation() { return {{0, 0}, {1, 1}, {2, 2}, {3, 2}}; }

/// Closed formulas over one atom and one action with exactly `size` tree
/// nodes. Binders are named by nesting depth, so alpha-variants coincide.
class SmallFormulas {
public:
    SmallFormulas(Symbol atom, Symbol action) : p_(atom), a_(action) {}

    std::vector<Formula> closed(std::size_t size) { return of(size, 0); }

private:
    // All formulas of the given size whose free variables are among the
    // first `depth` binder names.
    const std::vector<Formula>& of(std::size_t size, std::size_t depth) {
        auto key = std::make_pair(size, depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<Formula> out;
        if (size == 1) {
            out = {Formula::top(), Formula::bot(), Formula::atom(p_), Formula::dual_atom(p_)};
            for (std::size_t d = 0; d < depth; ++d) out.push_back(Formula::var(var(d)));
        } else {
            for (Formula b : of(size - 1, depth)) {
                out.push_back(Formula::dia(a_, b));
                out.push_back(Formula::box(a_, b));
            }
            for (Formula b : of(size - 1, depth + 1)) {
                if (!b.has_free(var(depth))) continue;
                out.push_back(Formula::mu(var(depth), b));
                out.push_back(Formula::nu(var(depth), b));
            }
            for (std::size_t l = 1; l + 1 < size; ++l) {
                const auto& ls = of(l, depth);
                const auto& rs = of(size - 1 - l, depth);
                for (Formula x : ls) {
                    for (Formula y : rs) {
                        out.push_back(Formula::conj(x, y));
                        out.push_back(Formula::disj(x, y));
                    }
                }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    static Symbol var(std::size_t d) { return Symbol("X" + std::to_string(d)); }

    Symbol p_;
    Symbol a_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Formula>> memo_;
};

}  // namespace fixtures
