#include "mmu/tableau.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mmu/syntax.hpp"

namespace mmu {

std::size_t Tableau::state_count() const {
    std::size_t k = 0;
    for (const auto& n : nodes_) k += n.is_state;
    return k;
}

std::size_t Tableau::add_node(TableauNode n) {
    nodes_.push_back(std::move(n));
    edges_.emplace_back();
    return nodes_.size() - 1;
}

Tableau tableau_from_certificate(const StrategyCertificate& cert, const ClosureTable& ct) {
    if (cert.rho1 != ct.rho1() || cert.rho0 != ct.rho0()) {
        throw std::invalid_argument("certificate and closure disagree on rho1/rho0");
    }
    if (auto v = verify_certificate(cert); !v.ok()) {
        throw std::invalid_argument(std::string("certificate rejected (") + failure_code(v.failure) + "): " + v.message);
    }
    std::map<std::pair<FormulaSet, FormulaSet>, std::string> eloise_id;
    for (const auto& [id, n] : cert.nodes) {
        if (n.eloise) eloise_id.emplace(std::make_pair(n.formulas, n.focus), id);
    }

    Tableau t;
    std::map<std::string, std::size_t> entry;
    std::deque<std::string> work;
    auto enter = [&](const std::string& id) {
        auto [it, fresh] = entry.try_emplace(id, 0);
        if (fresh) {
            const auto& n = cert.nodes.at(id);
            FormulaSet label = n.formulas;
            label.insert(cert.rho0);
            it->second = t.add_node({label, n.focus, is_formal_state(label), id, 0});
            work.push_back(id);
        }
        return it->second;
    };
    enter(cert.initial);
    while (!work.empty()) {
        std::string id = work.front();
        work.pop_front();
        std::size_t cur = entry.at(id);
        const auto& mv = cert.moves.at(id);
        std::size_t consumed = 0;
        for (const auto& l : mv.word) {
            ++consumed;
            const auto& here = t.node(cur);
            if (!here.label.contains(l.formula)) continue;  // letters that change nothing
            FormulaSet label = gamma(here.label, l);
            FormulaSet focus = delta_set(ct, here.focus, Letter{l});
            std::size_t next = t.add_node({label, focus, is_formal_state(label), id, consumed});
            t.add_edge(cur, {next, Letter{l}});
            cur = next;
        }
        const auto& state = t.node(cur);
        if (!state.is_state) throw std::logic_error("witness word of node " + id + " does not end in a state");
        FormulaSet label = state.label;
        FormulaSet focus = state.focus;
        for (const auto& r : abelard_moves(ct, label, focus)) {
            const std::string& succ = eloise_id.at({r.formulas, r.focus});
            std::size_t child = enter(succ);
            t.add_edge(cur, {child, Letter{r.letter}});
        }
    }
    return t;
}

std::optional<std::string> check_pre_tableau(const Tableau& t, const ClosureTable& ct) {
    for (std::size_t v = 0; v < t.size(); ++v) {
        const auto& n = t.node(v);
        const auto& out = t.edges(v);
        if (n.is_state) {
            for (Formula d : n.label) {
                if (!d.is(Kind::Dia)) continue;
                for (Formula b : n.label) {
                    if (!b.is(Kind::Box) || b.symbol() != d.symbol()) continue;
                    FormulaSet want{d.body(), b.body(), ct.rho0()};
                    bool found = false;
                    for (const auto& e : out) {
                        if (t.node(e.target).label == want) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) return "node " + std::to_string(v) + " lacks a child for " + to_string(d) + ", " + to_string(b);
                }
            }
            continue;
        }
        if (out.size() != 1) return "node " + std::to_string(v) + " is not a state but has " + std::to_string(out.size()) + " children";
        const auto* l = std::get_if<PropLetter>(&out[0].letter);
        if (!l || !n.label.contains(l->formula) || gamma(n.label, *l) != t.node(out[0].target).label) {
            return "node " + std::to_string(v) + " has a child not produced by a rule";
        }
    }
    return std::nullopt;
}

TraceCheck all_traces_finite(const Tableau& t, const ClosureTable& ct) {
    // Product vertices (node, deferral), numbered densely.
    std::map<std::pair<std::size_t, Formula>, std::size_t> id;
    std::vector<std::pair<std::size_t, Formula>> verts;
    for (std::size_t v = 0; v < t.size(); ++v) {
        for (Formula f : t.node(v).label) {
            if (ct.is_deferral(f)) {
                id.emplace(std::make_pair(v, f), verts.size());
                verts.emplace_back(v, f);
            }
        }
    }
    std::vector<std::vector<std::size_t>> succ(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        auto [v, f] = verts[i];
        for (const auto& e : t.edges(v)) {
            for (Formula g : delta(ct, f, e.letter)) {
                auto it = id.find({e.target, g});
                if (it == id.end()) throw std::logic_error("tracked deferral missing from the child label");
                succ[i].push_back(it->second);
            }
        }
    }

    // Longest path by iterative DFS; a grey successor means a cycle.
    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> colour(verts.size(), White);
    std::vector<std::size_t> longest(verts.size(), 1);
    TraceCheck out;
    for (std::size_t s = 0; s < verts.size(); ++s) {
        if (colour[s] != White) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
        colour[s] = Grey;
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            if (k < succ[v].size()) {
                std::size_t u = succ[v][k++];
                if (colour[u] == Grey) return out;
                if (colour[u] == White) {
                    colour[u] = Grey;
                    stack.emplace_back(u, 0);
                }
                continue;
            }
            for (std::size_t u : succ[v]) longest[v] = std::max(longest[v], longest[u] + 1);
            colour[v] = Black;
            stack.pop_back();
        }
    }
    out.finite = true;
    out.tab.assign(t.size(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        auto v = verts[i].first;
        out.tab[v] = std::max(out.tab[v], longest[i]);
    }
    return out;
}

NeighbourhoodModel model_from_tableau(const Tableau& t, const ClosureTable& ct) {
    TraceCheck tc = all_traces_finite(t, ct);
    if (!tc.finite) throw std::invalid_argument("tableau has an infinite trace");

    std::vector<std::size_t> state_of_node(t.size(), SIZE_MAX);
    std::vector<std::size_t> node_of_state;
    for (std::size_t v = 0; v < t.size(); ++v) {
        if (t.node(v).is_state) {
            state_of_node[v] = node_of_state.size();
            node_of_state.push_back(v);
        }
    }
    NeighbourhoodModel m(node_of_state.size());
    for (Symbol p : ct.atoms()) {
        StateSet ext = m.empty_set();
        for (std::size_t x = 0; x < node_of_state.size(); ++x) {
            if (t.node(node_of_state[x]).label.contains(Formula::atom(p))) ext.set(x);
        }
        m.set_atom(p, std::move(ext));
    }
    // Non-state nodes have a single child; follow them to the state they
    // unfold into.
    auto resolve = [&](std::size_t v) {
        for (std::size_t steps = 0; !t.node(v).is_state; ++steps) {
            if (t.edges(v).size() != 1 || steps > t.size()) throw std::invalid_argument("propositional path does not reach a state");
            v = t.edges(v)[0].target;
        }
        return state_of_node[v];
    };
    for (Symbol a : ct.actions()) {
        for (std::size_t x = 0; x < node_of_state.size(); ++x) {
            std::size_t v = node_of_state[x];
            const auto& label = t.node(v).label;
            std::vector<Formula> dias;
            std::vector<Formula> boxes;
            for (Formula f : label) {
                if (f.is(Kind::Dia) && f.symbol() == a) dias.push_back(f);
                if (f.is(Kind::Box) && f.symbol() == a) boxes.push_back(f);
            }
            if (boxes.empty()) {
                m.add_neighbourhood(a, x, m.empty_set());
                continue;
            }
            for (Formula d : dias) {
                StateSet s = m.empty_set();
                for (Formula b : boxes) {
                    FormulaSet want{d.body(), b.body(), ct.rho0()};
                    std::optional<std::size_t> best;
                    for (const auto& e : t.edges(v)) {
                        if (t.node(e.target).label != want) continue;
                        if (!best || tc.tab[e.target] < tc.tab[*best]) best = e.target;
                    }
                    if (!best) throw std::invalid_argument("missing modal child in the tableau");
                    s.set(resolve(*best));
                }
                m.add_neighbourhood(a, x, std::move(s));
            }
        }
    }
    return m;
}

NeighbourhoodModel extract_model(const StrategyCertificate& cert, const ClosureTable& ct) {
    return model_from_tableau(tableau_from_certificate(cert, ct), ct);
}

NeighbourhoodModel extract_model(const SatResult& r) {
    if (!r.satisfiable || !r.certificate) throw std::invalid_argument("no certificate to extract a model from");
    return extract_model(*r.certificate, *r.closure);
}

std::string dump_tableau(const Tableau& t) {
    std::ostringstream os;
    for (std::size_t v = 0; v < t.size(); ++v) {
        const auto& n = t.node(v);
        os << 'n' << v << (n.is_state ? " state" : "") << " label=" << to_string(n.label)
           << " focus=" << to_string(n.focus);
        for (const auto& e : t.edges(v)) {
            os << " -> n" << e.target;
            if (const auto* p = std::get_if<PropLetter>(&e.letter)) os << ' ' << to_string(*p);
            else {
                const auto& m = std::get<ModalLetter>(e.letter);
                os << " (" << to_string(m.dia) << ", " << to_string(m.box) << ')';
            }
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace mmu
