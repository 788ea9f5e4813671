#include "mmu/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <set>
#include <unordered_map>

#include "mmu/errors.hpp"

namespace mmu {

// --- Brute force -----------------------------------------------------------------

namespace {

using Mask = std::uint32_t;

// Above this many candidate models per state count the search refuses to run.
constexpr double kModelLimit = 5e8;

struct Op {
    Kind kind;
    int lhs = -1;
    int rhs = -1;
    int sym = -1;  // atom or action index, or variable symbol id
    bool closed = true;
};

// All subformulas of a batch of problems, flattened children-first, plus the
// atoms and actions they mention.
struct Program {
    std::vector<Op> ops;
    std::vector<Symbol> atoms;
    std::vector<Symbol> actions;
    std::vector<std::pair<int, int>> roots;  // (psi, phi) per problem

    int add(Formula f, std::unordered_map<Formula, int>& index) {
        for (Formula g : subformulas(f)) {
            if (index.count(g)) continue;
            Op op{g.kind()};
            op.closed = g.closed();
            switch (g.kind()) {
                case Kind::Atom:
                case Kind::DualAtom: op.sym = intern(atoms, g.symbol()); break;
                case Kind::Dia:
                case Kind::Box:
                    op.sym = intern(actions, g.symbol());
                    op.lhs = index.at(g.body());
                    break;
                case Kind::Var: op.sym = static_cast<int>(g.symbol().id()); break;
                case Kind::Mu:
                case Kind::Nu:
                    op.sym = static_cast<int>(g.symbol().id());
                    op.lhs = index.at(g.body());
                    break;
                case Kind::UnivBox:
                case Kind::UnivDia: op.lhs = index.at(g.body()); break;
                case Kind::And:
                case Kind::Or:
                    op.lhs = index.at(g.lhs());
                    op.rhs = index.at(g.rhs());
                    break;
                default: break;
            }
            index.emplace(g, static_cast<int>(ops.size()));
            ops.push_back(op);
        }
        return index.at(f);
    }

    static int intern(std::vector<Symbol>& v, Symbol s) {
        auto it = std::find(v.begin(), v.end(), s);
        if (it != v.end()) return static_cast<int>(it - v.begin());
        v.push_back(s);
        return static_cast<int>(v.size() - 1);
    }
};

// Every family of at most k subsets of an s-element state space, with
// precomputed diamond and box answers for each target set.
struct Families {
    std::vector<std::vector<Mask>> sets;
    std::vector<std::vector<char>> dia;  // [family][target]
    std::vector<std::vector<char>> box;

    Families(std::size_t s, std::size_t k) {
        const Mask subsets = Mask{1} << s;
        std::vector<Mask> cur;
        std::function<void(Mask)> rec = [&](Mask from) {
            sets.push_back(cur);
            if (cur.size() == k) return;
            for (Mask x = from; x < subsets; ++x) {
                cur.push_back(x);
                rec(x + 1);
                cur.pop_back();
            }
        };
        rec(0);
        for (const auto& fam : sets) {
            std::vector<char> d(subsets), b(subsets);
            for (Mask t = 0; t < subsets; ++t) {
                d[t] = std::any_of(fam.begin(), fam.end(), [&](Mask x) { return (x & ~t) == 0; });
                b[t] = std::all_of(fam.begin(), fam.end(), [&](Mask x) { return (x & t) != 0; });
            }
            dia.push_back(std::move(d));
            box.push_back(std::move(b));
        }
    }
};

class MaskEvaluator {
public:
    MaskEvaluator(const Program& p, const Families& fams, std::size_t states)
        : p_(p), fams_(fams), n_(states), full_((Mask{1} << states) - 1),
          cache_(p.ops.size()), stamp_(p.ops.size(), 0) {}

    void load(const std::vector<Mask>* atoms, const std::vector<std::size_t>* fam) {
        atoms_ = atoms;
        fam_ = fam;
        ++gen_;
    }

    Mask eval(int i) {
        env_.clear();
        return run(i);
    }

private:
    Mask run(int i) {
        const Op& op = p_.ops[i];
        if (op.closed && stamp_[i] == gen_) return cache_[i];
        Mask out = 0;
        switch (op.kind) {
            case Kind::Bot: out = 0; break;
            case Kind::Top: out = full_; break;
            case Kind::Atom: out = (*atoms_)[op.sym]; break;
            case Kind::DualAtom: out = full_ & ~(*atoms_)[op.sym]; break;
            case Kind::And: out = run(op.lhs) & run(op.rhs); break;
            case Kind::Or: out = run(op.lhs) | run(op.rhs); break;
            case Kind::Dia:
            case Kind::Box: {
                Mask t = run(op.lhs);
                const auto& table = op.kind == Kind::Dia ? fams_.dia : fams_.box;
                for (std::size_t w = 0; w < n_; ++w) {
                    if (table[(*fam_)[op.sym * n_ + w]][t]) out |= Mask{1} << w;
                }
                break;
            }
            case Kind::Var: {
                auto it = std::find_if(env_.rbegin(), env_.rend(), [&](const auto& e) { return e.first == op.sym; });
                if (it == env_.rend()) throw ValidationError("free variable in brute-force input");
                out = it->second;
                break;
            }
            case Kind::Mu:
            case Kind::Nu: {
                Mask x = op.kind == Kind::Mu ? 0 : full_;
                env_.emplace_back(op.sym, x);
                for (;;) {
                    Mask next = run(op.lhs);
                    if (next == x) break;
                    x = next;
                    env_.back().second = x;
                }
                env_.pop_back();
                out = x;
                break;
            }
            case Kind::UnivBox: out = run(op.lhs) == full_ ? full_ : 0; break;
            case Kind::UnivDia: out = run(op.lhs) != 0 ? full_ : 0; break;
        }
        if (op.closed) {
            cache_[i] = out;
            stamp_[i] = gen_;
        }
        return out;
    }

    const Program& p_;
    const Families& fams_;
    std::size_t n_;
    Mask full_;
    std::vector<Mask> cache_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t gen_ = 0;
    const std::vector<Mask>* atoms_ = nullptr;
    const std::vector<std::size_t>* fam_ = nullptr;
    std::vector<std::pair<int, Mask>> env_;
};

NeighbourhoodModel to_model(const Program& p, const Families& fams, std::size_t s, const std::vector<Mask>& atoms,
                            const std::vector<std::size_t>& fam) {
    NeighbourhoodModel m(s);
    auto to_set = [&](Mask x) {
        StateSet out(s);
        for (std::size_t w = 0; w < s; ++w) out[w] = (x >> w) & 1;
        return out;
    };
    for (std::size_t i = 0; i < p.atoms.size(); ++i) m.set_atom(p.atoms[i], to_set(atoms[i]));
    for (std::size_t a = 0; a < p.actions.size(); ++a) {
        for (std::size_t w = 0; w < s; ++w) {
            for (Mask x : fams.sets[fam[a * s + w]]) m.add_neighbourhood(p.actions[a], w, to_set(x));
        }
    }
    return m;
}

// Runs the enumeration; `found(problem, model)` is called once per problem
// the first time a model for it turns up. Stops when every problem is solved.
void search(const Program& p, std::size_t max_states, std::size_t max_nbhds,
            const std::function<void(std::size_t, NeighbourhoodModel)>& found) {
    if (max_states > kBruteForceMaxStates || max_nbhds > kBruteForceMaxNeighbourhoods) {
        throw ResourceLimitError("brute-force bounds exceed " + std::to_string(kBruteForceMaxStates) + " states and " +
                                 std::to_string(kBruteForceMaxNeighbourhoods) + " neighbourhoods");
    }
    std::vector<std::size_t> open(p.roots.size());
    for (std::size_t i = 0; i < open.size(); ++i) open[i] = i;
    for (std::size_t s = 1; s <= max_states && !open.empty(); ++s) {
        Families fams(s, max_nbhds);
        const Mask subsets = Mask{1} << s;
        const std::size_t slots = p.actions.size() * s;
        double total = std::pow(double(subsets), double(p.atoms.size())) * std::pow(double(fams.sets.size()), double(slots));
        if (total > kModelLimit) throw ResourceLimitError("brute-force search space too large");
        std::vector<Mask> atoms(p.atoms.size(), 0);
        std::vector<std::size_t> fam(slots, 0);
        MaskEvaluator ev(p, fams, s);
        const Mask full = subsets - 1;
        for (;;) {
            ev.load(&atoms, &fam);
            for (std::size_t k = 0; k < open.size();) {
                auto [psi, phi] = p.roots[open[k]];
                if (ev.eval(phi) == full && ev.eval(psi) != 0) {
                    found(open[k], to_model(p, fams, s, atoms, fam));
                    open[k] = open.back();
                    open.pop_back();
                } else {
                    ++k;
                }
            }
            if (open.empty()) return;
            // Mixed-radix increment over atoms then neighbourhood slots.
            std::size_t d = 0;
            for (; d < atoms.size(); ++d) {
                if (++atoms[d] < subsets) break;
                atoms[d] = 0;
            }
            if (d < atoms.size()) continue;
            std::size_t e = 0;
            for (; e < fam.size(); ++e) {
                if (++fam[e] < fams.sets.size()) break;
                fam[e] = 0;
            }
            if (e == fam.size()) break;
        }
    }
}

}  // namespace

std::optional<NeighbourhoodModel> brute_force_sat(Formula psi, Formula phi, std::size_t max_states,
                                                  std::size_t max_nbhds) {
    Program p;
    std::unordered_map<Formula, int> index;
    p.roots.emplace_back(p.add(psi, index), p.add(phi, index));
    std::optional<NeighbourhoodModel> out;
    search(p, max_states, max_nbhds, [&](std::size_t, NeighbourhoodModel m) { out = std::move(m); });
    return out;
}

std::vector<bool> brute_force_sat_batch(const std::vector<std::pair<Formula, Formula>>& problems,
                                        std::size_t max_states, std::size_t max_nbhds, std::size_t workers) {
    std::vector<bool> out(problems.size(), false);
    workers = std::max<std::size_t>(1, std::min(workers, problems.size()));
    // Each shard compiles its own program over the atoms and actions of all
    // problems, so every shard enumerates the same models.
    std::vector<Symbol> atoms, actions;
    for (auto [psi, phi] : problems) {
        for (Formula f : {psi, phi}) {
            for (Symbol s : atoms_of(f)) Program::intern(atoms, s);
            for (Symbol s : actions_of(f)) Program::intern(actions, s);
        }
    }
    std::vector<char> found(problems.size(), 0);
    auto run = [&](std::size_t begin, std::size_t end) {
        Program p;
        p.atoms = atoms;
        p.actions = actions;
        std::unordered_map<Formula, int> index;
        for (std::size_t i = begin; i < end; ++i) {
            p.roots.emplace_back(p.add(problems[i].first, index), p.add(problems[i].second, index));
        }
        search(p, max_states, max_nbhds, [&](std::size_t i, NeighbourhoodModel) { found[begin + i] = 1; });
    };
    const std::size_t chunk = (problems.size() + workers - 1) / std::max<std::size_t>(workers, 1);
    std::vector<std::future<void>> jobs;
    for (std::size_t begin = 0; begin < problems.size(); begin += chunk) {
        jobs.push_back(std::async(std::launch::async, run, begin, std::min(problems.size(), begin + chunk)));
    }
    for (auto& j : jobs) j.get();
    for (std::size_t i = 0; i < problems.size(); ++i) out[i] = found[i];
    return out;
}

// --- Relational side -------------------------------------------------------------

RelationalModel::RelationalModel(std::vector<std::string> state_names)
    : names_(std::move(state_names)), none_(names_.size()) {}

RelationalModel::RelationalModel(std::size_t num_states) : none_(num_states) {
    for (std::size_t i = 0; i < num_states; ++i) names_.push_back("s" + std::to_string(i));
}

void RelationalModel::add_edge(Symbol a, StateId from, StateId to) {
    auto& r = rel_[a];
    if (r.empty()) r.assign(size(), empty_set());
    r.at(from).set(to);
}

const StateSet& RelationalModel::successors(Symbol a, StateId x) const {
    auto it = rel_.find(a);
    return it == rel_.end() ? none_ : it->second.at(x);
}

std::vector<Symbol> RelationalModel::actions() const {
    std::vector<Symbol> out;
    for (const auto& [a, _] : rel_) out.push_back(a);
    return out;
}

const StateSet& RelationalModel::atom(Symbol p) const {
    auto it = atoms_.find(p);
    return it == atoms_.end() ? none_ : it->second;
}

void RelationalModel::set_atom(Symbol p, StateSet ext) {
    if (ext.size() != size()) throw std::invalid_argument("atom extension has the wrong size");
    atoms_[p] = std::move(ext);
}

std::vector<Symbol> RelationalModel::atoms() const {
    std::vector<Symbol> out;
    for (const auto& [p, _] : atoms_) out.push_back(p);
    return out;
}

Symbol membership_action() { return Symbol("e"); }

namespace {

Formula translate(Formula f, std::unordered_map<Formula, Formula>& memo) {
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    const Symbol e = membership_action();
    Formula out;
    switch (f.kind()) {
        case Kind::And: out = Formula::conj(translate(f.lhs(), memo), translate(f.rhs(), memo)); break;
        case Kind::Or: out = Formula::disj(translate(f.lhs(), memo), translate(f.rhs(), memo)); break;
        case Kind::Dia: out = Formula::dia(f.symbol(), Formula::box(e, translate(f.body(), memo))); break;
        case Kind::Box: out = Formula::box(f.symbol(), Formula::dia(e, translate(f.body(), memo))); break;
        case Kind::Mu:
        case Kind::Nu: out = Formula::fix(f.is(Kind::Mu), f.symbol(), translate(f.body(), memo)); break;
        case Kind::UnivBox:
        case Kind::UnivDia: throw ValidationError("universal modalities have no relational translation");
        default: out = f; break;
    }
    memo.emplace(f, out);
    return out;
}

}  // namespace

Formula relational_translate(Formula f) {
    for (Symbol a : actions_of(f)) {
        if (a == membership_action()) throw ValidationError("action 'e' is reserved for the relational translation");
    }
    std::unordered_map<Formula, Formula> memo;
    return translate(f, memo);
}

Formula submodel_formula(Formula phi, const std::vector<Symbol>& actions) {
    std::set<std::string> used;
    for (Symbol x : variables_of(phi)) used.insert(x.str());
    std::string name = "Z";
    for (int k = 1; used.count(name); ++k) name = "Z" + std::to_string(k);
    const Symbol x(name);
    std::vector<Symbol> all = actions;
    if (std::find(all.begin(), all.end(), membership_action()) == all.end()) all.push_back(membership_action());
    Formula body = phi;
    for (Symbol a : all) body = Formula::conj(body, Formula::box(a, Formula::var(x)));
    return Formula::nu(x, body);
}

RelationalModel model_to_relational(const NeighbourhoodModel& m) {
    std::map<StateSet, std::size_t> nodes;
    std::vector<StateSet> order;
    for (Symbol a : m.actions()) {
        for (StateId w = 0; w < m.size(); ++w) {
            for (const StateSet& s : m.neighbourhoods(a, w)) {
                if (nodes.emplace(s, order.size()).second) order.push_back(s);
            }
        }
    }
    std::vector<std::string> names = m.state_names();
    for (const StateSet& s : order) {
        std::string n = "{";
        for (StateId w = s.find_first(); w != StateSet::npos; w = s.find_next(w)) {
            if (n.size() > 1) n += ",";
            n += m.state_name(w);
        }
        names.push_back(n + "}");
    }
    RelationalModel c(std::move(names));
    const std::size_t base = m.size();
    for (Symbol a : m.actions()) {
        for (StateId w = 0; w < m.size(); ++w) {
            for (const StateSet& s : m.neighbourhoods(a, w)) c.add_edge(a, w, base + nodes.at(s));
        }
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (StateId w = order[k].find_first(); w != StateSet::npos; w = order[k].find_next(w)) {
            c.add_edge(membership_action(), base + k, w);
        }
    }
    for (Symbol p : m.atoms()) {
        StateSet ext = c.empty_set();
        const StateSet& src = m.atom(p);
        for (StateId w = 0; w < m.size(); ++w) ext[w] = src[w];
        c.set_atom(p, ext);
    }
    return c;
}

NeighbourhoodModel relational_to_model(const RelationalModel& c) {
    NeighbourhoodModel m(c.state_names());
    for (Symbol a : c.actions()) {
        if (a == membership_action()) continue;
        for (StateId w = 0; w < c.size(); ++w) {
            const StateSet& succ = c.successors(a, w);
            for (StateId n = succ.find_first(); n != StateSet::npos; n = succ.find_next(n)) {
                m.add_neighbourhood(a, w, c.successors(membership_action(), n));
            }
        }
    }
    for (Symbol p : c.atoms()) m.set_atom(p, c.atom(p));
    return m;
}

namespace {

StateSet rel_eval(const RelationalModel& c, Formula f, Valuation& v) {
    switch (f.kind()) {
        case Kind::Bot: return c.empty_set();
        case Kind::Top: return c.full_set();
        case Kind::Atom: return c.atom(f.symbol());
        case Kind::DualAtom: return ~c.atom(f.symbol());
        case Kind::And: return rel_eval(c, f.lhs(), v) & rel_eval(c, f.rhs(), v);
        case Kind::Or: return rel_eval(c, f.lhs(), v) | rel_eval(c, f.rhs(), v);
        case Kind::Dia:
        case Kind::Box: {
            StateSet t = rel_eval(c, f.body(), v);
            StateSet out = c.empty_set();
            for (StateId w = 0; w < c.size(); ++w) {
                const StateSet& succ = c.successors(f.symbol(), w);
                out[w] = f.is(Kind::Dia) ? succ.intersects(t) : succ.is_subset_of(t);
            }
            return out;
        }
        case Kind::Var: {
            auto it = v.find(f.symbol());
            if (it == v.end()) throw ValidationError("free variable " + f.symbol().str() + " has no valuation");
            return it->second;
        }
        case Kind::Mu:
        case Kind::Nu: {
            const Symbol x = f.symbol();
            std::optional<StateSet> saved;
            if (auto it = v.find(x); it != v.end()) saved = it->second;
            StateSet cur = f.is(Kind::Mu) ? c.empty_set() : c.full_set();
            for (;;) {
                v[x] = cur;
                StateSet next = rel_eval(c, f.body(), v);
                if (next == cur) break;
                cur = std::move(next);
            }
            if (saved) v[x] = *saved;
            else v.erase(x);
            return cur;
        }
        case Kind::UnivBox: return rel_eval(c, f.body(), v).all() ? c.full_set() : c.empty_set();
        case Kind::UnivDia: return rel_eval(c, f.body(), v).any() ? c.full_set() : c.empty_set();
    }
    throw std::logic_error("unknown formula kind");
}

}  // namespace

StateSet relational_eval(const RelationalModel& c, Formula f, const Valuation& v) {
    Valuation env = v;
    return rel_eval(c, f, env);
}

}  // namespace mmu
