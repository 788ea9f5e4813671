#include "mmu/formula.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_set>

namespace mmu {

namespace detail {

struct Node {
    Kind kind;
    std::uint32_t id;
    Symbol symbol;
    const Node* lhs;
    const Node* rhs;
    std::vector<Symbol> free_vars;
};

namespace {

struct NodeKey {
    Kind kind;
    std::uint32_t symbol;
    const Node* lhs;
    const Node* rhs;
    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.kind);
        h = h * 1000003u ^ k.symbol;
        h = h * 1000003u ^ std::hash<const void*>{}(k.lhs);
        h = h * 1000003u ^ std::hash<const void*>{}(k.rhs);
        return h;
    }
};

struct Tables {
    std::mutex symbol_mutex;
    std::deque<std::string> symbol_names;
    std::unordered_map<std::string, std::uint32_t> symbol_ids;

    std::mutex node_mutex;
    std::deque<Node> nodes;
    std::unordered_map<NodeKey, const Node*, NodeKeyHash> unique;
};

Tables& tables() {
    static Tables t;
    return t;
}

}  // namespace
}  // namespace detail

// --- Symbol -----------------------------------------------------------------

Symbol::Symbol(std::string_view name) {
    auto& t = detail::tables();
    std::lock_guard lock(t.symbol_mutex);
    auto [it, inserted] = t.symbol_ids.try_emplace(std::string(name), 0);
    if (inserted) {
        it->second = static_cast<std::uint32_t>(t.symbol_names.size());
        t.symbol_names.emplace_back(name);
    }
    id_ = it->second;
}

const std::string& Symbol::str() const {
    static const std::string kEmpty;
    if (!valid()) return kEmpty;
    auto& t = detail::tables();
    std::lock_guard lock(t.symbol_mutex);
    return t.symbol_names[id_];
}

// --- Formula construction ---------------------------------------------------

Formula Formula::make(Kind k, Symbol s, Formula l, Formula r) {
    auto& t = detail::tables();
    const detail::NodeKey key{k, s.valid() ? s.id() : 0xffffffffu, l.node_, r.node_};
    std::lock_guard lock(t.node_mutex);
    if (auto it = t.unique.find(key); it != t.unique.end()) return Formula(it->second);

    std::vector<Symbol> fv;
    switch (k) {
        case Kind::Var:
            fv.push_back(s);
            break;
        case Kind::And:
        case Kind::Or:
            std::set_union(l.node_->free_vars.begin(), l.node_->free_vars.end(),
                           r.node_->free_vars.begin(), r.node_->free_vars.end(), std::back_inserter(fv));
            break;
        case Kind::Dia:
        case Kind::Box:
        case Kind::UnivBox:
        case Kind::UnivDia:
            fv = l.node_->free_vars;
            break;
        case Kind::Mu:
        case Kind::Nu:
            fv = l.node_->free_vars;
            std::erase(fv, s);
            break;
        default:
            break;
    }
    auto id = static_cast<std::uint32_t>(t.nodes.size());
    t.nodes.push_back(detail::Node{k, id, s, l.node_, r.node_, std::move(fv)});
    const detail::Node* n = &t.nodes.back();
    t.unique.emplace(key, n);
    return Formula(n);
}

Formula Formula::bot() { return make(Kind::Bot, {}, {}, {}); }
Formula Formula::top() { return make(Kind::Top, {}, {}, {}); }
Formula Formula::atom(Symbol name) { return make(Kind::Atom, name, {}, {}); }
Formula Formula::dual_atom(Symbol name) { return make(Kind::DualAtom, name, {}, {}); }
Formula Formula::literal(Symbol name, bool positive) { return positive ? atom(name) : dual_atom(name); }

Formula Formula::conj(Formula lhs, Formula rhs) {
    if (!lhs.valid() || !rhs.valid()) throw std::invalid_argument("conj: null operand");
    return make(Kind::And, {}, lhs, rhs);
}

Formula Formula::disj(Formula lhs, Formula rhs) {
    if (!lhs.valid() || !rhs.valid()) throw std::invalid_argument("disj: null operand");
    return make(Kind::Or, {}, lhs, rhs);
}

Formula Formula::dia(Symbol action, Formula body) { return make(Kind::Dia, action, body, {}); }
Formula Formula::box(Symbol action, Formula body) { return make(Kind::Box, action, body, {}); }
Formula Formula::var(Symbol name) { return make(Kind::Var, name, {}, {}); }
Formula Formula::mu(Symbol v, Formula body) { return make(Kind::Mu, v, body, {}); }
Formula Formula::nu(Symbol v, Formula body) { return make(Kind::Nu, v, body, {}); }
Formula Formula::fix(bool least, Symbol v, Formula body) { return least ? mu(v, body) : nu(v, body); }

Formula Formula::univ_box(Formula body) {
    if (!body.closed()) throw std::invalid_argument("universal modality requires a closed body");
    return make(Kind::UnivBox, {}, body, {});
}

Formula Formula::univ_dia(Formula body) {
    if (!body.closed()) throw std::invalid_argument("universal modality requires a closed body");
    return make(Kind::UnivDia, {}, body, {});
}

// --- Accessors ---------------------------------------------------------------

Kind Formula::kind() const { return node_->kind; }
std::uint32_t Formula::id() const { return node_ ? node_->id : 0xffffffffu; }
Symbol Formula::symbol() const { return node_->symbol; }
Formula Formula::lhs() const { return Formula(node_->lhs); }
Formula Formula::rhs() const { return Formula(node_->rhs); }
Formula Formula::body() const { return Formula(node_->lhs); }
std::span<const Symbol> Formula::free_vars() const { return node_->free_vars; }

bool Formula::has_free(Symbol x) const {
    return std::binary_search(node_->free_vars.begin(), node_->free_vars.end(), x);
}

// --- Structural helpers --------------------------------------------------------

namespace {

Formula rebuild(Formula f, Formula l, Formula r) {
    switch (f.kind()) {
        case Kind::And: return Formula::conj(l, r);
        case Kind::Or: return Formula::disj(l, r);
        case Kind::Dia: return Formula::dia(f.symbol(), l);
        case Kind::Box: return Formula::box(f.symbol(), l);
        case Kind::Mu: return Formula::mu(f.symbol(), l);
        case Kind::Nu: return Formula::nu(f.symbol(), l);
        case Kind::UnivBox: return Formula::univ_box(l);
        case Kind::UnivDia: return Formula::univ_dia(l);
        default: return f;
    }
}

using Sigma = std::unordered_map<Symbol, Formula, std::hash<Symbol>>;

Formula subst_rec(Formula f, const Sigma& sigma, std::unordered_map<Formula, Formula>& memo) {
    bool touches = false;
    for (Symbol x : f.free_vars()) {
        if (sigma.contains(x)) {
            touches = true;
            break;
        }
    }
    if (!touches) return f;
    if (auto it = memo.find(f); it != memo.end()) return it->second;

    Formula out;
    switch (f.kind()) {
        case Kind::Var:
            out = sigma.at(f.symbol());
            break;
        case Kind::And:
        case Kind::Or:
            out = rebuild(f, subst_rec(f.lhs(), sigma, memo), subst_rec(f.rhs(), sigma, memo));
            break;
        case Kind::Mu:
        case Kind::Nu:
            if (sigma.contains(f.symbol())) {
                // Rebinding shadows the substituted variable.
                Sigma inner = sigma;
                inner.erase(f.symbol());
                std::unordered_map<Formula, Formula> inner_memo;
                out = rebuild(f, subst_rec(f.body(), inner, inner_memo), {});
            } else {
                out = rebuild(f, subst_rec(f.body(), sigma, memo), {});
            }
            break;
        default:
            out = rebuild(f, subst_rec(f.body(), sigma, memo), {});
            break;
    }
    memo.emplace(f, out);
    return out;
}

}  // namespace

Formula substitute(Formula f, Symbol x, Formula replacement) {
    Sigma sigma{{x, replacement}};
    std::unordered_map<Formula, Formula> memo;
    return subst_rec(f, sigma, memo);
}

Formula substitute(Formula f, const Sigma& sigma) {
    std::unordered_map<Formula, Formula> memo;
    return subst_rec(f, sigma, memo);
}

Formula unfold(Formula fixpoint) {
    if (!fixpoint.is_fixpoint()) throw std::invalid_argument("unfold: not a fixpoint formula");
    return substitute(fixpoint.body(), fixpoint.symbol(), fixpoint);
}

std::vector<Formula> subformulas(Formula f) {
    std::vector<Formula> out;
    std::unordered_set<Formula> seen;
    // Iterative post-order over the DAG.
    std::vector<std::pair<Formula, bool>> stack{{f, false}};
    while (!stack.empty()) {
        auto [g, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            out.push_back(g);
            continue;
        }
        if (!seen.insert(g).second) continue;
        stack.emplace_back(g, true);
        switch (g.kind()) {
            case Kind::And:
            case Kind::Or:
                stack.emplace_back(g.rhs(), false);
                stack.emplace_back(g.lhs(), false);
                break;
            case Kind::Dia:
            case Kind::Box:
            case Kind::Mu:
            case Kind::Nu:
            case Kind::UnivBox:
            case Kind::UnivDia:
                stack.emplace_back(g.body(), false);
                break;
            default:
                break;
        }
    }
    return out;
}

std::size_t tree_size(Formula f) {
    std::unordered_map<Formula, std::size_t> memo;
    for (Formula g : subformulas(f)) {
        std::size_t s = 1;
        switch (g.kind()) {
            case Kind::And:
            case Kind::Or:
                s += memo[g.lhs()] + memo[g.rhs()];
                break;
            case Kind::Dia:
            case Kind::Box:
            case Kind::Mu:
            case Kind::Nu:
            case Kind::UnivBox:
            case Kind::UnivDia:
                s += memo[g.body()];
                break;
            default:
                break;
        }
        memo[g] = s;
    }
    return memo[f];
}

namespace {

std::vector<Symbol> collect_symbols(Formula f, std::initializer_list<Kind> kinds) {
    std::set<Symbol> out;
    for (Formula g : subformulas(f)) {
        for (Kind k : kinds) {
            if (g.kind() == k) out.insert(g.symbol());
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace

std::vector<Symbol> atoms_of(Formula f) { return collect_symbols(f, {Kind::Atom, Kind::DualAtom}); }
std::vector<Symbol> actions_of(Formula f) { return collect_symbols(f, {Kind::Dia, Kind::Box}); }
std::vector<Symbol> variables_of(Formula f) { return collect_symbols(f, {Kind::Var, Kind::Mu, Kind::Nu}); }

bool contains_universal(Formula f) {
    for (Formula g : subformulas(f)) {
        if (g.is_universal()) return true;
    }
    return false;
}

}  // namespace mmu
