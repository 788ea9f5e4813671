#pragma once

// Hash-consed formulas of the monotone mu-calculus with the universal
// modality, kept in negation normal form.
//
// Every Formula is a pointer into a process-wide node table. Two formulas are
// the same object iff they are structurally equal (including the names of
// bound variables), so equality and hashing are O(1). Nodes are immutable
// once created; creation is serialized by a mutex.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mmu {

/// Interned name of an atom, action or fixpoint variable.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::string_view name);

    const std::string& str() const;
    std::uint32_t id() const { return id_; }
    bool valid() const { return id_ != kInvalid; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

private:
    static constexpr std::uint32_t kInvalid = 0xffffffffu;
    std::uint32_t id_ = kInvalid;
};

enum class Kind : std::uint8_t {
    Bot,
    Top,
    Atom,
    DualAtom,
    And,
    Or,
    Dia,
    Box,
    Var,
    Mu,
    Nu,
    UnivBox,
    UnivDia,
};

namespace detail {
struct Node;
}

class Formula {
public:
    Formula() = default;

    static Formula bot();
    static Formula top();
    static Formula atom(Symbol name);
    static Formula dual_atom(Symbol name);
    /// Atom or its dual, by polarity.
    static Formula literal(Symbol name, bool positive);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula dia(Symbol action, Formula body);
    static Formula box(Symbol action, Formula body);
    static Formula var(Symbol name);
    static Formula mu(Symbol var, Formula body);
    static Formula nu(Symbol var, Formula body);
    /// mu or nu depending on `least`.
    static Formula fix(bool least, Symbol var, Formula body);
    static Formula univ_box(Formula body);
    static Formula univ_dia(Formula body);

    // Convenience overloads taking plain strings.
    static Formula atom(std::string_view name) { return atom(Symbol(name)); }
    static Formula dual_atom(std::string_view name) { return dual_atom(Symbol(name)); }
    static Formula dia(std::string_view a, Formula body) { return dia(Symbol(a), body); }
    static Formula box(std::string_view a, Formula body) { return box(Symbol(a), body); }
    static Formula var(std::string_view x) { return var(Symbol(x)); }
    static Formula mu(std::string_view x, Formula body) { return mu(Symbol(x), body); }
    static Formula nu(std::string_view x, Formula body) { return nu(Symbol(x), body); }

    bool valid() const { return node_ != nullptr; }
    Kind kind() const;
    std::uint32_t id() const;

    /// Atom name, action, or variable name depending on the kind.
    Symbol symbol() const;
    Formula lhs() const;
    Formula rhs() const;
    /// Operand of modal, fixpoint and universal operators.
    Formula body() const;

    /// Sorted free variables.
    std::span<const Symbol> free_vars() const;
    bool closed() const { return free_vars().empty(); }
    bool has_free(Symbol x) const;

    bool is(Kind k) const { return kind() == k; }
    bool is_fixpoint() const { return is(Kind::Mu) || is(Kind::Nu); }
    bool is_modal() const { return is(Kind::Dia) || is(Kind::Box); }
    bool is_universal() const { return is(Kind::UnivBox) || is(Kind::UnivDia); }
    bool is_literal() const { return is(Kind::Atom) || is(Kind::DualAtom); }

    friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
    /// Orders by creation order of the underlying node.
    friend bool operator<(Formula a, Formula b) { return a.id() < b.id(); }

private:
    explicit Formula(const detail::Node* n) : node_(n) {}
    static Formula make(Kind k, Symbol s, Formula l, Formula r);

    const detail::Node* node_ = nullptr;
};

/// Replaces free occurrences of `x` in `f` by `replacement`. Bound variables
/// are not renamed; callers guarantee that `replacement` cannot be captured,
/// which holds for clean formulas.
Formula substitute(Formula f, Symbol x, Formula replacement);

/// Simultaneous substitution of several variables.
Formula substitute(Formula f, const std::unordered_map<Symbol, Formula, std::hash<Symbol>>& sigma);

/// One-step unfolding eta X.phi  ->  phi[eta X.phi / X].
Formula unfold(Formula fixpoint);

/// All distinct subformula nodes of `f` (including `f`), children before
/// parents.
std::vector<Formula> subformulas(Formula f);

/// Number of nodes in the syntax tree (shared nodes counted once per use).
std::size_t tree_size(Formula f);

/// Every symbol used as an atom (dual atoms report the underlying atom).
std::vector<Symbol> atoms_of(Formula f);
std::vector<Symbol> actions_of(Formula f);
/// Every variable name used by a binder or occurrence.
std::vector<Symbol> variables_of(Formula f);

bool contains_universal(Formula f);

}  // namespace mmu

template <>
struct std::hash<mmu::Symbol> {
    std::size_t operator()(mmu::Symbol s) const noexcept { return s.id(); }
};

template <>
struct std::hash<mmu::Formula> {
    std::size_t operator()(mmu::Formula f) const noexcept { return f.id(); }
};
