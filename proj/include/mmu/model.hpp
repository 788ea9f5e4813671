#pragma once

// Finite neighbourhood models (W, N, I).
//
// N(a, w) is stored extensionally as a duplicate-free list of state sets;
// upward closure is left to the semantics of the modalities. Only positive
// atoms are stored; the dual of p is interpreted as W \ I(p), so the
// duality constraint holds by construction.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "mmu/formula.hpp"

namespace mmu {

using StateId = std::size_t;
using StateSet = boost::dynamic_bitset<>;

class NeighbourhoodModel {
public:
    NeighbourhoodModel() = default;
    explicit NeighbourhoodModel(std::vector<std::string> state_names);
    /// States named "s0", "s1", ...
    explicit NeighbourhoodModel(std::size_t num_states);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& state_names() const { return names_; }
    const std::string& state_name(StateId w) const { return names_.at(w); }
    std::optional<StateId> find_state(const std::string& name) const;

    StateSet empty_set() const { return StateSet(size()); }
    StateSet full_set() const { return ~StateSet(size()); }
    StateSet singleton(StateId w) const;

    /// I(p); the empty set for atoms the model does not mention.
    const StateSet& atom(Symbol p) const;
    void set_atom(Symbol p, StateSet extension);

    /// N(a, w); empty for pairs the model does not mention.
    const std::vector<StateSet>& neighbourhoods(Symbol a, StateId w) const;
    /// Adds a neighbourhood unless it is already present.
    void add_neighbourhood(Symbol a, StateId w, StateSet s);

    std::vector<Symbol> actions() const;
    std::vector<Symbol> atoms() const;

private:
    std::vector<std::string> names_;
    std::map<Symbol, StateSet> atoms_;
    std::map<Symbol, std::vector<std::vector<StateSet>>> nbhd_;
};

/// Reads the model JSON format
/// `{"states":[...], "atoms":{"p":[...]}, "nbhd":{"a":{"w":[["u","v"],...]}}}`.
/// Throws FormatError.
NeighbourhoodModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const NeighbourhoodModel& m);

/// Disjoint union; state names are prefixed with `prefix_a` / `prefix_b`.
NeighbourhoodModel disjoint_union(const NeighbourhoodModel& a, const NeighbourhoodModel& b,
                                  const std::string& prefix_a, const std::string& prefix_b);

}  // namespace mmu
