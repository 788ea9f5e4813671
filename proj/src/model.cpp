#include "mmu/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "mmu/errors.hpp"

namespace mmu {

NeighbourhoodModel::NeighbourhoodModel(std::vector<std::string> state_names) : names_(std::move(state_names)) {
    std::set<std::string> unique(names_.begin(), names_.end());
    if (unique.size() != names_.size()) throw FormatError("duplicate state names");
}

NeighbourhoodModel::NeighbourhoodModel(std::size_t num_states) {
    names_.reserve(num_states);
    for (std::size_t i = 0; i < num_states; ++i) names_.push_back("s" + std::to_string(i));
}

std::optional<StateId> NeighbourhoodModel::find_state(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<StateId>(it - names_.begin());
}

StateSet NeighbourhoodModel::singleton(StateId w) const {
    StateSet s(size());
    s.set(w);
    return s;
}

const StateSet& NeighbourhoodModel::atom(Symbol p) const {
    if (auto it = atoms_.find(p); it != atoms_.end()) return it->second;
    static thread_local std::unordered_map<std::size_t, StateSet> empties;
    auto [e, _] = empties.try_emplace(size(), StateSet(size()));
    return e->second;
}

void NeighbourhoodModel::set_atom(Symbol p, StateSet extension) {
    if (extension.size() != size()) throw std::invalid_argument("atom extension has the wrong universe size");
    atoms_[p] = std::move(extension);
}

const std::vector<StateSet>& NeighbourhoodModel::neighbourhoods(Symbol a, StateId w) const {
    static const std::vector<StateSet> kNone;
    auto it = nbhd_.find(a);
    if (it == nbhd_.end()) return kNone;
    return it->second.at(w);
}

void NeighbourhoodModel::add_neighbourhood(Symbol a, StateId w, StateSet s) {
    if (w >= size() || s.size() != size()) throw std::invalid_argument("neighbourhood outside the model");
    auto& per_state = nbhd_[a];
    if (per_state.empty()) per_state.resize(size());
    auto& list = per_state[w];
    if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(std::move(s));
}

std::vector<Symbol> NeighbourhoodModel::actions() const {
    std::vector<Symbol> out;
    for (auto& [a, _] : nbhd_) out.push_back(a);
    return out;
}

std::vector<Symbol> NeighbourhoodModel::atoms() const {
    std::vector<Symbol> out;
    for (auto& [p, _] : atoms_) out.push_back(p);
    return out;
}

// --- JSON ------------------------------------------------------------------------

namespace {

StateSet read_set(const NeighbourhoodModel& m, const nlohmann::json& j) {
    if (!j.is_array()) throw FormatError("expected an array of state names");
    StateSet s = m.empty_set();
    for (const auto& e : j) {
        if (!e.is_string()) throw FormatError("state names must be strings");
        auto w = m.find_state(e.get<std::string>());
        if (!w) throw FormatError("unknown state '" + e.get<std::string>() + "'");
        s.set(*w);
    }
    return s;
}

nlohmann::json write_set(const NeighbourhoodModel& m, const StateSet& s) {
    nlohmann::json out = nlohmann::json::array();
    for (auto w = s.find_first(); w != StateSet::npos; w = s.find_next(w)) out.push_back(m.state_name(w));
    return out;
}

}  // namespace

NeighbourhoodModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("states")) throw FormatError("model must be an object with \"states\"");
    std::vector<std::string> names;
    for (const auto& s : j.at("states")) {
        if (!s.is_string()) throw FormatError("state names must be strings");
        names.push_back(s.get<std::string>());
    }
    NeighbourhoodModel m(std::move(names));
    if (j.contains("atoms")) {
        for (const auto& [p, ext] : j.at("atoms").items()) {
            if (p.empty() || p[0] == '~') throw FormatError("atom names must be positive: '" + p + "'");
            m.set_atom(Symbol(p), read_set(m, ext));
        }
    }
    if (j.contains("nbhd")) {
        for (const auto& [a, per_state] : j.at("nbhd").items()) {
            if (!per_state.is_object()) throw FormatError("nbhd entries must be objects");
            Symbol action(a);
            for (const auto& [w, sets] : per_state.items()) {
                auto state = m.find_state(w);
                if (!state) throw FormatError("unknown state '" + w + "'");
                if (!sets.is_array()) throw FormatError("neighbourhood list must be an array");
                for (const auto& s : sets) m.add_neighbourhood(action, *state, read_set(m, s));
            }
        }
    }
    return m;
}

nlohmann::json model_to_json(const NeighbourhoodModel& m) {
    nlohmann::json out;
    out["states"] = m.state_names();
    out["atoms"] = nlohmann::json::object();
    for (Symbol p : m.atoms()) out["atoms"][p.str()] = write_set(m, m.atom(p));
    out["nbhd"] = nlohmann::json::object();
    for (Symbol a : m.actions()) {
        nlohmann::json per_state = nlohmann::json::object();
        for (StateId w = 0; w < m.size(); ++w) {
            const auto& list = m.neighbourhoods(a, w);
            if (list.empty()) continue;
            nlohmann::json sets = nlohmann::json::array();
            for (const auto& s : list) sets.push_back(write_set(m, s));
            per_state[m.state_name(w)] = std::move(sets);
        }
        out["nbhd"][a.str()] = std::move(per_state);
    }
    return out;
}

NeighbourhoodModel disjoint_union(const NeighbourhoodModel& a, const NeighbourhoodModel& b,
                                  const std::string& prefix_a, const std::string& prefix_b) {
    std::vector<std::string> names;
    for (const auto& n : a.state_names()) names.push_back(prefix_a + n);
    for (const auto& n : b.state_names()) names.push_back(prefix_b + n);
    NeighbourhoodModel u(std::move(names));
    const std::size_t off = a.size();
    auto lift = [&](const StateSet& s, std::size_t shift) {
        StateSet out = u.empty_set();
        for (auto w = s.find_first(); w != StateSet::npos; w = s.find_next(w)) out.set(w + shift);
        return out;
    };
    std::set<Symbol> atoms;
    for (Symbol p : a.atoms()) atoms.insert(p);
    for (Symbol p : b.atoms()) atoms.insert(p);
    for (Symbol p : atoms) u.set_atom(p, lift(a.atom(p), 0) | lift(b.atom(p), off));
    for (Symbol act : a.actions()) {
        for (StateId w = 0; w < a.size(); ++w) {
            for (const auto& s : a.neighbourhoods(act, w)) u.add_neighbourhood(act, w, lift(s, 0));
        }
    }
    for (Symbol act : b.actions()) {
        for (StateId w = 0; w < b.size(); ++w) {
            for (const auto& s : b.neighbourhoods(act, w)) u.add_neighbourhood(act, w + off, lift(s, off));
        }
    }
    return u;
}

}  // namespace mmu
