#pragma once

// Tableaux built from strategy certificates, trace checking, tableau
// timeouts and the model construction over formal states.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmu/closure.hpp"
#include "mmu/game.hpp"
#include "mmu/model.hpp"
#include "mmu/tracking.hpp"

namespace mmu {

struct TableauEdge {
    std::size_t target;
    Letter letter;
};

struct TableauNode {
    FormulaSet label;
    FormulaSet focus;
    bool is_state = false;
    std::string origin;  ///< certificate node this node unfolds
    std::size_t prefix = 0;  ///< letters of the witness word consumed so far
};

class Tableau {
public:
    std::size_t size() const { return nodes_.size(); }
    std::size_t root() const { return 0; }
    const TableauNode& node(std::size_t v) const { return nodes_.at(v); }
    const std::vector<TableauEdge>& edges(std::size_t v) const { return edges_.at(v); }
    std::size_t state_count() const;

    std::size_t add_node(TableauNode n);
    void add_edge(std::size_t from, TableauEdge e) { edges_.at(from).push_back(std::move(e)); }

private:
    std::vector<TableauNode> nodes_;
    std::vector<std::vector<TableauEdge>> edges_;
};

/// Unfolds the witness words of a certificate. One node per (Eloise node,
/// prefix of its witness word); the full word ends in the node's formal
/// state, whose modal children are the entry nodes of the Abelard
/// responses. Throws std::invalid_argument for a rejected certificate.
Tableau tableau_from_certificate(const StrategyCertificate& cert, const ClosureTable& ct);

/// Pre-tableau conditions: every modal rule instance of a state label has a
/// matching child and every other node has exactly one child produced by
/// its letter. Returns a description of the first violation.
std::optional<std::string> check_pre_tableau(const Tableau& t, const ClosureTable& ct);

struct TraceCheck {
    bool finite = false;
    /// tab(v): longest trace, counted in formulas, starting at a deferral of
    /// l(v); 0 without deferrals. Only meaningful when `finite`.
    std::vector<std::size_t> tab;
};

/// Builds the product of the tableau with the deferrals along delta and
/// checks it for cycles.
TraceCheck all_traces_finite(const Tableau& t, const ClosureTable& ct);

/// The model over the state-labelled nodes. Throws std::invalid_argument if
/// a trace is infinite or a required child is missing.
NeighbourhoodModel model_from_tableau(const Tableau& t, const ClosureTable& ct);

/// model_from_tableau(tableau_from_certificate(cert)).
NeighbourhoodModel extract_model(const StrategyCertificate& cert, const ClosureTable& ct);
NeighbourhoodModel extract_model(const SatResult& r);

/// Node ids, labels, foci and edges, one node per line.
std::string dump_tableau(const Tableau& t);

}  // namespace mmu
