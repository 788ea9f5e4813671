#pragma once

// The rho0-satisfiability game for rho1: arena construction, Buchi solving,
// strategy certificates and their verification.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmu/closure.hpp"
#include "mmu/tracking.hpp"

namespace mmu {

struct GameNode {
    bool eloise = true;
    FormulaSet formulas;  ///< Psi for Eloise nodes, a formal state for Abelard nodes
    FormulaSet focus;
    bool accepting() const { return eloise && focus.empty(); }
    friend bool operator==(const GameNode&, const GameNode&) = default;
};

struct EloiseMove {
    FormulaSet state;
    FormulaSet focus;
    Word word;  ///< shortlex-least witness
};

/// All (state, focus) targets of an Eloise node, ordered by witness word.
/// Throws std::logic_error if some target needs a word longer than 3n.
std::vector<EloiseMove> eloise_moves(const ClosureTable& ct, const FormulaSet& psi, const FormulaSet& focus);

struct AbelardMove {
    FormulaSet formulas;
    FormulaSet focus;
    ModalLetter letter;
};

/// One successor per same-action pair (<a>phi0, [a]phi1) of the state,
/// duplicates removed; ordered by closure position of the pair.
std::vector<AbelardMove> abelard_moves(const ClosureTable& ct, const FormulaSet& state, const FormulaSet& focus);

struct ArenaOptions {
    std::size_t node_cap = 1'000'000;
};

class GameArena {
public:
    explicit GameArena(std::shared_ptr<const ClosureTable> ct) : ct_(std::move(ct)) {}

    const ClosureTable& closure() const { return *ct_; }
    std::shared_ptr<const ClosureTable> closure_ptr() const { return ct_; }

    std::size_t size() const { return nodes_.size(); }
    std::size_t initial() const { return 0; }
    const GameNode& node(std::size_t v) const { return nodes_.at(v); }
    const std::vector<std::size_t>& successors(std::size_t v) const { return succ_.at(v); }
    /// Witness word of the k-th successor of an Eloise node.
    const Word& word(std::size_t v, std::size_t k) const { return words_.at(v).at(k); }

    std::size_t eloise_count() const { return eloise_count_; }
    std::size_t abelard_count() const { return nodes_.size() - eloise_count_; }

    std::optional<std::size_t> find(const GameNode& n) const;

private:
    friend GameArena build_arena(std::shared_ptr<const ClosureTable> ct, const ArenaOptions& opts);
    std::size_t intern(GameNode n, bool& fresh);

    std::shared_ptr<const ClosureTable> ct_;
    std::vector<GameNode> nodes_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<std::vector<Word>> words_;
    std::map<std::pair<bool, std::pair<FormulaSet, FormulaSet>>, std::size_t> index_;
    std::size_t eloise_count_ = 0;
};

/// Explores everything reachable from ({rho1}, {}). Throws
/// ResourceLimitError when the node count exceeds `opts.node_cap`.
GameArena build_arena(std::shared_ptr<const ClosureTable> ct, const ArenaOptions& opts = {});

struct BuchiSolution {
    std::vector<bool> winning;  ///< Eloise's winning region
    /// Position in the attractor layering of the last inner fixpoint
    /// (0 for accepting nodes and stuck Abelard nodes).
    std::vector<std::size_t> rank;
    /// Index into successors(v) for winning Eloise nodes.
    std::vector<std::optional<std::size_t>> choice;
    bool eloise_wins = false;
};

/// nu Z. mu Y. (F & CPre(Z)) | CPre(Y). Non-accepting Eloise nodes move to
/// a successor of strictly smaller rank, accepting ones to any winning
/// successor; among the allowed moves the least witness word wins.
BuchiSolution solve_buchi(const GameArena& arena);

// --- Certificates ------------------------------------------------------------------

struct CertificateNode {
    bool eloise = true;
    FormulaSet formulas;
    FormulaSet focus;
    friend bool operator==(const CertificateNode&, const CertificateNode&) = default;
};

struct CertificateMove {
    Word word;
    std::string target;
    friend bool operator==(const CertificateMove&, const CertificateMove&) = default;
};

/// A history-free Eloise strategy restricted to the nodes it reaches.
struct StrategyCertificate {
    Formula rho1;
    Formula rho0;
    std::string initial;
    std::map<std::string, CertificateNode> nodes;
    std::map<std::string, CertificateMove> moves;

    std::size_t eloise_entries() const { return moves.size(); }
    std::size_t max_word_length() const;
    friend bool operator==(const StrategyCertificate&, const StrategyCertificate&) = default;
};

StrategyCertificate extract_certificate(const GameArena& arena, const BuchiSolution& sol);

/// JSON layout: {"rho1", "rho0", "initial", "nodes": {id: {"player", "formulas",
/// "focus"}}, "moves": {id: {"word": [["prop", text, bit], ...], "target"}}}.
/// Formula lists are sorted by their text.
nlohmann::json certificate_to_json(const StrategyCertificate& c);
/// Throws FormatError or ParseError.
StrategyCertificate certificate_from_json(const nlohmann::json& j);

enum class CertificateFailure {
    None,
    Malformed,          ///< header, node shapes or references are broken
    Initial,            ///< (i) v0 missing or unmapped
    IllegalMove,        ///< (ii) a witness word does not produce its target
    MissingResponse,    ///< (iii) an Abelard successor is not mapped
    NonAcceptingCycle,  ///< (iv) a cycle avoids every accepting node
};

const char* failure_code(CertificateFailure f);

struct CertificateVerdict {
    CertificateFailure failure = CertificateFailure::None;
    std::string node;  ///< offending node id, if any
    std::string message;
    bool ok() const { return failure == CertificateFailure::None; }
};

/// Checks a certificate against its own rho1/rho0 in time polynomial in
/// the closure size and the certificate size.
CertificateVerdict verify_certificate(const StrategyCertificate& c);
/// As above, after checking that the certificate is about (rho1, rho0),
/// either literally or after the input pipeline.
CertificateVerdict verify_certificate(const StrategyCertificate& c, Formula rho1, Formula rho0);

// --- Deciding --------------------------------------------------------------------

struct SolveOptions {
    std::size_t node_cap = 1'000'000;
};

struct SatResult {
    bool satisfiable = false;
    Formula rho1;  ///< after the input pipeline
    Formula rho0;
    std::shared_ptr<const ClosureTable> closure;
    std::optional<StrategyCertificate> certificate;
    std::size_t eloise_nodes = 0;
    std::size_t abelard_nodes = 0;
};

/// Runs the input pipeline, builds and solves the game and, if Eloise wins,
/// extracts and self-verifies a certificate.
SatResult decide_sat(Formula rho1, Formula rho0, const SolveOptions& opts = {});

}  // namespace mmu
