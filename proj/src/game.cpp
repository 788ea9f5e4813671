#include "mmu/game.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mmu/errors.hpp"
#include "mmu/normal_forms.hpp"
#include "mmu/syntax.hpp"

namespace mmu {

// --- Moves ------------------------------------------------------------------------

std::vector<EloiseMove> eloise_moves(const ClosureTable& ct, const FormulaSet& psi, const FormulaSet& focus) {
    struct Item {
        FormulaSet g;
        FormulaSet foc;
        Word word;
    };
    const std::size_t bound = 3 * ct.size();
    FormulaSet start = psi;
    start.insert(ct.rho0());

    std::set<std::pair<FormulaSet, FormulaSet>> seen;
    std::deque<Item> queue;
    seen.emplace(start, focus);
    queue.push_back({std::move(start), focus, {}});

    std::vector<EloiseMove> out;
    std::vector<PropLetter> letters;
    while (!queue.empty()) {
        Item it = std::move(queue.front());
        queue.pop_front();
        if (is_contradictory(it.g)) continue;
        if (is_formal_state(it.g)) {
            if (it.word.size() > bound) {
                throw std::logic_error("witness word exceeds 3n letters for " + to_string(it.g));
            }
            out.push_back({std::move(it.g), std::move(it.foc), std::move(it.word)});
            continue;
        }
        letters.clear();
        for (Formula f : it.g) {
            if (f.is(Kind::Or)) {
                letters.push_back({f, 0});
                letters.push_back({f, 1});
            } else if (f.is(Kind::And) || f.is_fixpoint()) {
                letters.push_back({f, 0});
            }
        }
        std::sort(letters.begin(), letters.end(),
                  [&](const PropLetter& a, const PropLetter& b) { return letter_less(ct, a, b); });
        for (const auto& l : letters) {
            FormulaSet g2 = gamma(it.g, l);
            FormulaSet f2 = delta_set(ct, it.foc, Letter{l});
            if (!seen.emplace(g2, f2).second) continue;
            Word w2 = it.word;
            w2.push_back(l);
            queue.push_back({std::move(g2), std::move(f2), std::move(w2)});
        }
    }
    return out;
}

std::vector<AbelardMove> abelard_moves(const ClosureTable& ct, const FormulaSet& state, const FormulaSet& focus) {
    std::vector<Formula> dias;
    std::vector<Formula> boxes;
    for (Formula f : state) {
        if (f.is(Kind::Dia)) dias.push_back(f);
        else if (f.is(Kind::Box)) boxes.push_back(f);
    }
    auto by_index = [&](Formula a, Formula b) { return ct.index_of(a) < ct.index_of(b); };
    std::sort(dias.begin(), dias.end(), by_index);
    std::sort(boxes.begin(), boxes.end(), by_index);

    std::vector<AbelardMove> out;
    std::set<std::pair<FormulaSet, FormulaSet>> seen;
    for (Formula d : dias) {
        for (Formula b : boxes) {
            if (d.symbol() != b.symbol()) continue;
            ModalLetter l{d, b};
            FormulaSet psi{d.body(), b.body()};
            FormulaSet foc;
            if (focus.empty()) {
                for (Formula f : psi) {
                    if (ct.is_deferral(f)) foc.insert(f);
                }
            } else {
                foc = delta_set(ct, focus, Letter{l});
            }
            if (seen.emplace(psi, foc).second) out.push_back({std::move(psi), std::move(foc), l});
        }
    }
    return out;
}

// --- Arena ------------------------------------------------------------------------

std::optional<std::size_t> GameArena::find(const GameNode& n) const {
    auto it = index_.find({n.eloise, {n.formulas, n.focus}});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t GameArena::intern(GameNode n, bool& fresh) {
    auto [it, inserted] = index_.try_emplace({n.eloise, {n.formulas, n.focus}}, nodes_.size());
    fresh = inserted;
    if (inserted) {
        if (n.eloise) ++eloise_count_;
        nodes_.push_back(std::move(n));
        succ_.emplace_back();
        words_.emplace_back();
    }
    return it->second;
}

GameArena build_arena(std::shared_ptr<const ClosureTable> ct, const ArenaOptions& opts) {
    GameArena arena(ct);
    bool fresh = false;
    arena.intern(GameNode{true, FormulaSet{ct->rho1()}, {}}, fresh);
    std::deque<std::size_t> work{0};
    while (!work.empty()) {
        std::size_t v = work.front();
        work.pop_front();
        const GameNode cur = arena.nodes_[v];
        if (cur.eloise) {
            for (auto& m : eloise_moves(*ct, cur.formulas, cur.focus)) {
                std::size_t t = arena.intern(GameNode{false, std::move(m.state), std::move(m.focus)}, fresh);
                if (fresh) work.push_back(t);
                arena.succ_[v].push_back(t);
                arena.words_[v].push_back(std::move(m.word));
            }
        } else {
            for (auto& m : abelard_moves(*ct, cur.formulas, cur.focus)) {
                std::size_t t = arena.intern(GameNode{true, std::move(m.formulas), std::move(m.focus)}, fresh);
                if (fresh) work.push_back(t);
                arena.succ_[v].push_back(t);
            }
        }
        if (arena.size() > opts.node_cap) {
            throw ResourceLimitError("game arena exceeds the node cap of " + std::to_string(opts.node_cap));
        }
    }
    const std::size_t n = ct->size();
    if (arena.eloise_count() > 4 * n * n) throw std::logic_error("more than 4n^2 Eloise nodes");
    return arena;
}

// --- Solving ----------------------------------------------------------------------

BuchiSolution solve_buchi(const GameArena& arena) {
    const std::size_t N = arena.size();
    std::vector<std::vector<std::size_t>> pred(N);
    for (std::size_t v = 0; v < N; ++v) {
        for (std::size_t t : arena.successors(v)) pred[t].push_back(v);
    }

    std::vector<bool> z(N, true);
    std::vector<std::size_t> rank(N, 0);
    for (;;) {
        // Attractor of the accepting nodes that can stay inside z, computed
        // within the whole arena and layered breadth-first.
        std::vector<bool> y(N, false);
        std::vector<std::size_t> missing(N, 0);
        std::deque<std::size_t> queue;
        for (std::size_t v = 0; v < N; ++v) {
            const auto& node = arena.node(v);
            const auto& succ = arena.successors(v);
            if (node.eloise) {
                if (!node.accepting() || !z[v]) continue;
                if (std::any_of(succ.begin(), succ.end(), [&](std::size_t t) { return z[t]; })) {
                    y[v] = true;
                    rank[v] = 0;
                    queue.push_back(v);
                }
            } else {
                missing[v] = succ.size();
                if (succ.empty()) {
                    y[v] = true;
                    rank[v] = 0;
                    queue.push_back(v);
                }
            }
        }
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : pred[u]) {
                if (y[v]) continue;
                if (arena.node(v).eloise) {
                    y[v] = true;
                } else {
                    // Multi-edges are impossible: successors are deduplicated.
                    if (--missing[v] == 0) y[v] = true;
                }
                if (y[v]) {
                    rank[v] = rank[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if (y == z) break;
        z = std::move(y);
    }

    BuchiSolution sol;
    sol.winning = z;
    sol.rank = rank;
    sol.choice.assign(N, std::nullopt);
    for (std::size_t v = 0; v < N; ++v) {
        const auto& node = arena.node(v);
        if (!node.eloise || !z[v]) continue;
        const auto& succ = arena.successors(v);
        for (std::size_t k = 0; k < succ.size(); ++k) {
            std::size_t t = succ[k];
            if (!z[t]) continue;
            if (!node.accepting() && rank[t] >= rank[v]) continue;
            sol.choice[v] = k;  // successors are already in shortlex word order
            break;
        }
        if (!sol.choice[v]) throw std::logic_error("winning Eloise node without a strategy move");
    }
    sol.eloise_wins = N > 0 && z[arena.initial()];
    return sol;
}

// --- Certificates ------------------------------------------------------------------

std::size_t StrategyCertificate::max_word_length() const {
    std::size_t m = 0;
    for (const auto& [_, mv] : moves) m = std::max(m, mv.word.size());
    return m;
}

StrategyCertificate extract_certificate(const GameArena& arena, const BuchiSolution& sol) {
    if (!sol.eloise_wins) throw std::invalid_argument("Eloise does not win the initial node");
    StrategyCertificate c;
    c.rho1 = arena.closure().rho1();
    c.rho0 = arena.closure().rho0();
    std::map<std::size_t, std::string> id;
    std::deque<std::size_t> work;
    auto visit = [&](std::size_t v) -> const std::string& {
        auto [it, fresh] = id.try_emplace(v, std::to_string(id.size()));
        if (fresh) {
            const auto& n = arena.node(v);
            c.nodes.emplace(it->second, CertificateNode{n.eloise, n.formulas, n.focus});
            work.push_back(v);
        }
        return it->second;
    };
    c.initial = visit(arena.initial());
    while (!work.empty()) {
        std::size_t v = work.front();
        work.pop_front();
        if (arena.node(v).eloise) {
            std::size_t k = sol.choice.at(v).value();
            std::size_t t = arena.successors(v)[k];
            std::string target = visit(t);
            c.moves.emplace(id.at(v), CertificateMove{arena.word(v, k), target});
        } else {
            for (std::size_t t : arena.successors(v)) visit(t);
        }
    }
    return c;
}

namespace {

nlohmann::json sorted_texts(const FormulaSet& s) {
    std::vector<std::string> texts;
    for (Formula f : s) texts.push_back(to_string(f));
    std::sort(texts.begin(), texts.end());
    return texts;
}

FormulaSet parse_set(const nlohmann::json& j) {
    if (!j.is_array()) throw FormatError("expected a list of formulas");
    FormulaSet out;
    for (const auto& e : j) {
        if (!e.is_string()) throw FormatError("formulas must be strings");
        out.insert(parse_formula(e.get<std::string>()));
    }
    return out;
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string text_field(const nlohmann::json& j, const char* key) {
    const auto& f = field(j, key);
    if (!f.is_string()) throw FormatError(std::string("field \"") + key + "\" must be a string");
    return f.get<std::string>();
}

}  // namespace

nlohmann::json certificate_to_json(const StrategyCertificate& c) {
    nlohmann::json j;
    j["rho1"] = to_string(c.rho1);
    j["rho0"] = to_string(c.rho0);
    j["initial"] = c.initial;
    j["nodes"] = nlohmann::json::object();
    for (const auto& [id, n] : c.nodes) {
        j["nodes"][id] = {{"player", n.eloise ? "eloise" : "abelard"},
                          {"formulas", sorted_texts(n.formulas)},
                          {"focus", sorted_texts(n.focus)}};
    }
    j["moves"] = nlohmann::json::object();
    for (const auto& [id, m] : c.moves) {
        nlohmann::json word = nlohmann::json::array();
        for (const auto& l : m.word) word.push_back({"prop", to_string(l.formula), l.bit});
        j["moves"][id] = {{"word", std::move(word)}, {"target", m.target}};
    }
    return j;
}

StrategyCertificate certificate_from_json(const nlohmann::json& j) {
    StrategyCertificate c;
    c.rho1 = parse_formula(text_field(j, "rho1"));
    c.rho0 = parse_formula(text_field(j, "rho0"));
    c.initial = text_field(j, "initial");
    const auto& nodes = field(j, "nodes");
    if (!nodes.is_object()) throw FormatError("\"nodes\" must be an object");
    for (const auto& [id, n] : nodes.items()) {
        std::string player = text_field(n, "player");
        if (player != "eloise" && player != "abelard") throw FormatError("unknown player '" + player + "'");
        c.nodes.emplace(id, CertificateNode{player == "eloise", parse_set(field(n, "formulas")),
                                            parse_set(field(n, "focus"))});
    }
    const auto& moves = field(j, "moves");
    if (!moves.is_object()) throw FormatError("\"moves\" must be an object");
    for (const auto& [id, m] : moves.items()) {
        CertificateMove mv;
        mv.target = text_field(m, "target");
        const auto& word = field(m, "word");
        if (!word.is_array()) throw FormatError("\"word\" must be a list");
        for (const auto& l : word) {
            if (!l.is_array() || l.size() != 3 || l[0] != "prop" || !l[1].is_string() || !l[2].is_number_integer()) {
                throw FormatError("letters must look like [\"prop\", formula, bit]");
            }
            mv.word.push_back({parse_formula(l[1].get<std::string>()), l[2].get<int>()});
        }
        c.moves.emplace(id, std::move(mv));
    }
    return c;
}

const char* failure_code(CertificateFailure f) {
    switch (f) {
        case CertificateFailure::None: return "ok";
        case CertificateFailure::Malformed: return "malformed";
        case CertificateFailure::Initial: return "initial";
        case CertificateFailure::IllegalMove: return "illegal-move";
        case CertificateFailure::MissingResponse: return "missing-response";
        case CertificateFailure::NonAcceptingCycle: return "non-accepting-cycle";
    }
    return "?";
}

namespace {

CertificateVerdict reject(CertificateFailure f, std::string node, std::string message) {
    return {f, std::move(node), std::move(message)};
}

}  // namespace

CertificateVerdict verify_certificate(const StrategyCertificate& c) {
    using F = CertificateFailure;
    std::shared_ptr<ClosureTable> ct;
    try {
        ct = std::make_shared<ClosureTable>(c.rho1, c.rho0);
    } catch (const ValidationError& e) {
        return reject(F::Malformed, "", std::string("formulas rejected: ") + e.what());
    }

    // Shapes and references.
    std::map<std::pair<bool, std::pair<FormulaSet, FormulaSet>>, std::string> by_content;
    for (const auto& [id, n] : c.nodes) {
        for (Formula f : n.formulas) {
            if (!ct->contains(f)) return reject(F::Malformed, id, "formula outside the closure: " + to_string(f));
        }
        for (Formula f : n.focus) {
            if (!ct->is_deferral(f)) return reject(F::Malformed, id, "focus formula is not a deferral: " + to_string(f));
        }
        if (n.eloise) {
            if (n.formulas.empty() || n.formulas.size() > 2) return reject(F::Malformed, id, "Eloise node needs 1 or 2 formulas");
            if (!std::includes(n.formulas.begin(), n.formulas.end(), n.focus.begin(), n.focus.end())) {
                return reject(F::Malformed, id, "focus is not contained in the formulas");
            }
        }
        if (!by_content.emplace(std::make_pair(n.eloise, std::make_pair(n.formulas, n.focus)), id).second) {
            return reject(F::Malformed, id, "duplicate node");
        }
    }
    for (const auto& [id, m] : c.moves) {
        auto it = c.nodes.find(id);
        if (it == c.nodes.end() || !it->second.eloise) return reject(F::Malformed, id, "move from a non-Eloise node");
        if (!c.nodes.contains(m.target)) return reject(F::Malformed, id, "move to an unknown node '" + m.target + "'");
    }

    // (i)
    auto init = c.nodes.find(c.initial);
    if (init == c.nodes.end() || !init->second.eloise || init->second.formulas != FormulaSet{c.rho1} ||
        !init->second.focus.empty()) {
        return reject(F::Initial, c.initial, "initial node is not ({rho1}, {})");
    }
    if (!c.moves.contains(c.initial)) return reject(F::Initial, c.initial, "initial node has no move");

    // (ii)
    const std::size_t bound = 3 * ct->size();
    for (const auto& [id, m] : c.moves) {
        const auto& src = c.nodes.at(id);
        if (m.word.size() > bound) return reject(F::IllegalMove, id, "witness word longer than 3n");
        FormulaSet g = src.formulas;
        g.insert(c.rho0);
        FormulaSet foc = src.focus;
        for (const auto& l : m.word) {
            try {
                make_prop_letter(*ct, l.formula, l.bit);
            } catch (const ValidationError& e) {
                return reject(F::IllegalMove, id, std::string("bad letter: ") + e.what());
            }
            g = gamma(std::move(g), l);
            foc = delta_set(*ct, foc, Letter{l});
        }
        const auto& tgt = c.nodes.at(m.target);
        if (tgt.eloise) return reject(F::IllegalMove, id, "move targets an Eloise node");
        if (!is_formal_state(g)) return reject(F::IllegalMove, id, "word does not reach a formal state");
        if (g != tgt.formulas || foc != tgt.focus) {
            return reject(F::IllegalMove, id, "word yields " + to_string(g) + " / " + to_string(foc) +
                                                  ", not the target");
        }
    }

    // (iii)
    std::map<std::string, std::vector<std::string>> abelard_succ;
    for (const auto& [id, m] : c.moves) {
        if (abelard_succ.contains(m.target)) continue;
        const auto& tgt = c.nodes.at(m.target);
        auto& out = abelard_succ[m.target];
        for (const auto& r : abelard_moves(*ct, tgt.formulas, tgt.focus)) {
            auto it = by_content.find({true, {r.formulas, r.focus}});
            if (it == by_content.end() || !c.moves.contains(it->second)) {
                return reject(F::MissingResponse, m.target,
                              "Abelard response " + to_string(r.formulas) + " / " + to_string(r.focus) + " is unmapped");
            }
            out.push_back(it->second);
        }
    }

    // (iv): the reachable part without accepting nodes must be acyclic.
    std::map<std::string, std::vector<std::string>> edges;
    std::set<std::string> reach{c.initial};
    std::deque<std::string> work{c.initial};
    while (!work.empty()) {
        std::string v = work.front();
        work.pop_front();
        std::vector<std::string> next;
        if (c.nodes.at(v).eloise) next.push_back(c.moves.at(v).target);
        else next = abelard_succ.at(v);
        for (const auto& t : next) {
            if (reach.insert(t).second) work.push_back(t);
        }
        edges[v] = std::move(next);
    }
    auto inside = [&](const std::string& v) {
        const auto& n = c.nodes.at(v);
        return !(n.eloise && n.focus.empty());
    };
    std::map<std::string, std::size_t> indeg;
    for (const auto& v : reach) {
        if (!inside(v)) continue;
        indeg.try_emplace(v, 0);
        for (const auto& t : edges[v]) {
            if (inside(t)) ++indeg[t];
        }
    }
    std::deque<std::string> ready;
    for (const auto& [v, d] : indeg) {
        if (d == 0) ready.push_back(v);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
        std::string v = ready.front();
        ready.pop_front();
        ++removed;
        for (const auto& t : edges[v]) {
            if (inside(t) && --indeg[t] == 0) ready.push_back(t);
        }
    }
    if (removed != indeg.size()) {
        for (const auto& [v, d] : indeg) {
            if (d > 0) return reject(F::NonAcceptingCycle, v, "a play can keep a nonempty focus forever");
        }
    }
    return {};
}

CertificateVerdict verify_certificate(const StrategyCertificate& c, Formula rho1, Formula rho0) {
    if (c.rho1 != rho1 || c.rho0 != rho0) {
        bool same = false;
        try {
            auto [p1, p0] = prepare(rho1, rho0);
            same = p1 == c.rho1 && p0 == c.rho0;
        } catch (const ValidationError&) {
        }
        if (!same) return reject(CertificateFailure::Malformed, "", "certificate is about different formulas");
    }
    return verify_certificate(c);
}

// --- Deciding ---------------------------------------------------------------------

SatResult decide_sat(Formula rho1, Formula rho0, const SolveOptions& opts) {
    SatResult r;
    std::tie(r.rho1, r.rho0) = prepare(rho1, rho0);
    r.closure = std::make_shared<const ClosureTable>(r.rho1, r.rho0);
    GameArena arena = build_arena(r.closure, ArenaOptions{opts.node_cap});
    r.eloise_nodes = arena.eloise_count();
    r.abelard_nodes = arena.abelard_count();
    BuchiSolution sol = solve_buchi(arena);
    r.satisfiable = sol.eloise_wins;
    if (r.satisfiable) {
        r.certificate = extract_certificate(arena, sol);
        CertificateVerdict v = verify_certificate(*r.certificate);
        if (!v.ok()) throw std::logic_error(std::string("extracted certificate rejected: ") + v.message);
    }
    return r;
}

}  // namespace mmu
