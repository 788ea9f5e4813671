// Command-line front end for the monotone mu-calculus solver.
//
// Exit codes: 0 SAT / holds / accepted, 1 UNSAT / fails / rejected,
// 2 input error, 3 resource cap, 4 internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmu/errors.hpp"
#include "mmu/game.hpp"
#include "mmu/gamelogic.hpp"
#include "mmu/random.hpp"
#include "mmu/semantics.hpp"
#include "mmu/syntax.hpp"
#include "mmu/tableau.hpp"
#include "mmu/universal.hpp"

namespace {

using namespace mmu;
using nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

struct IoError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

// Formula files may carry `#` comments up to the end of a line.
std::string strip_comments(const std::string& text) {
    std::string out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out += line.substr(0, line.find('#'));
        out += '\n';
    }
    return out;
}

Formula read_formula_file(const std::string& path) { return parse_formula(strip_comments(read_file(path))); }

// A path to an existing file, or else the formula text itself.
Formula formula_arg(const std::string& arg) {
    if (std::ifstream(arg).good()) return read_formula_file(arg);
    return parse_formula(arg);
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

struct Options {
    std::size_t node_cap = SolveOptions{}.node_cap;
    bool json_out = false;
    std::uint64_t seed = 1;

    // sat / model
    std::string input;
    std::string global;
    std::string model_out;
    std::string cert_out;

    // check
    std::string model_path;
    std::string formula;
    std::string state;

    // certify
    std::string cert_path;

    // translate
    std::string from = "gamelogic";
    std::string text;

    // random
    std::size_t count = 1;
    std::size_t depth = 4;
};

int run_sat(const Options& o, bool want_model) {
    Formula psi = read_formula_file(o.input);
    Formula global = o.global.empty() ? Formula::top() : formula_arg(o.global);
    SolveOptions so;
    so.node_cap = o.node_cap;
    SolveResult r = solve(psi, global, so);

    if (!o.cert_out.empty() && r.direct && r.direct->certificate) {
        write_file(o.cert_out, certificate_to_json(*r.direct->certificate).dump(2) + "\n");
    }
    json model_json;
    if (want_model && r.model) model_json = model_to_json(*r.model);
    if (!o.model_out.empty() && r.model) write_file(o.model_out, model_to_json(*r.model).dump(2) + "\n");

    if (o.json_out) {
        json j{{"result", r.satisfiable ? "SAT" : "UNSAT"}};
        if (r.direct) {
            j["eloise_nodes"] = r.direct->eloise_nodes;
            j["abelard_nodes"] = r.direct->abelard_nodes;
            j["closure_size"] = r.direct->closure->size();
        }
        if (r.model) j["states"] = r.model->size();
        if (want_model && r.model) j["model"] = model_json;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (r.satisfiable ? "SAT" : "UNSAT") << "\n";
        if (want_model && r.model && o.model_out.empty()) std::cout << model_json.dump(2) << "\n";
    }
    return r.satisfiable ? kExitYes : kExitNo;
}

int run_check(const Options& o) {
    NeighbourhoodModel m = model_from_json(read_json_file(o.model_path));
    Formula f = formula_arg(o.formula);
    if (!f.closed()) throw ValidationError("formula is not closed");
    StateSet ext = extension(m, f);
    std::vector<std::string> names;
    for (StateId w = ext.find_first(); w != StateSet::npos; w = ext.find_next(w)) names.push_back(m.state_name(w));

    bool verdict = ext.all();
    if (!o.state.empty()) {
        auto w = m.find_state(o.state);
        if (!w) throw FormatError("unknown state " + o.state);
        verdict = ext[*w];
    }
    if (o.json_out) {
        std::cout << json{{"extension", names}, {"global", ext.all()}, {"holds", verdict}}.dump(2) << "\n";
    } else {
        std::cout << "extension: {";
        for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? ", " : "") << names[i];
        std::cout << "}\n" << (verdict ? "holds" : "fails") << "\n";
    }
    return verdict ? kExitYes : kExitNo;
}

int run_certify(const Options& o) {
    StrategyCertificate c = certificate_from_json(read_json_file(o.cert_path));
    CertificateVerdict v;
    if (!o.formula.empty()) {
        Formula rho0 = o.global.empty() ? Formula::top() : formula_arg(o.global);
        v = verify_certificate(c, formula_arg(o.formula), rho0);
    } else {
        v = verify_certificate(c);
    }
    if (o.json_out) {
        std::cout << json{{"result", failure_code(v.failure)}, {"node", v.node}, {"message", v.message}}.dump(2) << "\n";
    } else {
        std::cout << failure_code(v.failure);
        if (!v.ok()) std::cout << (v.node.empty() ? "" : " at " + v.node) << ": " << v.message;
        std::cout << "\n";
    }
    return v.ok() ? kExitYes : kExitNo;
}

int run_translate(const Options& o) {
    Dialect d = o.from == "cpdl" ? Dialect::Cpdl : Dialect::GameLogic;
    std::string text = std::ifstream(o.text).good() ? strip_comments(read_file(o.text)) : o.text;
    Formula f = translate_game_formula(text, d);
    if (o.json_out) std::cout << json{{"formula", to_string(f)}}.dump(2) << "\n";
    else std::cout << to_string(f) << "\n";
    return kExitYes;
}

int run_random(const Options& o) {
    Rng rng(o.seed);
    RandomFormulaOptions ro;
    ro.depth = o.depth;
    for (std::size_t i = 0; i < o.count; ++i) std::cout << to_string(random_formula(rng, ro)) << "\n";
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Satisfiability checking for the alternation-free monotone mu-calculus"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--node-cap", o.node_cap, "Abort when the game arena exceeds this many nodes");
    app.add_flag("--json", o.json_out, "Print machine-readable output");
    app.add_option("--seed", o.seed, "Seed for the random formula generator");

    auto* sat = app.add_subcommand("sat", "Decide satisfiability of a formula file");
    auto* model = app.add_subcommand("model", "Decide satisfiability and print a model");
    for (auto* sub : {sat, model}) {
        sub->add_option("file", o.input, "Formula file")->required();
        sub->add_option("--global", o.global, "Formula (file or text) that must hold everywhere");
        sub->add_option("--cert-out", o.cert_out, "Write the strategy certificate here");
    }
    model->add_option("-o,--output", o.model_out, "Write the model JSON here instead of stdout");

    auto* check = app.add_subcommand("check", "Evaluate a formula on a model");
    check->add_option("--model", o.model_path, "Model JSON file")->required();
    check->add_option("--formula", o.formula, "Formula file or text")->required();
    check->add_option("--state", o.state, "Report truth at this state instead of globally");

    auto* certify = app.add_subcommand("certify", "Verify a strategy certificate");
    certify->add_option("--cert", o.cert_path, "Certificate JSON file")->required();
    certify->add_option("--formula", o.formula, "Expected formula (file or text)");
    certify->add_option("--global", o.global, "Expected global assumption (file or text)");

    auto* translate = app.add_subcommand("translate", "Translate game logic or CPDL into the mu-calculus");
    translate->add_option("--from", o.from, "Source language")->check(CLI::IsMember({"cpdl", "gamelogic"}));
    translate->add_option("text", o.text, "Formula text or file")->required();

    auto* random = app.add_subcommand("random", "Print random formulas");
    random->add_option("--count", o.count, "Number of formulas");
    random->add_option("--depth", o.depth, "Maximal operator nesting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*sat) return run_sat(o, false);
        if (*model) return run_sat(o, true);
        if (*check) return run_check(o);
        if (*certify) return run_certify(o);
        if (*translate) return run_translate(o);
        if (*random) return run_random(o);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
