#include "mmu/syntax.hpp"

#include <algorithm>
#include <vector>

#include "lexer.hpp"
#include "mmu/normal_forms.hpp"

namespace mmu {

namespace {

using detail::Lexer;
using detail::Tok;

bool is_keyword(const std::string& s) {
    return s == "mu" || s == "nu" || s == "true" || s == "false" || s == "A" || s == "E";
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : lex_(text) {}

    Formula parse_all() {
        Formula f = disjunction();
        if (lex_.peek().type != Tok::End) lex_.fail("unexpected trailing input");
        return f;
    }

private:
    Formula disjunction() {
        Formula f = conjunction();
        while (lex_.accept("|")) f = Formula::disj(f, conjunction());
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (lex_.accept("&")) f = Formula::conj(f, unary());
        return f;
    }

    Formula unary() {
        const auto& t = lex_.peek();
        std::size_t pos = t.pos;
        if (lex_.accept("~")) {
            Formula g = unary();
            if (!g.closed()) throw ParseError("negation of a formula with free variables", pos);
            return negation_nnf(g);
        }
        if (lex_.accept("<")) {
            std::string a = action();
            lex_.expect(">");
            return Formula::dia(a, unary());
        }
        if (lex_.accept("[")) {
            std::string a = action();
            lex_.expect("]");
            return Formula::box(a, unary());
        }
        if (t.is("A") || t.is("E")) {
            bool universal = t.is("A");
            lex_.next();
            Formula g = unary();
            if (!g.closed()) throw ParseError("body of a universal modality must be closed", pos);
            return universal ? Formula::univ_box(g) : Formula::univ_dia(g);
        }
        if (t.is("mu") || t.is("nu")) {
            bool least = t.is("mu");
            lex_.next();
            const auto& v = lex_.peek();
            if (v.type != Tok::Ident || !detail::is_variable_name(v.text) || is_keyword(v.text)) {
                lex_.fail("expected a fixpoint variable (upper-case identifier)");
            }
            Symbol x(lex_.next().text);
            lex_.expect(".");
            scope_.push_back(x);
            Formula body = disjunction();
            scope_.pop_back();
            return Formula::fix(least, x, body);
        }
        return primary();
    }

    std::string action() {
        const auto& t = lex_.peek();
        if (t.type != Tok::Ident) lex_.fail("expected an action name");
        return lex_.next().text;
    }

    Formula primary() {
        const auto& t = lex_.peek();
        if (lex_.accept("(")) {
            Formula f = disjunction();
            lex_.expect(")");
            return f;
        }
        if (lex_.accept("true")) return Formula::top();
        if (lex_.accept("false")) return Formula::bot();
        if (t.type == Tok::Ident && !is_keyword(t.text)) {
            std::size_t pos = t.pos;
            std::string name = lex_.next().text;
            Symbol s(name);
            if (std::find(scope_.begin(), scope_.end(), s) != scope_.end()) return Formula::var(s);
            if (detail::is_variable_name(name)) throw ParseError("unbound variable '" + name + "'", pos);
            return Formula::atom(s);
        }
        lex_.fail("expected a formula");
    }

    Lexer lex_;
    std::vector<Symbol> scope_;
};

// Precedence levels for printing.
constexpr int kOr = 0;
constexpr int kAnd = 1;
constexpr int kUnary = 2;

void print(Formula f, int prec, bool open, std::string& out) {
    switch (f.kind()) {
        case Kind::Bot: out += "false"; return;
        case Kind::Top: out += "true"; return;
        case Kind::Atom: out += f.symbol().str(); return;
        case Kind::DualAtom:
            out += "~";
            out += f.symbol().str();
            return;
        case Kind::Var: out += f.symbol().str(); return;
        case Kind::Or:
        case Kind::And: {
            bool is_or = f.is(Kind::Or);
            int own = is_or ? kOr : kAnd;
            bool paren = prec > own;
            if (paren) out += "(";
            print(f.lhs(), own, false, out);
            out += is_or ? " | " : " & ";
            print(f.rhs(), own + 1, paren || open, out);
            if (paren) out += ")";
            return;
        }
        case Kind::Dia:
        case Kind::Box:
            out += f.is(Kind::Dia) ? "<" : "[";
            out += f.symbol().str();
            out += f.is(Kind::Dia) ? "> " : "] ";
            print(f.body(), kUnary, open, out);
            return;
        case Kind::UnivBox:
        case Kind::UnivDia:
            out += f.is(Kind::UnivBox) ? "A " : "E ";
            print(f.body(), kUnary, open, out);
            return;
        case Kind::Mu:
        case Kind::Nu: {
            if (!open) out += "(";
            out += f.is(Kind::Mu) ? "mu " : "nu ";
            out += f.symbol().str();
            out += ". ";
            Formula b = f.body();
            if (b.is(Kind::And) || b.is(Kind::Or)) {
                out += "(";
                print(b, kOr, true, out);
                out += ")";
            } else {
                print(b, kUnary, true, out);
            }
            if (!open) out += ")";
            return;
        }
    }
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse_all(); }

std::string to_string(Formula f) {
    std::string out;
    print(f, kOr, true, out);
    return out;
}

}  // namespace mmu
