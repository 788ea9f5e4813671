#pragma once

// Tokenizer shared by the formula and game-term parsers.

#include <cctype>
#include <string>
#include <string_view>

#include "mmu/errors.hpp"

namespace mmu::detail {

enum class Tok { End, Ident, Punct };

struct Token {
    Tok type = Tok::End;
    std::string text;
    std::size_t pos = 0;

    bool is(std::string_view s) const { return type != Tok::End && text == s; }
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token next() {
        Token t = cur_;
        advance();
        return t;
    }

    bool accept(std::string_view s) {
        if (cur_.is(s)) {
            advance();
            return true;
        }
        return false;
    }

    void expect(std::string_view s) {
        if (!accept(s)) fail("expected '" + std::string(s) + "'");
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::string found = cur_.type == Tok::End ? "end of input" : "'" + cur_.text + "'";
        throw ParseError(what + ", found " + found, cur_.pos);
    }

private:
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        cur_ = Token{};
        cur_.pos = i_;
        if (i_ >= src_.size()) return;
        char c = src_[i_];
        if (ident_start(c)) {
            std::size_t j = i_;
            while (j < src_.size() && ident_char(src_[j])) ++j;
            cur_.type = Tok::Ident;
            cur_.text = std::string(src_.substr(i_, j - i_));
            i_ = j;
            return;
        }
        if (std::string_view("~&|<>[]().?;*^!").find(c) == std::string_view::npos) {
            throw ParseError(std::string("unexpected character '") + c + "'", i_);
        }
        cur_.type = Tok::Punct;
        cur_.text = std::string(1, c);
        ++i_;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token cur_;
};

inline bool is_variable_name(std::string_view s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

}  // namespace mmu::detail
