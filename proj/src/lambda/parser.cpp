#include "rcam/lambda/parser.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "rcam/error.hpp"

namespace rcam::lambda {

namespace {

enum class Tok { lambda, dot, lparen, rparen, ident, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
        } else if (c == '\\') {
            out.push_back({Tok::lambda, "\\", i++});
        } else if (src.substr(i, 2) == "\xCE\xBB") {  // UTF-8 λ
            out.push_back({Tok::lambda, "λ", i});
            i += 2;
        } else if (c == '.') {
            out.push_back({Tok::dot, ".", i++});
        } else if (c == '(') {
            out.push_back({Tok::lparen, "(", i++});
        } else if (c == ')') {
            out.push_back({Tok::rparen, ")", i++});
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            std::string word(src.substr(i, j - i));
            out.push_back({word == "lam" ? Tok::lambda : Tok::ident, word, i});
            i = j;
        } else {
            std::size_t len = 1;
            while (i + len < src.size() && (static_cast<unsigned char>(src[i + len]) & 0xC0) == 0x80)
                ++len;
            throw ParseError(i, std::string(src.substr(i, len)), "unexpected character");
        }
    }
    out.push_back({Tok::end, "", src.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Term parse_all() {
        Term t = parse_term();
        if (peek().kind != Tok::end) fail("expected end of input");
        return t;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(peek().pos, peek().text, what);
    }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(std::string("expected ") + what);
        ++pos_;
    }

    bool starts_atom() const { return peek().kind == Tok::ident || peek().kind == Tok::lparen; }

    Term parse_term() {
        if (peek().kind == Tok::lambda) return parse_abs();
        if (!starts_atom()) fail("expected a term");
        Term acc = parse_atom();
        while (true) {
            if (starts_atom()) {
                acc = Term::app(std::move(acc), parse_atom());
            } else if (peek().kind == Tok::lambda) {
                acc = Term::app(std::move(acc), parse_abs());
                break;
            } else {
                break;
            }
        }
        return acc;
    }

    Term parse_abs() {
        expect(Tok::lambda, "abstraction");
        if (peek().kind != Tok::ident) fail("expected a parameter name");
        std::string param = next().text;
        expect(Tok::dot, "'.'");
        return Term::lam(std::move(param), parse_term());
    }

    Term parse_atom() {
        if (peek().kind == Tok::ident) return Term::var(next().text);
        expect(Tok::lparen, "'('");
        Term t = parse_term();
        expect(Tok::rparen, "')'");
        return t;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Term parse(std::string_view text) { return Parser(lex(text)).parse_all(); }

}  // namespace rcam::lambda
