#include "refine/surface/lexer.hpp"

#include <cctype>
#include <limits>
#include <unordered_map>

#include "refine/surface/parser.hpp"

namespace refine::surface {

std::string_view describe(Tok tok) {
    switch (tok) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer literal";
    case Tok::KwType: return "'type'";
    case Tok::KwFun: return "'fun'";
    case Tok::KwVal: return "'val'";
    case Tok::KwLet: return "'let'";
    case Tok::KwIn: return "'in'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwMatch: return "'match'";
    case Tok::KwWith: return "'with'";
    case Tok::KwZero: return "'zero'";
    case Tok::KwSuc: return "'suc'";
    case Tok::KwAuto: return "'auto'";
    case Tok::KwFn: return "'fn'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwNat: return "'Nat'";
    case Tok::KwInt: return "'Int'";
    case Tok::KwBool: return "'Bool'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Colon: return "':'";
    case Tok::Bar: return "'|'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Assign: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::EqEq: return "'=='";
    case Tok::Ne: return "'/='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Bang: return "'!'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    }
    return "token";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
    static const std::unordered_map<std::string_view, Tok> table = {
        {"type", Tok::KwType}, {"fun", Tok::KwFun},     {"val", Tok::KwVal},
        {"let", Tok::KwLet},   {"in", Tok::KwIn},       {"if", Tok::KwIf},
        {"then", Tok::KwThen}, {"else", Tok::KwElse},   {"match", Tok::KwMatch},
        {"with", Tok::KwWith}, {"zero", Tok::KwZero},   {"suc", Tok::KwSuc},
        {"auto", Tok::KwAuto}, {"fn", Tok::KwFn},       {"true", Tok::KwTrue},
        {"false", Tok::KwFalse}, {"Nat", Tok::KwNat},   {"Int", Tok::KwInt},
        {"Bool", Tok::KwBool},
    };
    return table;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

} // namespace

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::uint32_t i = 0;
    const auto n = static_cast<std::uint32_t>(src.size());

    auto emit = [&](Tok kind, std::uint32_t begin, std::uint32_t end) {
        out.push_back(Token{kind, std::string(src.substr(begin, end - begin)), 0, {begin, end}});
    };

    while (i < n) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < n && src[i + 1] == '-') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        std::uint32_t begin = i;
        if (ident_start(c)) {
            while (i < n && ident_char(src[i])) ++i;
            auto word = src.substr(begin, i - begin);
            auto kw = keywords().find(word);
            emit(kw == keywords().end() ? Tok::Ident : kw->second, begin, i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t value = 0;
            while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) {
                int digit = src[i] - '0';
                if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
                    throw SyntaxError("integer literal out of range", {begin, i + 1}, {});
                }
                value = value * 10 + digit;
                ++i;
            }
            emit(Tok::Int, begin, i);
            out.back().value = value;
            continue;
        }
        auto two = [&](char next) { return i + 1 < n && src[i + 1] == next; };
        Tok kind;
        std::uint32_t len = 1;
        switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ':': kind = Tok::Colon; break;
        case ',': kind = Tok::Comma; break;
        case ';': kind = Tok::Semi; break;
        case '+': kind = Tok::Plus; break;
        case '*': kind = Tok::Star; break;
        case '|':
            if (two('|')) { kind = Tok::OrOr; len = 2; } else { kind = Tok::Bar; }
            break;
        case '&':
            if (!two('&')) throw SyntaxError("stray '&'", {begin, begin + 1}, {"'&&'"});
            kind = Tok::AndAnd;
            len = 2;
            break;
        case '=':
            if (two('=')) { kind = Tok::EqEq; len = 2; }
            else if (two('>')) { kind = Tok::FatArrow; len = 2; }
            else { kind = Tok::Assign; }
            break;
        case '-':
            if (two('>')) { kind = Tok::Arrow; len = 2; } else { kind = Tok::Minus; }
            break;
        case '/':
            if (!two('=')) throw SyntaxError("stray '/'", {begin, begin + 1}, {"'/='"});
            kind = Tok::Ne;
            len = 2;
            break;
        case '<':
            if (two('=')) { kind = Tok::Le; len = 2; } else { kind = Tok::Lt; }
            break;
        case '>':
            if (two('=')) { kind = Tok::Ge; len = 2; } else { kind = Tok::Gt; }
            break;
        case '!': kind = Tok::Bang; break;
        default:
            throw SyntaxError("unexpected character", {begin, begin + 1}, {});
        }
        i += len;
        emit(kind, begin, i);
    }
    out.push_back(Token{Tok::End, "", 0, {n, n}});
    return out;
}

} // namespace refine::surface
