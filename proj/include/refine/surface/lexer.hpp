#ifndef REFINE_SURFACE_LEXER_HPP
#define REFINE_SURFACE_LEXER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "refine/common/source.hpp"

namespace refine::surface {

enum class Tok {
    End,
    Ident,
    Int,
    // keywords
    KwType, KwFun, KwVal, KwLet, KwIn, KwIf, KwThen, KwElse, KwMatch, KwWith,
    KwZero, KwSuc, KwAuto, KwFn, KwTrue, KwFalse, KwNat, KwInt, KwBool,
    // punctuation
    LParen, RParen, LBrace, RBrace, Colon, Bar, Comma, Semi, Assign, Arrow, FatArrow,
    EqEq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, Bang, AndAnd, OrOr,
};

std::string_view describe(Tok tok);

struct Token {
    Tok kind;
    std::string text;
    std::int64_t value = 0;  // Int
    Span span;
};

// Tokenizes `.rfn` source; `--` starts a line comment. Throws SyntaxError on
// characters outside the ASCII grammar and on integer literals that overflow.
std::vector<Token> lex(std::string_view source);

} // namespace refine::surface

#endif // REFINE_SURFACE_LEXER_HPP
