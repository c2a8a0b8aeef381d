#include "refine/surface/parser.hpp"

#include <algorithm>

#include "refine/surface/lexer.hpp"

namespace refine::surface {

namespace {

class Parser {
public:
    explicit Parser(std::string_view source) : tokens_(lex(source)) {}

    SurfaceProgram program() {
        SurfaceProgram p;
        while (!at(Tok::End)) {
            p.items.push_back(item());
            while (accept(Tok::Semi)) {}
        }
        return p;
    }

    TypePtr type_only() {
        auto t = type();
        expect(Tok::End);
        return t;
    }

    TermPtr term_only() {
        auto t = term();
        expect(Tok::End);
        return t;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    bool at(Tok k) const { return peek().kind == k; }
    std::uint32_t start() const { return peek().span.begin; }
    std::uint32_t last_end() const { return pos_ == 0 ? 0 : tokens_[pos_ - 1].span.end; }
    Span from(std::uint32_t begin) const { return {begin, std::max(begin, last_end())}; }

    const Token& advance() { return tokens_[pos_++]; }

    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(std::vector<Tok> expected) const {
        std::vector<std::string> names;
        for (auto k : expected) names.emplace_back(describe(k));
        fail_with(std::move(names));
    }

    [[noreturn]] void fail_with(std::vector<std::string> expected) const {
        const auto& tok = peek();
        std::string msg = "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        msg += ", found ";
        msg += tok.kind == Tok::End ? std::string("end of input") : "'" + tok.text + "'";
        throw SyntaxError(msg, tok.span, std::move(expected));
    }

    const Token& expect(Tok k) {
        if (!at(k)) fail({k});
        return advance();
    }

    std::string ident() { return expect(Tok::Ident).text; }

    // ---- items -------------------------------------------------------------

    Item item() {
        auto begin = start();
        if (accept(Tok::KwType)) {
            item::Alias a;
            a.name = ident();
            if (accept(Tok::LParen)) {
                a.param = ident();
                expect(Tok::RParen);
            }
            expect(Tok::Assign);
            a.body = type();
            return Item{std::move(a), from(begin)};
        }
        if (accept(Tok::KwFun)) {
            item::Fun f;
            f.name = ident();
            do {
                auto pbegin = start();
                expect(Tok::LParen);
                Param p;
                p.name = ident();
                expect(Tok::Colon);
                p.type = type();
                expect(Tok::RParen);
                p.span = from(pbegin);
                f.params.push_back(std::move(p));
            } while (at(Tok::LParen));
            expect(Tok::Colon);
            f.result = type();
            expect(Tok::Assign);
            f.body = term();
            return Item{std::move(f), from(begin)};
        }
        if (accept(Tok::KwVal)) {
            item::Val v;
            v.name = ident();
            if (accept(Tok::Colon)) v.type = type();
            expect(Tok::Assign);
            v.body = term();
            return Item{std::move(v), from(begin)};
        }
        fail({Tok::KwType, Tok::KwFun, Tok::KwVal});
    }

    // ---- types -------------------------------------------------------------

    BaseType base_type() {
        if (accept(Tok::KwNat)) return BaseType::Nat;
        if (accept(Tok::KwInt)) return BaseType::Int;
        if (accept(Tok::KwBool)) return BaseType::Bool;
        fail({Tok::KwNat, Tok::KwInt, Tok::KwBool});
    }

    TypePtr type() {
        auto begin = start();
        if (at(Tok::LParen) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon) {
            advance();
            std::string param = ident();
            expect(Tok::Colon);
            auto domain = type();
            expect(Tok::RParen);
            expect(Tok::Arrow);
            auto codomain = type();
            return make_type(type::Arrow{param, domain, codomain}, begin);
        }
        auto lhs = type_atom();
        if (accept(Tok::Arrow)) {
            auto codomain = type();
            return make_type(type::Arrow{"", lhs, codomain}, begin);
        }
        return lhs;
    }

    TypePtr type_atom() {
        auto begin = start();
        switch (peek().kind) {
        case Tok::KwNat:
        case Tok::KwInt:
        case Tok::KwBool:
            return make_type(type::Base{base_type()}, begin);
        case Tok::LBrace: {
            advance();
            std::string binder = ident();
            expect(Tok::Colon);
            auto base = base_type();
            expect(Tok::Bar);
            auto pred = predicate();
            expect(Tok::RBrace);
            return make_type(type::Refined{binder, base, pred}, begin);
        }
        case Tok::LParen: {
            advance();
            auto inner = type();
            expect(Tok::RParen);
            return inner;
        }
        case Tok::Ident: {
            std::string name = advance().text;
            ExprPtr arg;
            if (accept(Tok::LParen)) {
                arg = predicate();
                expect(Tok::RParen);
            }
            return make_type(type::AliasRef{name, arg}, begin);
        }
        default:
            fail({Tok::KwNat, Tok::KwInt, Tok::KwBool, Tok::LBrace, Tok::LParen, Tok::Ident});
        }
    }

    template <class Node>
    TypePtr make_type(Node node, std::uint32_t begin) {
        return std::make_shared<const Type>(Type{std::move(node), from(begin)});
    }

    // ---- predicates --------------------------------------------------------

    template <class Node>
    ExprPtr make_expr(Node node, std::uint32_t begin) {
        return std::make_shared<const Expr>(Expr{std::move(node), from(begin)});
    }

    ExprPtr predicate() {
        auto begin = start();
        auto lhs = pred_or();
        if (accept(Tok::FatArrow)) {
            auto rhs = predicate();
            return make_expr(expr::Binary{ExprOp::Implies, lhs, rhs}, begin);
        }
        return lhs;
    }

    ExprPtr pred_or() {
        auto begin = start();
        auto lhs = pred_and();
        while (accept(Tok::OrOr)) {
            auto rhs = pred_and();
            lhs = make_expr(expr::Binary{ExprOp::Or, lhs, rhs}, begin);
        }
        return lhs;
    }

    ExprPtr pred_and() {
        auto begin = start();
        auto lhs = pred_not();
        while (accept(Tok::AndAnd)) {
            auto rhs = pred_not();
            lhs = make_expr(expr::Binary{ExprOp::And, lhs, rhs}, begin);
        }
        return lhs;
    }

    ExprPtr pred_not() {
        auto begin = start();
        if (accept(Tok::Bang)) {
            auto operand = pred_not();
            return make_expr(expr::Unary{ExprOp::Not, operand}, begin);
        }
        return pred_cmp();
    }

    ExprPtr pred_cmp() {
        auto begin = start();
        auto lhs = pred_sum();
        ExprOp op;
        switch (peek().kind) {
        case Tok::EqEq: op = ExprOp::Eq; break;
        case Tok::Ne: op = ExprOp::Ne; break;
        case Tok::Lt: op = ExprOp::Lt; break;
        case Tok::Le: op = ExprOp::Le; break;
        case Tok::Gt: op = ExprOp::Gt; break;
        case Tok::Ge: op = ExprOp::Ge; break;
        default: return lhs;
        }
        advance();
        auto rhs = pred_sum();
        return make_expr(expr::Binary{op, lhs, rhs}, begin);
    }

    ExprPtr pred_sum() {
        auto begin = start();
        auto lhs = pred_product();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            auto op = advance().kind == Tok::Plus ? ExprOp::Add : ExprOp::Sub;
            auto rhs = pred_product();
            lhs = make_expr(expr::Binary{op, lhs, rhs}, begin);
        }
        return lhs;
    }

    // Integer literals and arithmetic over them: the only allowed factors.
    static bool is_constant(const Expr& e) {
        if (std::holds_alternative<expr::IntLit>(e.node)) return true;
        if (const auto* u = std::get_if<expr::Unary>(&e.node)) return u->op == ExprOp::Neg && is_constant(*u->operand);
        if (const auto* b = std::get_if<expr::Binary>(&e.node)) {
            return (b->op == ExprOp::Add || b->op == ExprOp::Sub || b->op == ExprOp::Mul) && is_constant(*b->lhs) &&
                   is_constant(*b->rhs);
        }
        return false;
    }

    ExprPtr pred_product() {
        auto begin = start();
        auto lhs = pred_unary();
        while (accept(Tok::Star)) {
            auto rhs = pred_unary();
            if (!is_constant(*lhs) && !is_constant(*rhs)) {
                throw SyntaxError("multiplication requires an integer literal coefficient",
                                  cover(lhs->span, rhs->span), {"integer literal"});
            }
            lhs = make_expr(expr::Binary{ExprOp::Mul, lhs, rhs}, begin);
        }
        return lhs;
    }

    ExprPtr pred_unary() {
        auto begin = start();
        if (accept(Tok::Minus)) {
            if (at(Tok::Int)) {
                auto v = advance().value;
                return make_expr(expr::IntLit{-v}, begin);
            }
            auto operand = pred_unary();
            return make_expr(expr::Unary{ExprOp::Neg, operand}, begin);
        }
        if (accept(Tok::KwSuc)) {
            auto operand = pred_unary();
            auto one = make_expr(expr::IntLit{1}, begin);
            return make_expr(expr::Binary{ExprOp::Add, operand, one}, begin);
        }
        return pred_atom();
    }

    ExprPtr pred_atom() {
        auto begin = start();
        switch (peek().kind) {
        case Tok::Ident: return make_expr(expr::Name{advance().text}, begin);
        case Tok::Int: return make_expr(expr::IntLit{advance().value}, begin);
        case Tok::KwTrue: advance(); return make_expr(expr::BoolLit{true}, begin);
        case Tok::KwFalse: advance(); return make_expr(expr::BoolLit{false}, begin);
        case Tok::KwZero: advance(); return make_expr(expr::IntLit{0}, begin);
        case Tok::LParen: {
            advance();
            auto inner = predicate();
            expect(Tok::RParen);
            return inner;
        }
        default:
            fail({Tok::Ident, Tok::Int, Tok::KwTrue, Tok::KwFalse, Tok::KwZero, Tok::LParen});
        }
    }

    // ---- terms -------------------------------------------------------------

    template <class Node>
    TermPtr make_term(Node node, std::uint32_t begin) {
        return std::make_shared<const Term>(Term{std::move(node), from(begin)});
    }

    TermPtr term() {
        auto begin = start();
        if (accept(Tok::KwLet)) {
            std::string name = ident();
            expect(Tok::Assign);
            auto bound = term();
            expect(Tok::KwIn);
            auto body = term();
            return make_term(term::Let{name, bound, body}, begin);
        }
        if (accept(Tok::KwIf)) {
            auto cond = term();
            expect(Tok::KwThen);
            auto then_branch = term();
            expect(Tok::KwElse);
            auto else_branch = term();
            return make_term(term::If{cond, then_branch, else_branch}, begin);
        }
        if (accept(Tok::KwMatch)) return match_rest(begin);
        if (accept(Tok::KwFn)) {
            std::string param;
            TypePtr annotation;
            if (accept(Tok::LParen)) {
                param = ident();
                if (accept(Tok::Colon)) annotation = type();
                expect(Tok::RParen);
            } else {
                param = ident();
            }
            expect(Tok::FatArrow);
            auto body = term();
            return make_term(term::Lam{param, annotation, body}, begin);
        }
        return term_sum();
    }

    TermPtr match_rest(std::uint32_t begin) {
        auto scrutinee = term();
        expect(Tok::KwWith);
        accept(Tok::Bar);
        TermPtr zero_branch, suc_branch;
        std::string binder;
        for (int arm = 0; arm < 2; ++arm) {
            if (arm == 1) expect(Tok::Bar);
            if (!zero_branch && accept(Tok::KwZero)) {
                expect(Tok::Arrow);
                zero_branch = term();
            } else if (!suc_branch && accept(Tok::KwSuc)) {
                binder = ident();
                expect(Tok::Arrow);
                suc_branch = term();
            } else {
                fail(zero_branch ? std::vector<Tok>{Tok::KwSuc}
                     : suc_branch ? std::vector<Tok>{Tok::KwZero}
                                  : std::vector<Tok>{Tok::KwZero, Tok::KwSuc});
            }
        }
        return make_term(term::Match{scrutinee, zero_branch, binder, suc_branch}, begin);
    }

    TermPtr term_sum() {
        auto begin = start();
        auto lhs = term_product();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            auto op = advance().kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
            auto rhs = term_product();
            lhs = make_term(term::Arith{op, lhs, rhs}, begin);
        }
        return lhs;
    }

    static bool is_literal(const TermPtr& t) {
        return std::holds_alternative<term::NatLit>(t->node) ||
               std::holds_alternative<term::IntLit>(t->node);
    }

    TermPtr term_product() {
        auto begin = start();
        auto lhs = term_unary();
        while (accept(Tok::Star)) {
            auto rhs = term_unary();
            if (!is_literal(lhs) && !is_literal(rhs)) {
                throw SyntaxError("multiplication requires an integer literal coefficient",
                                  cover(lhs->span, rhs->span), {"integer literal"});
            }
            lhs = make_term(term::Arith{ArithOp::Mul, lhs, rhs}, begin);
        }
        return lhs;
    }

    TermPtr term_unary() {
        auto begin = start();
        if (at(Tok::Minus) && peek(1).kind == Tok::Int) {
            advance();
            auto v = advance().value;
            return make_term(term::IntLit{-v}, begin);
        }
        return term_app();
    }

    bool starts_atom() const {
        switch (peek().kind) {
        case Tok::Ident:
        case Tok::Int:
        case Tok::KwTrue:
        case Tok::KwFalse:
        case Tok::KwZero:
        case Tok::LParen:
            return true;
        default:
            return false;
        }
    }

    TermPtr term_app() {
        auto begin = start();
        if (accept(Tok::KwSuc)) {
            auto operand = term_atom();
            auto one = make_term(term::NatLit{1, true}, begin);
            return make_term(term::Arith{ArithOp::Add, operand, one}, begin);
        }
        auto fn = term_atom();
        while (starts_atom()) {
            auto arg = term_atom();
            fn = make_term(term::App{fn, arg}, begin);
        }
        return fn;
    }

    TermPtr term_atom() {
        auto begin = start();
        switch (peek().kind) {
        case Tok::Ident: return make_term(term::Var{advance().text}, begin);
        case Tok::Int: return make_term(term::NatLit{advance().value, false}, begin);
        case Tok::KwTrue: advance(); return make_term(term::BoolLit{true}, begin);
        case Tok::KwFalse: advance(); return make_term(term::BoolLit{false}, begin);
        case Tok::KwZero: advance(); return make_term(term::NatLit{0, true}, begin);
        case Tok::LParen: {
            advance();
            auto inner = term();
            if (accept(Tok::Comma)) {
                auto proof_begin = start();
                expect(Tok::KwAuto);
                auto proof = make_term(term::Auto{}, proof_begin);
                expect(Tok::RParen);
                return make_term(term::Pair{inner, proof}, begin);
            }
            if (accept(Tok::Colon)) {
                auto annotation = type();
                expect(Tok::RParen);
                return make_term(term::Annot{inner, annotation}, begin);
            }
            if (!at(Tok::RParen)) fail({Tok::RParen, Tok::Comma, Tok::Colon});
            advance();
            return inner;
        }
        default:
            fail({Tok::Ident, Tok::Int, Tok::KwTrue, Tok::KwFalse, Tok::KwZero, Tok::LParen});
        }
    }
};

} // namespace

SurfaceProgram parse(std::string_view source, std::string path) {
    Parser parser(source);
    auto program = parser.program();
    program.source = std::make_shared<const SourceFile>(std::move(path), std::string(source));
    return program;
}

TypePtr parse_type(std::string_view source) { return Parser(source).type_only(); }

TermPtr parse_term(std::string_view source) { return Parser(source).term_only(); }

} // namespace refine::surface
