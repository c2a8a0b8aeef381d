#include "refine/surface/printer.hpp"

namespace refine::surface {

namespace {

std::string_view op_text(ExprOp op) {
    switch (op) {
    case ExprOp::Add: return "+";
    case ExprOp::Sub: return "-";
    case ExprOp::Mul: return "*";
    case ExprOp::Eq: return "==";
    case ExprOp::Ne: return "/=";
    case ExprOp::Lt: return "<";
    case ExprOp::Le: return "<=";
    case ExprOp::Gt: return ">";
    case ExprOp::Ge: return ">=";
    case ExprOp::And: return "&&";
    case ExprOp::Or: return "||";
    case ExprOp::Implies: return "=>";
    case ExprOp::Not: return "!";
    case ExprOp::Neg: return "-";
    }
    return "?";
}

bool is_atomic(const Term& t) {
    return std::holds_alternative<term::Var>(t.node) ||
           std::holds_alternative<term::NatLit>(t.node) ||
           std::holds_alternative<term::BoolLit>(t.node) ||
           std::holds_alternative<term::Pair>(t.node) ||
           std::holds_alternative<term::Annot>(t.node);
}

std::string atom(const TermPtr& t) {
    auto text = print(*t);
    return is_atomic(*t) ? text : "(" + text + ")";
}

} // namespace

std::string print(const Expr& e) {
    return std::visit(
        overloaded{
            [](const expr::Name& x) { return x.name; },
            [](const expr::IntLit& x) {
                return x.value < 0 ? "(" + std::to_string(x.value) + ")" : std::to_string(x.value);
            },
            [](const expr::BoolLit& x) { return std::string(x.value ? "true" : "false"); },
            [](const expr::Unary& x) {
                // "-(3)" must not come back as the literal -3.
                return "(" + std::string(op_text(x.op)) + "(" + print(*x.operand) + "))";
            },
            [](const expr::Binary& x) {
                return "(" + print(*x.lhs) + " " + std::string(op_text(x.op)) + " " +
                       print(*x.rhs) + ")";
            },
        },
        e.node);
}

std::string print(const Type& t) {
    return std::visit(
        overloaded{
            [](const type::Base& x) { return std::string(to_string(x.base)); },
            [](const type::Refined& x) {
                return "{" + x.binder + ": " + std::string(to_string(x.base)) + " | " +
                       print(*x.pred) + "}";
            },
            [](const type::Arrow& x) {
                std::string dom = print(*x.domain);
                if (!x.param.empty()) return "(" + x.param + " : " + dom + ") -> " + print(*x.codomain);
                if (std::holds_alternative<type::Arrow>(x.domain->node)) dom = "(" + dom + ")";
                return dom + " -> " + print(*x.codomain);
            },
            [](const type::AliasRef& x) {
                return x.arg ? x.name + "(" + print(*x.arg) + ")" : x.name;
            },
        },
        t.node);
}

std::string print(const Term& t) {
    return std::visit(
        overloaded{
            [](const term::Var& x) { return x.name; },
            [](const term::NatLit& x) {
                return x.peano && x.value == 0 ? std::string("zero") : std::to_string(x.value);
            },
            [](const term::IntLit& x) { return std::to_string(x.value); },
            [](const term::BoolLit& x) { return std::string(x.value ? "true" : "false"); },
            [](const term::Arith& x) {
                if (is_suc(x)) return "suc " + atom(x.lhs);
                std::string_view op = x.op == ArithOp::Add ? " + " : x.op == ArithOp::Sub ? " - " : " * ";
                return atom(x.lhs) + std::string(op) + atom(x.rhs);
            },
            [](const term::App& x) {
                // Application is left-nested, so a nested App on the left needs no parens.
                auto fn = std::holds_alternative<term::App>(x.fn->node) ? print(*x.fn) : atom(x.fn);
                return fn + " " + atom(x.arg);
            },
            [](const term::Lam& x) {
                std::string param = x.annotation ? "(" + x.param + " : " + print(*x.annotation) + ")"
                                                 : x.param;
                return "fn " + param + " => " + print(*x.body);
            },
            [](const term::Let& x) {
                return "let " + x.name + " = " + print(*x.bound) + " in " + print(*x.body);
            },
            [](const term::If& x) {
                return "if " + print(*x.cond) + " then " + atom(x.then_branch) + " else " +
                       print(*x.else_branch);
            },
            [](const term::Match& x) {
                return "match " + print(*x.scrutinee) + " with | zero -> " + atom(x.zero_branch) +
                       " | suc " + x.suc_binder + " -> " + atom(x.suc_branch);
            },
            [](const term::Pair& x) { return "(" + print(*x.value) + ", " + print(*x.proof) + ")"; },
            [](const term::Auto&) { return std::string("auto"); },
            [](const term::ErasedProof&) { return std::string("•"); },
            [](const term::Annot& x) { return "(" + print(*x.term) + " : " + print(*x.type) + ")"; },
        },
        t.node);
}

std::string print(const SurfaceProgram& program) {
    std::string out;
    for (const auto& it : program.items) {
        out += std::visit(
            overloaded{
                [](const item::Alias& x) {
                    return "type " + x.name + (x.param ? "(" + *x.param + ")" : "") + " = " +
                           print(*x.body);
                },
                [](const item::Fun& x) {
                    std::string s = "fun " + x.name;
                    for (const auto& p : x.params) s += " (" + p.name + " : " + print(*p.type) + ")";
                    return s + " : " + print(*x.result) + " =\n  " + print(*x.body);
                },
                [](const item::Val& x) {
                    return "val " + x.name + (x.type ? " : " + print(*x.type) : "") + " = " +
                           print(*x.body);
                },
            },
            it.node);
        out += "\n";
    }
    return out;
}

} // namespace refine::surface
