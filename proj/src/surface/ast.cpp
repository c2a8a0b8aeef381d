#include "refine/surface/ast.hpp"

namespace refine::surface {

bool is_suc(const term::Arith& a) {
    if (a.op != ArithOp::Add) return false;
    const auto* one = std::get_if<term::NatLit>(&a.rhs->node);
    return one != nullptr && one->peano && one->value == 1;
}

namespace {

template <class T>
bool same_ptr(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
    if (!a || !b) return !a && !b;
    return same_structure(*a, *b);
}

} // namespace

bool same_structure(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const expr::Name& x) { return x.name == std::get<expr::Name>(b.node).name; },
            [&](const expr::IntLit& x) { return x.value == std::get<expr::IntLit>(b.node).value; },
            [&](const expr::BoolLit& x) { return x.value == std::get<expr::BoolLit>(b.node).value; },
            [&](const expr::Unary& x) {
                const auto& y = std::get<expr::Unary>(b.node);
                return x.op == y.op && same_ptr(x.operand, y.operand);
            },
            [&](const expr::Binary& x) {
                const auto& y = std::get<expr::Binary>(b.node);
                return x.op == y.op && same_ptr(x.lhs, y.lhs) && same_ptr(x.rhs, y.rhs);
            },
        },
        a.node);
}

bool same_structure(const Type& a, const Type& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const type::Base& x) { return x.base == std::get<type::Base>(b.node).base; },
            [&](const type::Refined& x) {
                const auto& y = std::get<type::Refined>(b.node);
                return x.binder == y.binder && x.base == y.base && same_ptr(x.pred, y.pred);
            },
            [&](const type::Arrow& x) {
                const auto& y = std::get<type::Arrow>(b.node);
                return x.param == y.param && same_ptr(x.domain, y.domain) &&
                       same_ptr(x.codomain, y.codomain);
            },
            [&](const type::AliasRef& x) {
                const auto& y = std::get<type::AliasRef>(b.node);
                return x.name == y.name && same_ptr(x.arg, y.arg);
            },
        },
        a.node);
}

bool same_structure(const Term& a, const Term& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const term::Var& x) { return x.name == std::get<term::Var>(b.node).name; },
            [&](const term::NatLit& x) {
                const auto& y = std::get<term::NatLit>(b.node);
                return x.value == y.value && x.peano == y.peano;
            },
            [&](const term::IntLit& x) { return x.value == std::get<term::IntLit>(b.node).value; },
            [&](const term::BoolLit& x) { return x.value == std::get<term::BoolLit>(b.node).value; },
            [&](const term::Arith& x) {
                const auto& y = std::get<term::Arith>(b.node);
                return x.op == y.op && same_ptr(x.lhs, y.lhs) && same_ptr(x.rhs, y.rhs);
            },
            [&](const term::App& x) {
                const auto& y = std::get<term::App>(b.node);
                return same_ptr(x.fn, y.fn) && same_ptr(x.arg, y.arg);
            },
            [&](const term::Lam& x) {
                const auto& y = std::get<term::Lam>(b.node);
                return x.param == y.param && same_ptr(x.annotation, y.annotation) &&
                       same_ptr(x.body, y.body);
            },
            [&](const term::Let& x) {
                const auto& y = std::get<term::Let>(b.node);
                return x.name == y.name && same_ptr(x.bound, y.bound) && same_ptr(x.body, y.body);
            },
            [&](const term::If& x) {
                const auto& y = std::get<term::If>(b.node);
                return same_ptr(x.cond, y.cond) && same_ptr(x.then_branch, y.then_branch) &&
                       same_ptr(x.else_branch, y.else_branch);
            },
            [&](const term::Match& x) {
                const auto& y = std::get<term::Match>(b.node);
                return x.suc_binder == y.suc_binder && same_ptr(x.scrutinee, y.scrutinee) &&
                       same_ptr(x.zero_branch, y.zero_branch) && same_ptr(x.suc_branch, y.suc_branch);
            },
            [&](const term::Pair& x) {
                const auto& y = std::get<term::Pair>(b.node);
                return same_ptr(x.value, y.value) && same_ptr(x.proof, y.proof);
            },
            [&](const term::Auto&) { return true; },
            [&](const term::ErasedProof&) { return true; },
            [&](const term::Annot& x) {
                const auto& y = std::get<term::Annot>(b.node);
                return same_ptr(x.term, y.term) && same_ptr(x.type, y.type);
            },
        },
        a.node);
}

namespace {

bool same_params(const std::vector<Param>& a, const std::vector<Param>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name || !same_structure(*a[i].type, *b[i].type)) return false;
    }
    return true;
}

bool same_item(const Item& a, const Item& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const item::Alias& x) {
                const auto& y = std::get<item::Alias>(b.node);
                return x.name == y.name && x.param == y.param && same_ptr(x.body, y.body);
            },
            [&](const item::Fun& x) {
                const auto& y = std::get<item::Fun>(b.node);
                return x.name == y.name && same_params(x.params, y.params) &&
                       same_ptr(x.result, y.result) && same_ptr(x.body, y.body);
            },
            [&](const item::Val& x) {
                const auto& y = std::get<item::Val>(b.node);
                return x.name == y.name && same_ptr(x.type, y.type) && same_ptr(x.body, y.body);
            },
        },
        a.node);
}

} // namespace

bool same_structure(const SurfaceProgram& a, const SurfaceProgram& b) {
    if (a.items.size() != b.items.size()) return false;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        if (!same_item(a.items[i], b.items[i])) return false;
    }
    return true;
}

} // namespace refine::surface
