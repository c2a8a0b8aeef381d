#include "refine/surface/aliases.hpp"

#include <map>
#include <set>

#include "refine/common/error.hpp"

namespace refine::surface {

namespace {

struct AliasDef {
    std::optional<std::string> param;
    TypePtr body;
    Span span;
};

void free_names(const Expr& e, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const expr::Name& x) { out.insert(x.name); },
                   [](const expr::IntLit&) {},
                   [](const expr::BoolLit&) {},
                   [&](const expr::Unary& x) { free_names(*x.operand, out); },
                   [&](const expr::Binary& x) {
                       free_names(*x.lhs, out);
                       free_names(*x.rhs, out);
                   },
               },
               e.node);
}

void free_names(const Type& t, std::set<std::string>& out) {
    std::visit(overloaded{
                   [](const type::Base&) {},
                   [&](const type::Refined& x) {
                       std::set<std::string> inner;
                       free_names(*x.pred, inner);
                       inner.erase(x.binder);
                       out.insert(inner.begin(), inner.end());
                   },
                   [&](const type::Arrow& x) {
                       free_names(*x.domain, out);
                       std::set<std::string> inner;
                       free_names(*x.codomain, inner);
                       if (!x.param.empty()) inner.erase(x.param);
                       out.insert(inner.begin(), inner.end());
                   },
                   [&](const type::AliasRef& x) {
                       if (x.arg) free_names(*x.arg, out);
                   },
               },
               t.node);
}

std::string prime_until_fresh(std::string name, const std::set<std::string>& avoid) {
    do {
        name += '\'';
    } while (avoid.count(name) != 0);
    return name;
}

ExprPtr subst_expr(const ExprPtr& e, const std::string& name, const ExprPtr& arg, Span span) {
    return std::visit(
        overloaded{
            [&](const expr::Name& x) -> ExprPtr {
                if (x.name == name) return arg;
                return std::make_shared<const Expr>(Expr{x, span});
            },
            [&](const expr::IntLit& x) -> ExprPtr { return std::make_shared<const Expr>(Expr{x, span}); },
            [&](const expr::BoolLit& x) -> ExprPtr { return std::make_shared<const Expr>(Expr{x, span}); },
            [&](const expr::Unary& x) -> ExprPtr {
                return std::make_shared<const Expr>(
                    Expr{expr::Unary{x.op, subst_expr(x.operand, name, arg, span)}, span});
            },
            [&](const expr::Binary& x) -> ExprPtr {
                return std::make_shared<const Expr>(
                    Expr{expr::Binary{x.op, subst_expr(x.lhs, name, arg, span),
                                      subst_expr(x.rhs, name, arg, span)},
                         span});
            },
        },
        e->node);
}

ExprPtr with_span(const ExprPtr& e, Span span) {
    return subst_expr(e, "", nullptr, span);
}

ExprPtr name_expr(const std::string& name, Span span) {
    return std::make_shared<const Expr>(Expr{expr::Name{name}, span});
}

// Capture-avoiding T[name := arg]; every node of the result carries `span`.
TypePtr subst_type(const TypePtr& t, const std::string& name, const ExprPtr& arg, Span span) {
    std::set<std::string> arg_free;
    if (arg) free_names(*arg, arg_free);
    auto rebuilt = [&](auto node) { return std::make_shared<const Type>(Type{std::move(node), span}); };

    return std::visit(
        overloaded{
            [&](const type::Base& x) -> TypePtr { return rebuilt(x); },
            [&](const type::Refined& x) -> TypePtr {
                if (x.binder == name) return rebuilt(type::Refined{x.binder, x.base, with_span(x.pred, span)});
                std::string binder = x.binder;
                ExprPtr pred = x.pred;
                if (arg_free.count(binder) != 0) {
                    std::set<std::string> avoid = arg_free;
                    free_names(*pred, avoid);
                    binder = prime_until_fresh(binder, avoid);
                    pred = subst_expr(pred, x.binder, name_expr(binder, span), span);
                }
                return rebuilt(type::Refined{binder, x.base, subst_expr(pred, name, arg, span)});
            },
            [&](const type::Arrow& x) -> TypePtr {
                auto domain = subst_type(x.domain, name, arg, span);
                if (!x.param.empty() && x.param == name) {
                    return rebuilt(type::Arrow{x.param, domain, subst_type(x.codomain, "", nullptr, span)});
                }
                std::string param = x.param;
                TypePtr codomain = x.codomain;
                if (!param.empty() && arg_free.count(param) != 0) {
                    std::set<std::string> avoid = arg_free;
                    free_names(*codomain, avoid);
                    param = prime_until_fresh(param, avoid);
                    codomain = subst_type(codomain, x.param, name_expr(param, span), span);
                }
                return rebuilt(type::Arrow{param, domain, subst_type(codomain, name, arg, span)});
            },
            [&](const type::AliasRef& x) -> TypePtr {
                return rebuilt(type::AliasRef{x.name, x.arg ? subst_expr(x.arg, name, arg, span) : nullptr});
            },
        },
        t->node);
}

class Expander {
public:
    explicit Expander(const SurfaceProgram& program) {
        for (const auto& it : program.items) {
            const auto* alias = std::get_if<item::Alias>(&it.node);
            if (alias == nullptr) continue;
            if (!aliases_.emplace(alias->name, AliasDef{alias->param, alias->body, it.span}).second) {
                throw Error(ErrorKind::DuplicateDefinition,
                            "type alias '" + alias->name + "' is defined twice", it.span);
            }
        }
        for (const auto& [name, def] : aliases_) visit_alias(name);
    }

    TypePtr expand(const TypePtr& t) {
        return std::visit(
            overloaded{
                [&](const type::Base&) { return t; },
                [&](const type::Refined&) { return t; },
                [&](const type::Arrow& x) -> TypePtr {
                    return std::make_shared<const Type>(
                        Type{type::Arrow{x.param, expand(x.domain), expand(x.codomain)}, t->span});
                },
                [&](const type::AliasRef& x) -> TypePtr {
                    const auto& def = lookup(x.name, t->span);
                    if (def.param.has_value() != (x.arg != nullptr)) {
                        throw Error(ErrorKind::AliasArity,
                                    "type alias '" + x.name + "' takes " +
                                        (def.param ? "one argument" : "no arguments"),
                                    t->span);
                    }
                    auto body = expanded_body(x.name);
                    if (!def.param) return subst_type(body, "", nullptr, t->span);
                    return subst_type(body, *def.param, x.arg, t->span);
                },
            },
            t->node);
    }

    TermPtr expand(const TermPtr& t) {
        auto rebuilt = [&](auto node) { return std::make_shared<const Term>(Term{std::move(node), t->span}); };
        return std::visit(
            overloaded{
                [&](const term::Arith& x) { return rebuilt(term::Arith{x.op, expand(x.lhs), expand(x.rhs)}); },
                [&](const term::App& x) { return rebuilt(term::App{expand(x.fn), expand(x.arg)}); },
                [&](const term::Lam& x) {
                    return rebuilt(term::Lam{x.param, x.annotation ? expand(x.annotation) : nullptr,
                                             expand(x.body)});
                },
                [&](const term::Let& x) { return rebuilt(term::Let{x.name, expand(x.bound), expand(x.body)}); },
                [&](const term::If& x) {
                    return rebuilt(term::If{expand(x.cond), expand(x.then_branch), expand(x.else_branch)});
                },
                [&](const term::Match& x) {
                    return rebuilt(term::Match{expand(x.scrutinee), expand(x.zero_branch), x.suc_binder,
                                               expand(x.suc_branch)});
                },
                [&](const term::Pair& x) { return rebuilt(term::Pair{expand(x.value), expand(x.proof)}); },
                [&](const term::Annot& x) { return rebuilt(term::Annot{expand(x.term), expand(x.type)}); },
                [&](const auto&) { return t; },
            },
            t->node);
    }

    TypePtr expanded_body(const std::string& name) {
        auto it = expanded_.find(name);
        if (it != expanded_.end()) return it->second;
        auto body = expand(aliases_.at(name).body);
        expanded_.emplace(name, body);
        return body;
    }

private:
    std::map<std::string, AliasDef> aliases_;
    std::map<std::string, TypePtr> expanded_;
    std::map<std::string, int> state_;  // 1 = on stack, 2 = done

    const AliasDef& lookup(const std::string& name, Span span) const {
        auto it = aliases_.find(name);
        if (it == aliases_.end()) {
            throw Error(ErrorKind::UnknownAlias, "unknown type '" + name + "'", span);
        }
        return it->second;
    }

    void visit_alias(const std::string& name) {
        auto& st = state_[name];
        if (st == 2) return;
        if (st == 1) {
            throw Error(ErrorKind::CyclicAlias, "type alias '" + name + "' is defined in terms of itself",
                        aliases_.at(name).span);
        }
        st = 1;
        visit_refs(aliases_.at(name).body);
        state_[name] = 2;
    }

    void visit_refs(const TypePtr& t) {
        std::visit(overloaded{
                       [&](const type::Arrow& x) {
                           visit_refs(x.domain);
                           visit_refs(x.codomain);
                       },
                       [&](const type::AliasRef& x) {
                           lookup(x.name, t->span);
                           visit_alias(x.name);
                       },
                       [](const auto&) {},
                   },
                   t->node);
    }
};

} // namespace

SurfaceProgram expand_aliases(const SurfaceProgram& program) {
    Expander ex(program);
    SurfaceProgram out;
    out.source = program.source;
    for (const auto& it : program.items) {
        Item copy{it.node, it.span};
        std::visit(overloaded{
                       [&](item::Alias& a) { a.body = ex.expanded_body(a.name); },
                       [&](item::Fun& f) {
                           for (auto& p : f.params) p.type = ex.expand(p.type);
                           f.result = ex.expand(f.result);
                           f.body = ex.expand(f.body);
                       },
                       [&](item::Val& v) {
                           if (v.type) v.type = ex.expand(v.type);
                           v.body = ex.expand(v.body);
                       },
                   },
                   copy.node);
        out.items.push_back(std::move(copy));
    }
    return out;
}

} // namespace refine::surface
