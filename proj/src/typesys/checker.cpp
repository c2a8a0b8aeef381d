#include "refine/typesys/checker.hpp"

#include <map>
#include <set>

namespace refine::typesys {

using logic::CmpOp;
using logic::LinearTerm;
using logic::Predicate;
using logic::Sort;
namespace term = surface::term;

namespace {

constexpr const char* kAnonymousParam = "!arg";

Sort sort_of(BaseType b) { return b == BaseType::Bool ? Sort::Bool : Sort::Int; }

std::string describe(const RefinedType& t) {
    return t.is_base() ? std::string(to_string(t.as_base().base)) : "a function";
}

[[noreturn]] void mismatch(const std::string& what, Span span) {
    throw Error(ErrorKind::TypeMismatch, what, span);
}

// Predicate elaboration: surface expressions to sorted logic terms.
class Elaborator {
public:
    explicit Elaborator(const TypingContext& ctx) : ctx_(ctx) {}

    RefinedType type(const surface::Type& t) {
        return std::visit(
            surface::overloaded{
                [&](const surface::type::Base& x) { return RefinedType::base(x.base); },
                [&](const surface::type::Refined& x) {
                    locals_.push_back({x.binder, x.binder, sort_of(x.base)});
                    auto pred = predicate(*x.pred);
                    locals_.pop_back();
                    return RefinedType::base(x.base, x.binder, pred);
                },
                [&](const surface::type::Arrow& x) {
                    auto domain = type(*x.domain);
                    std::string param = x.param.empty() ? kAnonymousParam : x.param;
                    std::optional<Sort> sort;
                    if (domain.is_base()) sort = sort_of(domain.as_base().base);
                    locals_.push_back({param, param, sort});
                    auto codomain = type(*x.codomain);
                    locals_.pop_back();
                    return RefinedType::fun(param, domain, codomain);
                },
                [&](const surface::type::AliasRef& x) -> RefinedType {
                    throw Error(ErrorKind::UnknownAlias, "unexpanded type alias '" + x.name + "'", t.span);
                },
            },
            t.node);
    }

    Predicate predicate(const surface::Expr& e) {
        auto r = expr(e);
        if (r.sort != Sort::Bool) {
            throw Error(ErrorKind::Sort, "expected a Bool-sorted predicate, found an Int term", e.span);
        }
        return r.pred;
    }

private:
    struct Local {
        std::string source;
        std::string name;
        std::optional<Sort> sort;  // nullopt: function-typed
    };
    struct Elab {
        Sort sort;
        LinearTerm term;
        Predicate pred;
    };

    const TypingContext& ctx_;
    std::vector<Local> locals_;

    static Elab int_elab(LinearTerm t) { return {Sort::Int, std::move(t), {}}; }
    static Elab bool_elab(Predicate p) { return {Sort::Bool, {}, std::move(p)}; }

    Elab resolve(const std::string& source, Span span) const {
        std::optional<Sort> sort;
        std::string name;
        bool found = false;
        for (auto it = locals_.rbegin(); it != locals_.rend(); ++it) {
            if (it->source == source) {
                sort = it->sort;
                name = it->name;
                found = true;
                break;
            }
        }
        if (!found) {
            const auto* b = ctx_.lookup_source(source);
            if (b == nullptr) {
                throw Error(ErrorKind::Sort, "unbound name '" + source + "' in refinement predicate", span);
            }
            name = b->name;
            if (b->type.is_base()) sort = sort_of(b->type.as_base().base);
        }
        if (!sort) {
            throw Error(ErrorKind::Sort, "function '" + source + "' cannot appear in a refinement predicate",
                        span);
        }
        return *sort == Sort::Int ? int_elab(LinearTerm::var(name)) : bool_elab(Predicate::var(name));
    }

    Elab int_operand(const surface::Expr& e) {
        auto r = expr(e);
        if (r.sort != Sort::Int) throw Error(ErrorKind::Sort, "expected an Int term, found a Bool predicate", e.span);
        return r;
    }

    Elab bool_operand(const surface::Expr& e) {
        auto r = expr(e);
        if (r.sort != Sort::Bool) throw Error(ErrorKind::Sort, "expected a Bool predicate, found an Int term", e.span);
        return r;
    }

    Elab expr(const surface::Expr& e) {
        using surface::ExprOp;
        return std::visit(
            surface::overloaded{
                [&](const surface::expr::Name& x) { return resolve(x.name, e.span); },
                [&](const surface::expr::IntLit& x) { return int_elab(LinearTerm::constant(x.value)); },
                [&](const surface::expr::BoolLit& x) { return bool_elab(Predicate::truth(x.value)); },
                [&](const surface::expr::Unary& x) {
                    if (x.op == ExprOp::Neg) return int_elab(LinearTerm::neg(int_operand(*x.operand).term));
                    return bool_elab(Predicate::negate(bool_operand(*x.operand).pred));
                },
                [&](const surface::expr::Binary& x) -> Elab {
                    switch (x.op) {
                    case ExprOp::Add:
                        return int_elab(LinearTerm::add(int_operand(*x.lhs).term, int_operand(*x.rhs).term));
                    case ExprOp::Sub:
                        return int_elab(LinearTerm::sub(int_operand(*x.lhs).term, int_operand(*x.rhs).term));
                    case ExprOp::Mul: {
                        auto lhs = int_operand(*x.lhs).term;
                        auto rhs = int_operand(*x.rhs).term;
                        auto lf = logic::normalize(lhs);
                        auto rf = logic::normalize(rhs);
                        if (lf.coefficients.empty()) return int_elab(LinearTerm::scale(lf.constant, rhs));
                        if (rf.coefficients.empty()) return int_elab(LinearTerm::scale(rf.constant, lhs));
                        throw Error(ErrorKind::NonLinearPredicate,
                                    "multiplication of two variable terms is not linear", e.span);
                    }
                    case ExprOp::Eq:
                    case ExprOp::Ne: {
                        auto lhs = expr(*x.lhs);
                        auto rhs = expr(*x.rhs);
                        if (lhs.sort != rhs.sort) {
                            throw Error(ErrorKind::Sort, "cannot compare an Int term with a Bool predicate",
                                        e.span);
                        }
                        Predicate p = lhs.sort == Sort::Int
                                          ? Predicate::compare(x.op == ExprOp::Eq ? CmpOp::Eq : CmpOp::Ne,
                                                               lhs.term, rhs.term)
                                          : Predicate::iff(lhs.pred, rhs.pred);
                        if (lhs.sort == Sort::Bool && x.op == ExprOp::Ne) p = Predicate::negate(p);
                        return bool_elab(p);
                    }
                    case ExprOp::Lt:
                    case ExprOp::Le:
                    case ExprOp::Gt:
                    case ExprOp::Ge: {
                        static const std::map<ExprOp, CmpOp> ops = {{ExprOp::Lt, CmpOp::Lt},
                                                                    {ExprOp::Le, CmpOp::Le},
                                                                    {ExprOp::Gt, CmpOp::Gt},
                                                                    {ExprOp::Ge, CmpOp::Ge}};
                        return bool_elab(Predicate::compare(ops.at(x.op), int_operand(*x.lhs).term,
                                                            int_operand(*x.rhs).term));
                    }
                    case ExprOp::And:
                        return bool_elab(Predicate::conj(bool_operand(*x.lhs).pred, bool_operand(*x.rhs).pred));
                    case ExprOp::Or:
                        return bool_elab(Predicate::disj(bool_operand(*x.lhs).pred, bool_operand(*x.rhs).pred));
                    case ExprOp::Implies:
                        return bool_elab(
                            Predicate::implies(bool_operand(*x.lhs).pred, bool_operand(*x.rhs).pred));
                    default:
                        throw Error(ErrorKind::Sort, "malformed predicate", e.span);
                    }
                },
            },
            e.node);
    }
};

void well_formed_in(const TypingContext& ctx, const RefinedType& t, std::map<std::string, std::optional<Sort>>& locals,
                    Span span) {
    auto check_pred = [&](const Predicate& p) {
        for (const auto& [name, sort] : logic::free_symbols(p)) {
            std::optional<Sort> found;
            bool bound = false;
            if (auto it = locals.find(name); it != locals.end()) {
                found = it->second;
                bound = true;
            } else if (const auto* b = ctx.lookup(name)) {
                bound = true;
                if (b->type.is_base()) found = sort_of(b->type.as_base().base);
            }
            if (!bound) throw Error(ErrorKind::Sort, "unbound name '" + name + "' in refinement predicate", span);
            if (!found) throw Error(ErrorKind::Sort, "function '" + name + "' in refinement predicate", span);
            if (*found != sort) {
                throw Error(ErrorKind::Sort,
                            "'" + name + "' is " + (*found == Sort::Int ? "Int" : "Bool") + "-sorted but used as " +
                                (sort == Sort::Int ? "Int" : "Bool"),
                            span);
            }
        }
    };
    if (t.is_base()) {
        const auto& b = t.as_base();
        auto saved = locals.find(b.binder) != locals.end() ? std::optional(locals[b.binder]) : std::nullopt;
        locals[b.binder] = sort_of(b.base);
        check_pred(b.pred);
        if (saved) locals[b.binder] = *saved; else locals.erase(b.binder);
        return;
    }
    const auto& f = t.as_fun();
    well_formed_in(ctx, *f.domain, locals, span);
    auto saved = locals.find(f.param) != locals.end() ? std::optional(locals[f.param]) : std::nullopt;
    locals[f.param] = f.domain->is_base() ? std::optional(sort_of(f.domain->as_base().base)) : std::nullopt;
    well_formed_in(ctx, *f.codomain, locals, span);
    if (saved) locals[f.param] = *saved; else locals.erase(f.param);
}

bool in_scope(const TypingContext& ctx, const Predicate& p, const std::set<std::string>& allowed) {
    for (const auto& [name, sort] : logic::free_symbols(p)) {
        if (allowed.count(name) == 0 && !ctx.has_name(name)) return false;
    }
    return true;
}

RefinedType scope_out_in(const TypingContext& ctx, const RefinedType& t, std::set<std::string> allowed) {
    if (t.is_base()) {
        const auto& b = t.as_base();
        allowed.insert(b.binder);
        if (in_scope(ctx, b.pred, allowed)) return t;
        return RefinedType::base(b.base, b.binder);
    }
    const auto& f = t.as_fun();
    auto domain = scope_out_in(ctx, *f.domain, allowed);
    allowed.insert(f.param);
    return RefinedType::fun(f.param, domain, scope_out_in(ctx, *f.codomain, allowed));
}

const term::Var* as_var(const surface::Term& t) { return std::get_if<term::Var>(&t.node); }

} // namespace

// ---------------------------------------------------------------------------

RefinedType Checker::elaborate(const TypingContext& ctx, const surface::Type& type) {
    auto t = Elaborator(ctx).type(type);
    well_formed(ctx, t, type.span);
    return t;
}

void Checker::well_formed(const TypingContext& ctx, const RefinedType& type, Span span) const {
    std::map<std::string, std::optional<Sort>> locals;
    well_formed_in(ctx, type, locals, span);
}

RefinedType Checker::scope_out(const TypingContext& ctx, RefinedType type) const {
    return scope_out_in(ctx, type, {});
}

void Checker::emit(const TypingContext& ctx, Predicate goal, Origin origin, VcList& out) const {
    if (goal.is_true()) return;
    out.push_back(ctx.make_vc(std::move(goal), std::move(origin)));
}

std::string Checker::bind(TypingContext& ctx, const std::string& source, const std::string& hint,
                          RefinedType type) {
    auto name = names_.fresh(hint, [&](const std::string& n) { return ctx.has_name(n); });
    ctx.bind(source, name, std::move(type));
    return name;
}

std::optional<Checker::Reflected> Checker::reflect(const TypingContext& ctx, const surface::Term& t) const {
    if (const auto* v = as_var(t)) {
        const auto* b = ctx.lookup_source(v->name);
        if (b == nullptr || !b->type.is_base()) return std::nullopt;
        return Reflected{b->type.as_base().base, LinearTerm::var(b->name)};
    }
    if (const auto* n = std::get_if<term::NatLit>(&t.node); n != nullptr && n->peano && n->value == 0) {
        return Reflected{BaseType::Nat, LinearTerm::constant(0)};
    }
    if (const auto* a = std::get_if<term::Arith>(&t.node); a != nullptr && surface::is_suc(*a)) {
        auto inner = reflect(ctx, *a->lhs);
        if (!inner || inner->base == BaseType::Bool) return std::nullopt;
        return Reflected{inner->base, LinearTerm::add(inner->term, LinearTerm::constant(1))};
    }
    return std::nullopt;
}

Checker::Reflected Checker::reflect_or_bind(TypingContext& ctx, const surface::Term& t, VcList& out) {
    if (auto r = reflect(ctx, t)) return *r;
    auto s = synth_into(ctx, t, out);
    if (!s.is_base()) mismatch("expected a base-typed value, found a function", t.span);
    const auto& b = s.as_base();
    auto name = bind(ctx, "", b.binder, s);
    return Reflected{b.base, LinearTerm::var(name)};
}

Checker::Reflected Checker::numeric_operand(TypingContext& ctx, const surface::Term& t, VcList& out) {
    if (const auto* n = std::get_if<term::NatLit>(&t.node)) return {BaseType::Nat, LinearTerm::constant(n->value)};
    if (const auto* n = std::get_if<term::IntLit>(&t.node)) return {BaseType::Int, LinearTerm::constant(n->value)};
    auto r = reflect_or_bind(ctx, t, out);
    if (r.base == BaseType::Bool) mismatch("arithmetic on a Bool value", t.span);
    return r;
}

RefinedType Checker::join(const TypingContext& ctx, const Predicate& cond, const RefinedType& a,
                          const RefinedType& b, Span span) {
    if (!a.is_base() || !b.is_base()) {
        if (a.is_base() != b.is_base()) mismatch("branches have different shapes", span);
        return a;
    }
    const auto& x = a.as_base();
    const auto& y = b.as_base();
    BaseType base;
    if (widens_to(x.base, y.base)) {
        base = y.base;
    } else if (widens_to(y.base, x.base)) {
        base = x.base;
    } else {
        mismatch("branches have types " + std::string(to_string(x.base)) + " and " +
                     std::string(to_string(y.base)), span);
    }
    if (x.pred.is_true() && y.pred.is_true()) return RefinedType::base(base);
    auto v = names_.fresh("v", [&](const std::string& n) { return ctx.has_name(n); });
    auto px = logic::substitute(x.pred, {{x.binder, LinearTerm::var(v)}});
    auto py = logic::substitute(y.pred, {{y.binder, LinearTerm::var(v)}});
    return RefinedType::base(base, v,
                             Predicate::conj(Predicate::implies(cond, px),
                                             Predicate::implies(Predicate::negate(cond), py)));
}

// ---------------------------------------------------------------------------
// Synthesis

SynthResult Checker::synth(TypingContext& ctx, const surface::Term& t) {
    SynthResult r{RefinedType::base(BaseType::Bool), {}};
    r.type = synth_into(ctx, t, r.vcs);
    return r;
}

RefinedType Checker::synth_into(TypingContext& ctx, const surface::Term& t, VcList& out) {
    auto singleton_binder = [&] {
        return names_.fresh("v", [&](const std::string& n) { return ctx.has_name(n); });
    };
    return std::visit(
        surface::overloaded{
            [&](const term::Var& x) -> RefinedType {
                const auto* b = ctx.lookup_source(x.name);
                if (b == nullptr) throw Error(ErrorKind::UnboundVariable, "unbound variable '" + x.name + "'", t.span);
                if (!b->type.is_base()) return b->type;
                auto base = b->type.as_base().base;
                auto v = singleton_binder();
                if (base == BaseType::Bool) {
                    return RefinedType::base(base, v, Predicate::iff(Predicate::var(v), Predicate::var(b->name)));
                }
                return RefinedType::base(base, v,
                                         Predicate::compare(CmpOp::Eq, LinearTerm::var(v), LinearTerm::var(b->name)));
            },
            [&](const term::NatLit& x) {
                return RefinedType::base(BaseType::Nat, "v",
                                         Predicate::compare(CmpOp::Eq, LinearTerm::var("v"),
                                                            LinearTerm::constant(x.value)));
            },
            [&](const term::IntLit& x) {
                return RefinedType::base(BaseType::Int, "v",
                                         Predicate::compare(CmpOp::Eq, LinearTerm::var("v"),
                                                            LinearTerm::constant(x.value)));
            },
            [&](const term::BoolLit& x) {
                return RefinedType::base(BaseType::Bool, "v",
                                         Predicate::iff(Predicate::var("v"), Predicate::truth(x.value)));
            },
            [&](const term::Arith& x) -> RefinedType {
                LinearTerm expr;
                BaseType base;
                if (x.op == surface::ArithOp::Mul) {
                    const bool lhs_literal = std::holds_alternative<term::NatLit>(x.lhs->node) ||
                                             std::holds_alternative<term::IntLit>(x.lhs->node);
                    auto coeff = numeric_operand(ctx, lhs_literal ? *x.lhs : *x.rhs, out);
                    auto other = numeric_operand(ctx, lhs_literal ? *x.rhs : *x.lhs, out);
                    if (coeff.term.op != LinearTerm::Op::Const) {
                        throw Error(ErrorKind::NonLinearPredicate,
                                    "multiplication requires an integer literal coefficient", t.span);
                    }
                    expr = LinearTerm::scale(coeff.term.value, other.term);
                    base = other.base == BaseType::Nat && coeff.term.value >= 0 ? BaseType::Nat : BaseType::Int;
                } else {
                    auto lhs = numeric_operand(ctx, *x.lhs, out);
                    auto rhs = numeric_operand(ctx, *x.rhs, out);
                    if (x.op == surface::ArithOp::Add) {
                        expr = LinearTerm::add(lhs.term, rhs.term);
                        base = lhs.base == BaseType::Nat && rhs.base == BaseType::Nat ? BaseType::Nat
                                                                                      : BaseType::Int;
                    } else {
                        expr = LinearTerm::sub(lhs.term, rhs.term);
                        base = BaseType::Int;
                    }
                }
                auto v = singleton_binder();
                return RefinedType::base(base, v, Predicate::compare(CmpOp::Eq, LinearTerm::var(v), expr));
            },
            [&](const term::App& x) -> RefinedType {
                auto fn = synth_into(ctx, *x.fn, out);
                if (fn.is_base()) mismatch("cannot apply a value of type " + describe(fn), x.fn->span);
                const auto& f = fn.as_fun();
                std::string param_name = f.param == kAnonymousParam ? "argument" : "argument `" + f.param + "`";
                if (!f.domain->is_base()) {
                    check_into(ctx, *x.arg, *f.domain, param_name, out);
                    return *f.codomain;
                }
                const auto& dom = f.domain->as_base();
                auto arg = reflect(ctx, *x.arg);
                if (!arg) {
                    auto s = synth_into(ctx, *x.arg, out);
                    if (!s.is_base()) mismatch("expected " + std::string(to_string(dom.base)) + ", found a function",
                                               x.arg->span);
                    auto name = bind(ctx, "", s.as_base().binder, s);
                    arg = Reflected{s.as_base().base, LinearTerm::var(name)};
                }
                if (!widens_to(arg->base, dom.base)) {
                    mismatch("expected " + std::string(to_string(dom.base)) + ", found " +
                                 std::string(to_string(arg->base)), x.arg->span);
                }
                emit(ctx, logic::substitute(dom.pred, {{dom.binder, arg->term}}), {x.arg->span, param_name}, out);
                return substitute(*f.codomain, f.param, arg->term, names_);
            },
            [&](const term::Lam& x) -> RefinedType {
                if (!x.annotation) {
                    throw Error(ErrorKind::CannotSynthesize,
                                "cannot infer the type of an unannotated lambda; add a parameter type", t.span);
                }
                auto domain = elaborate(ctx, *x.annotation);
                auto mark = ctx.size();
                auto param = bind(ctx, x.param, x.param, domain);
                auto body = synth_into(ctx, *x.body, out);
                ctx.truncate(mark);
                return RefinedType::fun(param, domain, scope_out_in(ctx, body, {param}));
            },
            [&](const term::Let& x) {
                auto mark = ctx.size();
                auto bound = synth_into(ctx, *x.bound, out);
                bind(ctx, x.name, x.name, bound);
                auto body = synth_into(ctx, *x.body, out);
                ctx.hide_from(mark);
                return body;
            },
            [&](const term::If& x) {
                auto cond = reflect_or_bind(ctx, *x.cond, out);
                if (cond.base != BaseType::Bool) mismatch("condition must be Bool", x.cond->span);
                auto c = Predicate::var(cond.term.name);
                auto mark = ctx.size();
                ctx.assume(c);
                auto then_type = synth_into(ctx, *x.then_branch, out);
                ctx.truncate(mark);
                then_type = scope_out(ctx, then_type);
                ctx.assume(Predicate::negate(c));
                auto else_type = synth_into(ctx, *x.else_branch, out);
                ctx.truncate(mark);
                else_type = scope_out(ctx, else_type);
                return join(ctx, c, then_type, else_type, t.span);
            },
            [&](const term::Match& x) {
                auto s = reflect_or_bind(ctx, *x.scrutinee, out);
                if (s.base != BaseType::Nat) mismatch("match scrutinee must be Nat, found " +
                                                          std::string(to_string(s.base)), x.scrutinee->span);
                auto is_zero = Predicate::compare(CmpOp::Eq, s.term, LinearTerm::constant(0));
                auto mark = ctx.size();
                ctx.assume(is_zero);
                auto zero_type = synth_into(ctx, *x.zero_branch, out);
                ctx.truncate(mark);
                zero_type = scope_out(ctx, zero_type);
                auto k = bind(ctx, x.suc_binder, x.suc_binder, RefinedType::base(BaseType::Nat));
                ctx.assume(Predicate::compare(CmpOp::Eq, s.term,
                                              LinearTerm::add(LinearTerm::var(k), LinearTerm::constant(1))));
                auto suc_type = synth_into(ctx, *x.suc_branch, out);
                ctx.truncate(mark);
                suc_type = scope_out(ctx, suc_type);
                return join(ctx, is_zero, zero_type, suc_type, t.span);
            },
            [&](const term::Pair& x) { return synth_into(ctx, *x.value, out); },
            [&](const term::Auto&) -> RefinedType {
                throw Error(ErrorKind::CannotSynthesize, "`auto` may only appear as the proof of a pair", t.span);
            },
            [&](const term::ErasedProof&) -> RefinedType {
                throw Error(ErrorKind::CannotSynthesize, "erased proof slot outside a pair", t.span);
            },
            [&](const term::Annot& x) {
                auto type = elaborate(ctx, *x.type);
                check_into(ctx, *x.term, type, "type annotation", out);
                return type;
            },
        },
        t.node);
}

// ---------------------------------------------------------------------------
// Checking

VcList Checker::check(TypingContext& ctx, const surface::Term& t, const RefinedType& type,
                      const std::string& reason) {
    VcList out;
    check_into(ctx, t, type, reason, out);
    return out;
}

void Checker::check_into(TypingContext& ctx, const surface::Term& t, const RefinedType& type,
                         const std::string& reason, VcList& out) {
    const auto mark = ctx.size();
    std::visit(
        surface::overloaded{
            [&](const term::Lam& x) {
                if (type.is_base()) mismatch("expected " + describe(type) + ", found a function", t.span);
                const auto& f = type.as_fun();
                if (x.annotation) {
                    auto annotated = elaborate(ctx, *x.annotation);
                    subtype_into(ctx, *f.domain, annotated, {t.span, "parameter annotation of lambda"}, out);
                }
                auto param = bind(ctx, x.param, x.param, *f.domain);
                auto codomain = substitute(*f.codomain, f.param, LinearTerm::var(param), names_);
                check_into(ctx, *x.body, codomain, reason, out);
            },
            [&](const term::Let& x) {
                auto bound = synth_into(ctx, *x.bound, out);
                bind(ctx, x.name, x.name, bound);
                check_into(ctx, *x.body, type, reason, out);
            },
            [&](const term::If& x) {
                auto cond = reflect_or_bind(ctx, *x.cond, out);
                if (cond.base != BaseType::Bool) mismatch("condition must be Bool", x.cond->span);
                auto c = Predicate::var(cond.term.name);
                auto branch = ctx.size();
                ctx.assume(c);
                check_into(ctx, *x.then_branch, type, reason, out);
                ctx.truncate(branch);
                ctx.assume(Predicate::negate(c));
                check_into(ctx, *x.else_branch, type, reason, out);
            },
            [&](const term::Match& x) {
                auto s = reflect_or_bind(ctx, *x.scrutinee, out);
                if (s.base != BaseType::Nat) mismatch("match scrutinee must be Nat, found " +
                                                          std::string(to_string(s.base)), x.scrutinee->span);
                auto branch = ctx.size();
                ctx.assume(Predicate::compare(CmpOp::Eq, s.term, LinearTerm::constant(0)));
                check_into(ctx, *x.zero_branch, type, reason, out);
                ctx.truncate(branch);
                // The binder is Nat-sorted, which carries k >= 0 into the logic.
                auto k = bind(ctx, x.suc_binder, x.suc_binder, RefinedType::base(BaseType::Nat));
                ctx.assume(Predicate::compare(CmpOp::Eq, s.term,
                                              LinearTerm::add(LinearTerm::var(k), LinearTerm::constant(1))));
                check_into(ctx, *x.suc_branch, type, reason, out);
            },
            [&](const term::Pair& x) {
                if (!type.is_base()) mismatch("a refinement pair needs a base type, found a function", t.span);
                check_into(ctx, *x.value, type, "refinement proof `auto` in " + reason, out);
            },
            [&](const term::Annot& x) {
                auto annotated = elaborate(ctx, *x.type);
                check_into(ctx, *x.term, annotated, "type annotation", out);
                subtype_into(ctx, annotated, type, {t.span, reason}, out);
            },
            [&](const auto&) {
                if (type.is_base()) {
                    check_base(ctx, t, type, reason, out);
                } else {
                    auto s = synth_into(ctx, t, out);
                    subtype_into(ctx, s, type, {t.span, reason}, out);
                }
            },
        },
        t.node);
    ctx.truncate(mark);
}

void Checker::check_base(TypingContext& ctx, const surface::Term& t, const RefinedType& type,
                         const std::string& reason, VcList& out) {
    const auto& expected = type.as_base();
    if (auto r = reflect(ctx, t)) {
        if (!widens_to(r->base, expected.base)) {
            mismatch("expected " + std::string(to_string(expected.base)) + ", found " +
                         std::string(to_string(r->base)), t.span);
        }
        emit(ctx, logic::substitute(expected.pred, {{expected.binder, r->term}}), {t.span, reason}, out);
        return;
    }
    auto s = synth_into(ctx, t, out);
    if (!s.is_base()) mismatch("expected " + describe(type) + ", found a function", t.span);
    subtype_into(ctx, s, type, {t.span, reason}, out);
}

// ---------------------------------------------------------------------------
// Subtyping

VcList Checker::subtype(TypingContext& ctx, const RefinedType& sub, const RefinedType& super,
                        const Origin& origin) {
    VcList out;
    subtype_into(ctx, sub, super, origin, out);
    return out;
}

void Checker::subtype_into(TypingContext& ctx, const RefinedType& sub, const RefinedType& super,
                           const Origin& origin, VcList& out) {
    const auto mark = ctx.size();
    if (sub.is_base() && super.is_base()) {
        const auto& s = sub.as_base();
        const auto& t = super.as_base();
        if (!widens_to(s.base, t.base)) {
            mismatch("expected " + std::string(to_string(t.base)) + ", found " + std::string(to_string(s.base)),
                     origin.span);
        }
        auto x = bind(ctx, "", s.binder, sub);
        emit(ctx, logic::substitute(t.pred, {{t.binder, LinearTerm::var(x)}}), origin, out);
    } else if (!sub.is_base() && !super.is_base()) {
        const auto& s = sub.as_fun();
        const auto& t = super.as_fun();
        subtype_into(ctx, *t.domain, *s.domain, origin, out);
        auto y = bind(ctx, "", t.param == kAnonymousParam ? s.param : t.param, *t.domain);
        auto s_cod = substitute(*s.codomain, s.param, LinearTerm::var(y), names_);
        auto t_cod = substitute(*t.codomain, t.param, LinearTerm::var(y), names_);
        subtype_into(ctx, s_cod, t_cod, origin, out);
    } else {
        mismatch("expected " + describe(super) + ", found " + describe(sub), origin.span);
    }
    ctx.truncate(mark);
}

// ---------------------------------------------------------------------------
// Programs

ProgramCheck check_program(const surface::SurfaceProgram& program) {
    ProgramCheck result;
    Checker checker;
    TypingContext ctx;
    auto fresh = [&](const std::string& n) {
        return checker.names().fresh(n, [&](const std::string& c) { return ctx.has_name(c); });
    };

    for (const auto& item : program.items) {
        const auto item_mark = ctx.size();
        std::optional<std::pair<std::string, RefinedType>> declared;
        try {
            std::visit(
                surface::overloaded{
                    [](const surface::item::Alias&) {},
                    [&](const surface::item::Fun& f) {
                        auto sig = f.result;
                        for (auto it = f.params.rbegin(); it != f.params.rend(); ++it) {
                            sig = std::make_shared<const surface::Type>(
                                surface::Type{surface::type::Arrow{it->name, it->type, sig}, cover(it->span, sig->span)});
                        }
                        auto type = checker.elaborate(ctx, *sig);
                        ctx.bind(f.name, fresh(f.name), type);
                        const auto body_mark = ctx.size();
                        RefinedType current = type;
                        for (const auto& p : f.params) {
                            const auto& fn = current.as_fun();
                            auto name = fresh(p.name);
                            ctx.bind(p.name, name, *fn.domain);
                            current = substitute(*fn.codomain, fn.param, LinearTerm::var(name), checker.names());
                        }
                        VcList vcs;
                        try {
                            vcs = checker.check(ctx, *f.body, current, "result of `" + f.name + "`");
                        } catch (...) {
                            ctx.truncate(body_mark);
                            throw;
                        }
                        ctx.truncate(body_mark);
                        result.vcs.insert(result.vcs.end(), vcs.begin(), vcs.end());
                    },
                    [&](const surface::item::Val& v) {
                        if (v.type) {
                            auto type = checker.elaborate(ctx, *v.type);
                            declared.emplace(v.name, type);
                            auto vcs = checker.check(ctx, *v.body, type, "definition of `" + v.name + "`");
                            ctx.truncate(item_mark);
                            result.vcs.insert(result.vcs.end(), vcs.begin(), vcs.end());
                            ctx.bind(v.name, fresh(v.name), type);
                        } else {
                            auto synthesized = checker.synth(ctx, *v.body);
                            ctx.truncate(item_mark);
                            auto type = scope_out_in(ctx, synthesized.type, {});
                            result.vcs.insert(result.vcs.end(), synthesized.vcs.begin(), synthesized.vcs.end());
                            ctx.bind(v.name, fresh(v.name), type);
                        }
                    },
                },
                item.node);
        } catch (const Error& e) {
            result.errors.push_back(e);
            if (std::holds_alternative<surface::item::Val>(item.node)) {
                ctx.truncate(item_mark);
                if (declared) ctx.bind(declared->first, fresh(declared->first), declared->second);
            }
        }
    }
    return result;
}

} // namespace refine::typesys
