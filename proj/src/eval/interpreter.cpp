#include "refine/eval/interpreter.hpp"

#include <pthread.h>

#include <exception>
#include <functional>
#include <map>

#include "refine/common/error.hpp"

namespace refine::eval {

namespace term = surface::term;
using surface::Term;
using surface::TermPtr;

TermPtr erase(const TermPtr& t) {
    auto rebuilt = [&](auto node) { return std::make_shared<const Term>(Term{std::move(node), t->span}); };
    return std::visit(
        surface::overloaded{
            [&](const term::Arith& x) { return rebuilt(term::Arith{x.op, erase(x.lhs), erase(x.rhs)}); },
            [&](const term::App& x) { return rebuilt(term::App{erase(x.fn), erase(x.arg)}); },
            [&](const term::Lam& x) { return rebuilt(term::Lam{x.param, x.annotation, erase(x.body)}); },
            [&](const term::Let& x) { return rebuilt(term::Let{x.name, erase(x.bound), erase(x.body)}); },
            [&](const term::If& x) {
                return rebuilt(term::If{erase(x.cond), erase(x.then_branch), erase(x.else_branch)});
            },
            [&](const term::Match& x) {
                return rebuilt(term::Match{erase(x.scrutinee), erase(x.zero_branch), x.suc_binder, erase(x.suc_branch)});
            },
            [&](const term::Pair& x) {
                auto slot = std::make_shared<const Term>(Term{term::ErasedProof{}, x.proof->span});
                return rebuilt(term::Pair{erase(x.value), slot});
            },
            [&](const term::Annot& x) { return rebuilt(term::Annot{erase(x.term), x.type}); },
            [&](const auto&) { return t; },
        },
        t->node);
}

surface::SurfaceProgram erase(const surface::SurfaceProgram& program) {
    surface::SurfaceProgram out{{}, program.source};
    for (const auto& it : program.items) {
        surface::Item copy = it;
        std::visit(surface::overloaded{
                       [](surface::item::Alias&) {},
                       [](surface::item::Fun& f) { f.body = erase(f.body); },
                       [](surface::item::Val& v) { v.body = erase(v.body); },
                   },
                   copy.node);
        out.items.push_back(std::move(copy));
    }
    return out;
}

namespace {

class Interpreter {
public:
    Interpreter(const surface::SurfaceProgram& program, const EvalOptions& options) : options_(options) {
        for (const auto& it : program.items) {
            if (const auto* f = std::get_if<surface::item::Fun>(&it.node)) {
                globals_[f->name] = function_value(*f);
            } else if (const auto* v = std::get_if<surface::item::Val>(&it.node)) {
                globals_[v->name] = eval(*v->body, nullptr);
                vals_.emplace_back(v->name, globals_[v->name]);
            }
        }
        steps_ = 0;
    }

    Value call(const std::string& entry, const std::vector<Value>& args) {
        auto it = globals_.find(entry);
        if (it == globals_.end()) throw Error(ErrorKind::Runtime, "no top-level definition named '" + entry + "'");
        Value f = it->second;
        auto arity = arity_.count(entry) != 0 ? arity_.at(entry) : 0;
        if (args.size() != arity) {
            throw Error(ErrorKind::Runtime, "'" + entry + "' takes " + std::to_string(arity) + " argument(s), got " +
                                                std::to_string(args.size()));
        }
        for (const auto& a : args) f = apply(f, a, {});
        return f;
    }

    std::uint64_t steps() const { return steps_; }
    const std::vector<std::pair<std::string, Value>>& vals() const { return vals_; }

private:
    EvalOptions options_;
    std::map<std::string, Value> globals_;
    std::map<std::string, std::size_t> arity_;
    std::vector<std::pair<std::string, Value>> vals_;
    std::uint64_t steps_ = 0;
    std::size_t depth_ = 0;

    struct DepthGuard {
        Interpreter& self;
        explicit DepthGuard(Interpreter& s, Span span) : self(s) {
            if (++self.depth_ > self.options_.max_depth) {
                --self.depth_;
                throw Error(ErrorKind::OutOfFuel,
                            "evaluation nested deeper than " + std::to_string(self.options_.max_depth), span);
            }
        }
        ~DepthGuard() { --self.depth_; }
    };

    Value function_value(const surface::item::Fun& f) {
        arity_[f.name] = f.params.size();
        if (f.params.empty()) return eval(*f.body, nullptr);
        // fun f (a) (b) = e  is  fn a => fn b => e
        TermPtr body = f.body;
        for (std::size_t i = f.params.size(); i > 1; --i) {
            body = std::make_shared<const Term>(Term{term::Lam{f.params[i - 1].name, nullptr, body}, f.body->span});
        }
        return {Closure{f.params[0].name, body, nullptr}};
    }

    void tick(Span span) {
        if (++steps_ > options_.fuel) {
            throw Error(ErrorKind::OutOfFuel, "out of fuel after " + std::to_string(options_.fuel) + " steps", span);
        }
    }

    Value lookup(const std::string& name, const EnvPtr& env, Span span) const {
        for (const Env* e = env.get(); e != nullptr; e = e->next.get()) {
            if (e->name == name) return e->value;
        }
        auto it = globals_.find(name);
        if (it == globals_.end()) throw Error(ErrorKind::Runtime, "unbound variable '" + name + "'", span);
        return it->second;
    }

    static std::int64_t number(const Value& v, Span span) {
        const auto& u = underlying(v);
        if (const auto* n = std::get_if<NatV>(&u.node)) return n->value;
        if (const auto* n = std::get_if<IntV>(&u.node)) return n->value;
        throw Error(ErrorKind::Runtime, "expected a number, got " + to_string(v), span);
    }

    static bool is_nat(const Value& v) { return std::holds_alternative<NatV>(underlying(v).node); }

    Value apply(const Value& fn, const Value& arg, Span span) {
        const auto* c = std::get_if<Closure>(&underlying(fn).node);
        if (c == nullptr) throw Error(ErrorKind::Runtime, "applying a non-function", span);
        tick(span);
        auto env = std::make_shared<const Env>(Env{c->param, arg, c->env});
        return eval(*c->body, env);
    }

    Value eval(const Term& t, const EnvPtr& env) {
        DepthGuard guard(*this, t.span);
        return std::visit(
            surface::overloaded{
                [&](const term::Var& x) { return lookup(x.name, env, t.span); },
                [&](const term::NatLit& x) { return Value{NatV{x.value}}; },
                [&](const term::IntLit& x) { return Value{IntV{x.value}}; },
                [&](const term::BoolLit& x) { return Value{BoolV{x.value}}; },
                [&](const term::Arith& x) {
                    auto lhs = eval(*x.lhs, env);
                    auto rhs = eval(*x.rhs, env);
                    auto a = number(lhs, x.lhs->span);
                    auto b = number(rhs, x.rhs->span);
                    const bool nat = is_nat(lhs) && is_nat(rhs);
                    std::int64_t r = 0;
                    bool overflow = false;
                    switch (x.op) {
                    case surface::ArithOp::Add: overflow = __builtin_add_overflow(a, b, &r); break;
                    case surface::ArithOp::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
                    case surface::ArithOp::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
                    }
                    if (overflow) throw Error(ErrorKind::Runtime, "integer overflow", t.span);
                    if (nat && x.op != surface::ArithOp::Sub) return Value{NatV{r}};
                    return Value{IntV{r}};
                },
                [&](const term::App& x) {
                    auto fn = eval(*x.fn, env);
                    auto arg = eval(*x.arg, env);
                    return apply(fn, arg, t.span);
                },
                [&](const term::Lam& x) { return Value{Closure{x.param, x.body, env}}; },
                [&](const term::Let& x) {
                    auto bound = eval(*x.bound, env);
                    return eval(*x.body, std::make_shared<const Env>(Env{x.name, bound, env}));
                },
                [&](const term::If& x) {
                    auto c = eval(*x.cond, env);
                    const auto* b = std::get_if<BoolV>(&underlying(c).node);
                    if (b == nullptr) throw Error(ErrorKind::Runtime, "condition is not a Bool", x.cond->span);
                    tick(t.span);
                    return eval(b->value ? *x.then_branch : *x.else_branch, env);
                },
                [&](const term::Match& x) {
                    auto s = number(eval(*x.scrutinee, env), x.scrutinee->span);
                    if (s < 0) throw Error(ErrorKind::Runtime, "match on a negative number", x.scrutinee->span);
                    tick(t.span);
                    if (s == 0) return eval(*x.zero_branch, env);
                    return eval(*x.suc_branch, std::make_shared<const Env>(Env{x.suc_binder, Value{NatV{s - 1}}, env}));
                },
                [&](const term::Pair& x) {
                    // The proof slot is never evaluated.
                    return Value{ErasedPairV{std::make_shared<const Value>(eval(*x.value, env))}};
                },
                [&](const term::Auto&) -> Value {
                    throw Error(ErrorKind::Runtime, "`auto` outside a pair", t.span);
                },
                [&](const term::ErasedProof&) -> Value {
                    throw Error(ErrorKind::Runtime, "erased proof slot evaluated", t.span);
                },
                [&](const term::Annot& x) { return eval(*x.term, env); },
            },
            t.node);
    }
};

// Deep recursion in the object language is deep recursion here, so the
// interpreter runs on a thread whose stack fits max_depth frames.
constexpr std::size_t kEvalStackBytes = std::size_t{1} << 30;

void on_large_stack(const std::function<void()>& work) {
    struct Job {
        const std::function<void()>* work;
        std::exception_ptr error;
    } job{&work, nullptr};
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, kEvalStackBytes);
    pthread_t thread;
    auto body = [](void* arg) -> void* {
        auto* j = static_cast<Job*>(arg);
        try {
            (*j->work)();
        } catch (...) {
            j->error = std::current_exception();
        }
        return nullptr;
    };
    int rc = pthread_create(&thread, &attr, body, &job);
    pthread_attr_destroy(&attr);
    if (rc != 0) {
        work();
        return;
    }
    pthread_join(thread, nullptr);
    if (job.error) std::rethrow_exception(job.error);
}

} // namespace

EvalResult eval(const surface::SurfaceProgram& erased, const std::string& entry, const std::vector<Value>& args,
                const EvalOptions& options) {
    EvalResult result;
    on_large_stack([&] {
        Interpreter interp(erased, options);
        auto v = interp.call(entry, args);
        result = {underlying(v), interp.steps()};
    });
    return result;
}

std::vector<std::pair<std::string, Value>> eval_vals(const surface::SurfaceProgram& erased,
                                                     const EvalOptions& options) {
    std::vector<std::pair<std::string, Value>> out;
    on_large_stack([&] {
        Interpreter interp(erased, options);
        for (const auto& [name, v] : interp.vals()) {
            const auto& u = underlying(v);
            if (!std::holds_alternative<Closure>(u.node)) out.emplace_back(name, u);
        }
    });
    return out;
}

} // namespace refine::eval
