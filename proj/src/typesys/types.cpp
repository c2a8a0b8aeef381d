#include "refine/typesys/types.hpp"

#include <set>

namespace refine::typesys {

using logic::LinearTerm;
using logic::Predicate;

RefinedType RefinedType::base(BaseType base, std::string binder, Predicate pred) {
    RefinedType t;
    t.node_ = Base{base, std::move(binder), std::move(pred)};
    return t;
}

RefinedType RefinedType::fun(std::string param, RefinedType domain, RefinedType codomain) {
    RefinedType t;
    t.node_ = Fun{std::move(param), std::make_shared<const RefinedType>(std::move(domain)),
                  std::make_shared<const RefinedType>(std::move(codomain))};
    return t;
}

bool operator==(const RefinedType& a, const RefinedType& b) {
    if (a.is_base() != b.is_base()) return false;
    if (a.is_base()) {
        const auto& x = a.as_base();
        const auto& y = b.as_base();
        return x.base == y.base && x.binder == y.binder && x.pred == y.pred;
    }
    const auto& x = a.as_fun();
    const auto& y = b.as_fun();
    return x.param == y.param && *x.domain == *y.domain && *x.codomain == *y.codomain;
}

std::string render(const RefinedType& t) {
    if (t.is_base()) {
        const auto& b = t.as_base();
        if (b.pred.is_true()) return std::string(to_string(b.base));
        return "{" + b.binder + ": " + std::string(to_string(b.base)) + " | " +
               logic::render_predicate(b.pred) + "}";
    }
    const auto& f = t.as_fun();
    return "(" + f.param + " : " + render(*f.domain) + ") -> " + render(*f.codomain);
}

std::string NameSupply::next(const std::string& name) {
    auto root = source_root(name);
    if (root.empty()) root = "v";
    return root + "!" + std::to_string(++counter_);
}

std::string source_root(const std::string& name) {
    auto bang = name.find('!');
    return bang == std::string::npos ? name : name.substr(0, bang);
}

namespace {

std::set<std::string> term_vars(const LinearTerm& t) {
    std::set<std::string> out;
    for (const auto& [n, c] : logic::normalize(t).coefficients) out.insert(n);
    if (t.op == LinearTerm::Op::Var) out.insert(t.name);
    return out;
}

} // namespace

RefinedType substitute(const RefinedType& t, const std::string& name, const LinearTerm& replacement,
                       NameSupply& names) {
    auto repl_vars = term_vars(replacement);
    if (t.is_base()) {
        auto b = t.as_base();
        if (b.binder == name) return t;
        if (repl_vars.count(b.binder) != 0) {
            auto fresh = names.next(b.binder);
            b.pred = logic::substitute(b.pred, {{b.binder, LinearTerm::var(fresh)}});
            b.binder = fresh;
        }
        b.pred = logic::substitute(b.pred, {{name, replacement}});
        return RefinedType::base(b.base, b.binder, b.pred);
    }
    const auto& f = t.as_fun();
    auto domain = substitute(*f.domain, name, replacement, names);
    if (f.param == name) return RefinedType::fun(f.param, domain, *f.codomain);
    std::string param = f.param;
    RefinedType codomain = *f.codomain;
    if (repl_vars.count(param) != 0) {
        param = names.next(f.param);
        codomain = substitute(codomain, f.param, LinearTerm::var(param), names);
    }
    return RefinedType::fun(param, domain, substitute(codomain, name, replacement, names));
}

void TypingContext::bind(std::string source, std::string name, RefinedType type) {
    entries_.emplace_back(Binding{std::move(source), std::move(name), std::move(type)});
}

void TypingContext::assume(Predicate fact) { entries_.emplace_back(std::move(fact)); }

const TypingContext::Binding* TypingContext::lookup_source(const std::string& source) const {
    if (source.empty()) return nullptr;
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
        const auto* b = std::get_if<Binding>(&*it);
        if (b != nullptr && b->source == source) return b;
    }
    return nullptr;
}

const TypingContext::Binding* TypingContext::lookup(const std::string& name) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
        const auto* b = std::get_if<Binding>(&*it);
        if (b != nullptr && b->name == name) return b;
    }
    return nullptr;
}

void TypingContext::hide_from(std::size_t mark) {
    for (std::size_t i = mark; i < entries_.size(); ++i) {
        if (auto* b = std::get_if<Binding>(&entries_[i])) b->source.clear();
    }
}

std::vector<TypingContext::Binding> TypingContext::bindings() const {
    std::vector<Binding> out;
    for (const auto& e : entries_) {
        if (const auto* b = std::get_if<Binding>(&e)) out.push_back(*b);
    }
    return out;
}

std::vector<Predicate> TypingContext::path_conditions() const {
    std::vector<Predicate> out;
    for (const auto& e : entries_) {
        if (const auto* p = std::get_if<Predicate>(&e)) out.push_back(*p);
    }
    return out;
}

VerificationCondition TypingContext::make_vc(Predicate goal, Origin origin) const {
    VerificationCondition vc;
    for (const auto& e : entries_) {
        if (const auto* b = std::get_if<Binding>(&e)) {
            if (!b->type.is_base()) continue;  // first-order logic only
            const auto& base = b->type.as_base();
            vc.declarations.push_back({b->name, base.base});
            if (!base.pred.is_true()) {
                vc.facts.push_back(
                    logic::substitute(base.pred, {{base.binder, LinearTerm::var(b->name)}}));
            }
        } else {
            vc.facts.push_back(std::get<Predicate>(e));
        }
    }
    vc.goal = std::move(goal);
    vc.origin = std::move(origin);
    return vc;
}

} // namespace refine::typesys
