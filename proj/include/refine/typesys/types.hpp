#ifndef REFINE_TYPESYS_TYPES_HPP
#define REFINE_TYPESYS_TYPES_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "refine/common/base_type.hpp"
#include "refine/logic/predicate.hpp"
#include "refine/typesys/vc.hpp"

namespace refine::typesys {

class NameSupply;

// {binder: base | pred}, or a dependent function type whose codomain may
// mention the parameter. Unrefined base types carry the predicate `true`.
class RefinedType {
public:
    struct Base {
        BaseType base;
        std::string binder;
        logic::Predicate pred;
    };
    struct Fun {
        std::string param;
        std::shared_ptr<const RefinedType> domain;
        std::shared_ptr<const RefinedType> codomain;
    };

    static RefinedType base(BaseType base, std::string binder = "v",
                            logic::Predicate pred = logic::Predicate::truth(true));
    static RefinedType fun(std::string param, RefinedType domain, RefinedType codomain);

    bool is_base() const { return std::holds_alternative<Base>(node_); }
    const Base& as_base() const { return std::get<Base>(node_); }
    const Fun& as_fun() const { return std::get<Fun>(node_); }

    friend bool operator==(const RefinedType& a, const RefinedType& b);

private:
    std::variant<Base, Fun> node_;
};

std::string render(const RefinedType& t);

// Deterministic `name!k` generator; one supply per checked program.
class NameSupply {
public:
    // `name` itself if `taken` rejects nothing, else a fresh `root!k`.
    template <class Taken>
    std::string fresh(const std::string& name, const Taken& taken) {
        if (!name.empty() && !taken(name)) return name;
        return next(name);
    }
    std::string next(const std::string& name);

private:
    unsigned counter_ = 0;
};

// Strips a `!k` suffix: the source-level spelling of an internal name.
std::string source_root(const std::string& name);

// Capture-avoiding t[name := replacement].
RefinedType substitute(const RefinedType& t, const std::string& name,
                       const logic::LinearTerm& replacement, NameSupply& names);

// The typing context: bindings and path conditions in the order they were
// introduced. Bindings have a source spelling (empty for checker-introduced
// names, which source code cannot refer to) and a unique internal name.
class TypingContext {
public:
    struct Binding {
        std::string source;
        std::string name;
        RefinedType type;
    };

    void bind(std::string source, std::string name, RefinedType type);
    void assume(logic::Predicate fact);

    const Binding* lookup_source(const std::string& source) const;
    const Binding* lookup(const std::string& name) const;
    bool has_name(const std::string& name) const { return lookup(name) != nullptr; }

    std::size_t size() const { return entries_.size(); }
    void truncate(std::size_t size) { entries_.resize(size); }
    // Makes bindings introduced after `mark` unreachable from source.
    void hide_from(std::size_t mark);

    std::vector<Binding> bindings() const;
    std::vector<logic::Predicate> path_conditions() const;

    VerificationCondition make_vc(logic::Predicate goal, Origin origin) const;

private:
    std::vector<std::variant<Binding, logic::Predicate>> entries_;
};

} // namespace refine::typesys

#endif // REFINE_TYPESYS_TYPES_HPP
