#include "refine/logic/smtlib.hpp"

#include <map>

#include "refine/common/error.hpp"

namespace refine::logic {

namespace {

void check_declared(const Predicate& p, const std::map<std::string, Sort>& declared,
                    const typesys::VerificationCondition& vc) {
    for (const auto& [name, sort] : free_symbols(p)) {
        auto it = declared.find(name);
        if (it == declared.end()) {
            throw Error(ErrorKind::UnsupportedPredicate,
                        "symbol '" + name + "' is not declared in the verification condition",
                        vc.origin.span);
        }
        if (it->second != sort) {
            throw Error(ErrorKind::UnsupportedPredicate,
                        "symbol '" + name + "' is used at the wrong sort", vc.origin.span);
        }
    }
}

} // namespace

SmtScript translate_vc(const typesys::VerificationCondition& vc) {
    SmtScript script;
    script.declarations = vc.declarations;

    std::map<std::string, Sort> declared;
    for (const auto& d : vc.declarations) declared[d.name] = sort_of(d.base);

    for (const auto& d : vc.declarations) {
        if (d.base == BaseType::Nat) {
            script.assertions.push_back(
                Predicate::compare(CmpOp::Ge, LinearTerm::var(d.name), LinearTerm::constant(0)));
        }
    }
    for (const auto& fact : vc.facts) {
        check_declared(fact, declared, vc);
        script.assertions.push_back(fact);
    }
    check_declared(vc.goal, declared, vc);
    script.assertions.push_back(Predicate::negate(vc.goal));
    return script;
}

std::string SmtScript::text() const {
    std::string out = "(set-logic " + logic_name + ")\n";
    for (const auto& d : declarations) {
        out += "(declare-const " + smt_symbol(d.name) + (d.base == BaseType::Bool ? " Bool)\n" : " Int)\n");
    }
    for (const auto& a : assertions) out += "(assert " + print_predicate(a) + ")\n";
    out += "(check-sat)\n(get-model)\n";
    return out;
}

} // namespace refine::logic
