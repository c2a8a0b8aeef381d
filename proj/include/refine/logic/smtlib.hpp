#ifndef REFINE_LOGIC_SMTLIB_HPP
#define REFINE_LOGIC_SMTLIB_HPP

#include <string>
#include <vector>

#include "refine/logic/predicate.hpp"
#include "refine/typesys/vc.hpp"

namespace refine::logic {

// A self-contained SMT-LIB v2 query asking for a model of hypotheses /\ !goal.
// The negated goal is always the last assertion.
struct SmtScript {
    std::string logic_name = "QF_LIA";
    std::vector<typesys::Declaration> declarations;
    std::vector<Predicate> assertions;

    std::string text() const;
};

SmtScript translate_vc(const typesys::VerificationCondition& vc);

inline Sort sort_of(BaseType base) {
    return base == BaseType::Bool ? Sort::Bool : Sort::Int;
}

} // namespace refine::logic

#endif // REFINE_LOGIC_SMTLIB_HPP
