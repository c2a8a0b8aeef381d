#ifndef REFINE_TYPESYS_VC_HPP
#define REFINE_TYPESYS_VC_HPP

#include <string>
#include <utility>
#include <vector>

#include "refine/common/base_type.hpp"
#include "refine/common/source.hpp"
#include "refine/logic/predicate.hpp"

namespace refine::typesys {

struct Declaration {
    std::string name;
    BaseType base;

    friend bool operator==(const Declaration&, const Declaration&) = default;
};

struct Origin {
    Span span;
    std::string reason;

    friend bool operator==(const Origin&, const Origin&) = default;
};

// hypotheses |- goal, produced at one subsumption. Declarations and facts
// come from base-typed context bindings and path conditions, in context
// order.
struct VerificationCondition {
    std::vector<Declaration> declarations;
    std::vector<logic::Predicate> facts;
    logic::Predicate goal;
    Origin origin;

    friend bool operator==(const VerificationCondition&, const VerificationCondition&) = default;
};

} // namespace refine::typesys

#endif // REFINE_TYPESYS_VC_HPP
