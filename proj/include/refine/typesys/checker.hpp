#ifndef REFINE_TYPESYS_CHECKER_HPP
#define REFINE_TYPESYS_CHECKER_HPP

#include <optional>
#include <vector>

#include "refine/common/error.hpp"
#include "refine/surface/ast.hpp"
#include "refine/typesys/types.hpp"
#include "refine/typesys/vc.hpp"

namespace refine::typesys {

using VcList = std::vector<VerificationCondition>;

struct SynthResult {
    RefinedType type;
    VcList vcs;
};

// Bidirectional checker that emits verification conditions at every
// subsumption instead of building proofs.
//
// synth and check may extend the context with checker-introduced bindings
// (selfified subterms); callers that need a clean context truncate it.
// Goals that are literally `true` are not emitted.
class Checker {
public:
    RefinedType elaborate(const TypingContext& ctx, const surface::Type& type);
    void well_formed(const TypingContext& ctx, const RefinedType& type, Span span = {}) const;

    SynthResult synth(TypingContext& ctx, const surface::Term& term);
    VcList check(TypingContext& ctx, const surface::Term& term, const RefinedType& type,
                 const std::string& reason = "type annotation");
    VcList subtype(TypingContext& ctx, const RefinedType& sub, const RefinedType& super,
                   const Origin& origin);

    NameSupply& names() { return names_; }

private:
    struct Reflected {
        BaseType base;
        logic::LinearTerm term;  // a bare variable for Bool
    };

    NameSupply names_;

    RefinedType synth_into(TypingContext& ctx, const surface::Term& term, VcList& out);
    void check_into(TypingContext& ctx, const surface::Term& term, const RefinedType& type,
                    const std::string& reason, VcList& out);
    void check_base(TypingContext& ctx, const surface::Term& term, const RefinedType& type,
                    const std::string& reason, VcList& out);
    void subtype_into(TypingContext& ctx, const RefinedType& sub, const RefinedType& super,
                      const Origin& origin, VcList& out);

    std::optional<Reflected> reflect(const TypingContext& ctx, const surface::Term& term) const;
    Reflected reflect_or_bind(TypingContext& ctx, const surface::Term& term, VcList& out);
    Reflected numeric_operand(TypingContext& ctx, const surface::Term& term, VcList& out);
    std::string bind(TypingContext& ctx, const std::string& source, const std::string& hint,
                     RefinedType type);
    RefinedType join(const TypingContext& ctx, const logic::Predicate& cond, const RefinedType& a,
                     const RefinedType& b, Span span);
    RefinedType scope_out(const TypingContext& ctx, RefinedType type) const;
    void emit(const TypingContext& ctx, logic::Predicate goal, Origin origin, VcList& out) const;
};

struct ProgramCheck {
    VcList vcs;
    std::vector<Error> errors;
};

// Checks every item of an alias-expanded program in source order. A failing
// item contributes its error and no VCs; checking continues with the next.
ProgramCheck check_program(const surface::SurfaceProgram& program);

} // namespace refine::typesys

#endif // REFINE_TYPESYS_CHECKER_HPP
