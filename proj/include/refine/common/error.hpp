#ifndef REFINE_COMMON_ERROR_HPP
#define REFINE_COMMON_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "refine/common/source.hpp"

namespace refine {

enum class ErrorKind {
    // surface
    Syntax,
    CyclicAlias,
    UnknownAlias,
    AliasArity,
    DuplicateDefinition,
    // typesys
    Sort,
    NonLinearPredicate,
    TypeMismatch,
    CannotSynthesize,
    UnboundVariable,
    // logic
    UnsupportedPredicate,
    // solver
    SolverSpawn,
    ModelParse,
    TooManyVariables,
    MissingVariable,
    // evaluator
    OutOfFuel,
    Runtime,
};

std::string_view to_string(ErrorKind kind);

// Every user-facing failure in the pipeline. Span is absent for errors that
// do not originate in a source file (solver, oracle).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::optional<Span> span = std::nullopt)
        : std::runtime_error(std::move(message)), kind_(kind), span_(span) {}

    ErrorKind kind() const { return kind_; }
    const std::optional<Span>& span() const { return span_; }

private:
    ErrorKind kind_;
    std::optional<Span> span_;
};

} // namespace refine

#endif // REFINE_COMMON_ERROR_HPP
