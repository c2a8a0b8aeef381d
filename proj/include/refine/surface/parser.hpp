#ifndef REFINE_SURFACE_PARSER_HPP
#define REFINE_SURFACE_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "refine/common/error.hpp"
#include "refine/surface/ast.hpp"

namespace refine::surface {

class SyntaxError : public Error {
public:
    SyntaxError(std::string message, Span span, std::vector<std::string> expected)
        : Error(ErrorKind::Syntax, std::move(message), span), expected_(std::move(expected)) {}

    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

SurfaceProgram parse(std::string_view source, std::string path = "<input>");

// Entry points for single types and predicates, used by tests and tooling.
TypePtr parse_type(std::string_view source);
TermPtr parse_term(std::string_view source);

} // namespace refine::surface

#endif // REFINE_SURFACE_PARSER_HPP
