#ifndef REFINE_SURFACE_PRINTER_HPP
#define REFINE_SURFACE_PRINTER_HPP

#include <string>

#include "refine/surface/ast.hpp"

namespace refine::surface {

// Source text that re-parses to a structurally identical AST. Compound
// subterms are parenthesized conservatively.
std::string print(const SurfaceProgram& program);
std::string print(const Type& type);
std::string print(const Term& term);
std::string print(const Expr& expr);

} // namespace refine::surface

#endif // REFINE_SURFACE_PRINTER_HPP
