#ifndef REFINE_SURFACE_ALIASES_HPP
#define REFINE_SURFACE_ALIASES_HPP

#include "refine/surface/ast.hpp"

namespace refine::surface {

// Replaces every alias reference in a type position by the alias body, with
// the argument substituted for the parameter. Binders in the body that would
// capture a free name of the argument are renamed by appending primes.
// Alias declarations stay in the program with expanded bodies.
//
// Throws CyclicAlias, UnknownAlias, AliasArity or DuplicateDefinition.
SurfaceProgram expand_aliases(const SurfaceProgram& program);

} // namespace refine::surface

#endif // REFINE_SURFACE_ALIASES_HPP
