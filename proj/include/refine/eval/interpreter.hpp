#ifndef REFINE_EVAL_INTERPRETER_HPP
#define REFINE_EVAL_INTERPRETER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "refine/eval/value.hpp"
#include "refine/surface/ast.hpp"

namespace refine::eval {

// Replaces every pair's proof with the erased placeholder. Nothing else changes.
surface::TermPtr erase(const surface::TermPtr& term);
surface::SurfaceProgram erase(const surface::SurfaceProgram& program);

struct EvalOptions {
    std::uint64_t fuel = 1'000'000;
    // Nesting guard so that non-tail runaway recursion fails like fuel
    // exhaustion instead of overflowing the native stack.
    std::size_t max_depth = 100'000;
};

struct EvalResult {
    Value value;
    std::uint64_t steps = 0;  // beta reductions + if/match discriminations
};

// Call-by-value evaluation of `entry` applied to `args`. Top-level `val`s are
// evaluated first and are not counted. The result is projected out of any
// refinement pair. Throws OutOfFuel and Runtime.
EvalResult eval(const surface::SurfaceProgram& erased, const std::string& entry, const std::vector<Value>& args,
                const EvalOptions& options = {});

// Evaluates the body of every base-typed top-level `val`, in order.
std::vector<std::pair<std::string, Value>> eval_vals(const surface::SurfaceProgram& erased,
                                                     const EvalOptions& options = {});

} // namespace refine::eval

#endif // REFINE_EVAL_INTERPRETER_HPP
