#ifndef REFINE_SOLVER_SOLVER_HPP
#define REFINE_SOLVER_SOLVER_HPP

#include <string>
#include <vector>

#include "refine/logic/smtlib.hpp"
#include "refine/solver/verdict.hpp"

namespace refine::solver {

struct SolverConfig {
    std::string executable = "z3";
    std::vector<std::string> args;  // empty: known_args(executable)
    int timeout_ms = 5000;
    int jobs = 1;
};

// Flags that put well-known solvers into stdin SMT-LIB mode with models.
std::vector<std::string> known_args(const std::string& executable);

// --solver, else REFINE_SOLVER, else `z3` from PATH.
std::string default_executable(const std::string& flag);

// Single solver run. Throws SolverSpawn when the process cannot be started
// or dies without an answer, ModelParse when a `sat` answer carries an
// unreadable model.
Verdict solve_raw(const logic::SmtScript& script, const SolverConfig& cfg);

// solve_raw with infrastructure failures folded into Unknown(solver-error).
Verdict solve(const logic::SmtScript& script, const SolverConfig& cfg);

// Up to cfg.jobs solver processes at once; results in input order.
std::vector<Verdict> solve_all(const std::vector<logic::SmtScript>& scripts, const SolverConfig& cfg);

// Values for every declared symbol from a get-model response. Symbols the
// solver left out are unconstrained and take the sort's default (0, false).
Model parse_model(const std::string& raw, const std::vector<typesys::Declaration>& declared);

// The first `version`-style line of the solver, for reports.
std::string solver_identity(const SolverConfig& cfg);

} // namespace refine::solver

#endif // REFINE_SOLVER_SOLVER_HPP
