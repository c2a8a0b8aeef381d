#ifndef REFINE_SOLVER_ORACLE_HPP
#define REFINE_SOLVER_ORACLE_HPP

#include <cstdint>

#include "refine/solver/verdict.hpp"
#include "refine/typesys/vc.hpp"

namespace refine::solver {

constexpr std::size_t kOracleMaxVariables = 6;

// Throws MissingVariable for a free symbol the model does not cover.
bool eval_predicate_ground(const logic::Predicate& p, const Model& model);
std::int64_t eval_term_ground(const logic::LinearTerm& t, const Model& model);

// Exhaustive search: Int in [-bound, bound], Nat in [0, bound], Bool in
// {false, true}. Assignments are visited in lexicographic order with the
// first declaration most significant; the first counterexample wins.
// Throws TooManyVariables above kOracleMaxVariables declarations.
Verdict brute_force_serial(const typesys::VerificationCondition& vc, std::int64_t bound);

// Same contract, over a compiled form of the VC, split across OpenMP threads.
// The result is identical to brute_force_serial.
Verdict brute_force(const typesys::VerificationCondition& vc, std::int64_t bound);

} // namespace refine::solver

#endif // REFINE_SOLVER_ORACLE_HPP
