#ifndef REFINE_DRIVER_DRIVER_HPP
#define REFINE_DRIVER_DRIVER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "refine/common/source.hpp"
#include "refine/solver/verdict.hpp"
#include "refine/typesys/vc.hpp"

namespace refine::driver {

struct CheckOptions {
    std::string solver;  // empty: REFINE_SOLVER, then z3
    int timeout_ms = 5000;
    std::optional<std::string> dump_dir;
    std::int64_t oracle_bound = 25;
    bool no_solver = false;
    int jobs = 1;
    std::optional<std::string> run_entry;
    std::vector<std::string> run_args;
};

// One non-Valid VC, or one error that stopped a file or an item.
struct Diagnostic {
    enum class Severity { Error, Refinement };

    Severity severity = Severity::Refinement;
    std::string file;
    LineCol position;
    std::string message;  // Error: the message; Refinement: the rendered goal
    std::string reason;   // the subsumption that produced the VC
    std::optional<solver::Verdict> verdict;
    std::vector<std::pair<std::string, std::string>> counterexample;  // surface name, value
};

std::string render_diagnostic(const Diagnostic& d);

// Counterexample entries in declaration order, internal names mapped back
// to their source spelling when no other declaration shares it.
std::vector<std::pair<std::string, std::string>> surface_model(const typesys::VerificationCondition& vc,
                                                               const solver::Model& model);
std::string render_goal(const typesys::VerificationCondition& vc);

struct FileReport {
    std::string path;
    std::size_t vcs = 0;
    std::size_t valid = 0;
    std::size_t invalid = 0;
    std::size_t unknown = 0;
    std::size_t user_errors = 0;   // syntax, alias, typing
    std::size_t infra_errors = 0;  // unreadable file, untranslatable VC
};

struct RunReport {
    std::vector<FileReport> files;
    std::vector<Diagnostic> diagnostics;
    double wall_seconds = 0;
    std::string solver_identity;
};

// 0: everything Valid; 1: some Invalid or a user error; 2: otherwise some
// Unknown or infrastructure failure.
int exit_code(const RunReport& report);

// Parses, checks, translates and discharges every file; writes diagnostics
// and per-file counts to `out`, timing to `err`. Returns the exit code.
int run_check(const std::vector<std::string>& paths, const CheckOptions& options, std::ostream& out,
              std::ostream& err);

// Same pipeline without printing.
RunReport check_files(const std::vector<std::string>& paths, const CheckOptions& options);

} // namespace refine::driver

#endif // REFINE_DRIVER_DRIVER_HPP
