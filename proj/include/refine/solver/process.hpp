#ifndef REFINE_SOLVER_PROCESS_HPP
#define REFINE_SOLVER_PROCESS_HPP

#include <string>
#include <vector>

namespace refine::solver {

struct ProcessResult {
    std::string output;
    int exit_status = -1;  // -1 when killed or signalled
    bool timed_out = false;
};

// Runs `executable args...` in its own process group, feeds `input` on stdin
// and collects stdout until EOF. On timeout the whole group is killed. The
// child is always reaped before returning. Throws SolverSpawn.
ProcessResult run_process(const std::string& executable, const std::vector<std::string>& args,
                          const std::string& input, int timeout_ms);

} // namespace refine::solver

#endif // REFINE_SOLVER_PROCESS_HPP
