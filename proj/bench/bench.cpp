// Serial vs parallel timings for the two hot paths: the brute-force oracle
// and solver fan-out.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

#include "refine/logic/smtlib.hpp"
#include "refine/solver/oracle.hpp"
#include "refine/solver/solver.hpp"
#include "support/support.hpp"

using namespace refine;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double timed(F&& f) {
    auto start = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    int count = argc > 1 ? std::atoi(argv[1]) : 40;
    std::int64_t bound = argc > 2 ? std::atoll(argv[2]) : 25;
    int jobs = argc > 3 ? std::atoi(argv[3]) : 4;

    // Valid VCs force a full sweep of the search space.
    testing::VcGenerator gen(99, 4, 5);
    std::vector<typesys::VerificationCondition> vcs;
    while (int(vcs.size()) < count) {
        auto vc = gen.next();
        if (vc.declarations.size() >= 3 && solver::brute_force(vc, 3).is_valid()) vcs.push_back(vc);
    }

    std::size_t agree = 0;
    double serial = timed([&] {
        for (const auto& vc : vcs) agree += solver::brute_force_serial(vc, bound).is_valid();
    });
    double parallel = timed([&] {
        for (const auto& vc : vcs) agree -= solver::brute_force(vc, bound).is_valid();
    });
    std::printf("oracle: %d VCs at bound %lld, serial %.3fs, compiled/OpenMP (%d threads) %.3fs, speedup %.2fx%s\n",
                count, static_cast<long long>(bound), serial, omp_get_max_threads(), parallel, serial / parallel,
                agree == 0 ? "" : " MISMATCH");

    std::vector<logic::SmtScript> scripts;
    for (const auto& vc : vcs) scripts.push_back(logic::translate_vc(vc));
    auto cfg = testing::solver_config();
    double one = timed([&] {
        for (const auto& s : scripts) solver::solve(s, cfg);
    });
    cfg.jobs = jobs;
    double many = timed([&] { solver::solve_all(scripts, cfg); });
    std::printf("solver: %zu scripts, sequential %.3fs, %d jobs %.3fs, speedup %.2fx\n", scripts.size(), one, jobs, many,
                one / many);
    return agree == 0 ? 0 : 1;
}
