#ifndef REFINE_TESTS_SUPPORT_HPP
#define REFINE_TESTS_SUPPORT_HPP

// Shared by unit and acceptance tests: fixture paths, CLI runner, random
// VC generator.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "refine/logic/predicate.hpp"
#include "refine/solver/process.hpp"
#include "refine/solver/solver.hpp"
#include "refine/surface/aliases.hpp"
#include "refine/surface/parser.hpp"
#include "refine/typesys/vc.hpp"

namespace refine::testing {

inline std::string corpus_path(const std::string& name) { return std::string(REFINE_CORPUS_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(REFINE_GOLDEN_DIR) + "/" + name; }
inline std::string fixture_solver(const std::string& name) {
    return std::string(REFINE_FIXTURE_DIR) + "/solvers/" + name;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(REFINE_CORPUS_DIR)) {
        if (e.path().extension() == ".rfn") out.push_back(e.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline surface::SurfaceProgram load(const std::string& path) {
    return surface::expand_aliases(surface::parse(read_text(path), path));
}

inline solver::SolverConfig solver_config() {
    solver::SolverConfig cfg;
    cfg.executable = solver::default_executable("");
    return cfg;
}

// Runs the refine executable; stdout captured, stderr inherited.
inline solver::ProcessResult run_cli(const std::vector<std::string>& args, int timeout_ms = 60000) {
    return solver::run_process(REFINE_CLI_PATH, args, "", timeout_ms);
}

// Random VCs over linear atoms: up to `max_vars` variables x0.., coefficients
// in [-max_coeff, max_coeff].
class VcGenerator {
public:
    explicit VcGenerator(std::uint64_t seed, int max_vars = 4, int max_coeff = 5)
        : rng_(seed), max_vars_(max_vars), max_coeff_(max_coeff) {}

    typesys::VerificationCondition next() {
        typesys::VerificationCondition vc;
        int n = pick(1, max_vars_);
        ints_.clear();
        bools_.clear();
        for (int i = 0; i < n; ++i) {
            auto name = "x" + std::to_string(i);
            int kind = pick(0, 9);
            BaseType base = kind < 5 ? BaseType::Int : kind < 9 ? BaseType::Nat : BaseType::Bool;
            vc.declarations.push_back({name, base});
            (base == BaseType::Bool ? bools_ : ints_).push_back(name);
        }
        if (ints_.empty()) {
            vc.declarations.front().base = BaseType::Int;
            bools_.erase(bools_.begin());
            ints_.push_back(vc.declarations.front().name);
        }
        int facts = pick(0, 3);
        for (int i = 0; i < facts; ++i) vc.facts.push_back(formula(1));
        vc.goal = formula(1);
        vc.origin.reason = "generated";
        return vc;
    }

private:
    std::mt19937_64 rng_;
    int max_vars_;
    int max_coeff_;
    std::vector<std::string> ints_;
    std::vector<std::string> bools_;

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    logic::LinearTerm linear() {
        using logic::LinearTerm;
        LinearTerm t = LinearTerm::constant(pick(-10, 10));
        for (const auto& v : ints_) {
            int c = pick(-max_coeff_, max_coeff_);
            if (c == 0 || pick(0, 2) == 0) continue;
            LinearTerm term = c == 1 ? LinearTerm::var(v) : LinearTerm::scale(c, LinearTerm::var(v));
            t = pick(0, 1) == 0 ? LinearTerm::add(term, t) : LinearTerm::sub(t, LinearTerm::neg(term));
        }
        return t;
    }

    logic::Predicate atom() {
        using logic::Predicate;
        if (!bools_.empty() && pick(0, 5) == 0) return Predicate::var(bools_[pick(0, int(bools_.size()) - 1)]);
        auto op = static_cast<logic::CmpOp>(pick(0, 5));
        return Predicate::compare(op, linear(), logic::LinearTerm::constant(pick(-10, 10)));
    }

    logic::Predicate formula(int depth) {
        using logic::Predicate;
        if (depth <= 0 || pick(0, 2) != 0) return atom();
        switch (pick(0, 4)) {
        case 0: return Predicate::conj(formula(depth - 1), formula(depth - 1));
        case 1: return Predicate::disj(formula(depth - 1), formula(depth - 1));
        case 2: return Predicate::negate(formula(depth - 1));
        case 3: return Predicate::implies(formula(depth - 1), formula(depth - 1));
        default: return Predicate::iff(formula(depth - 1), formula(depth - 1));
        }
    }
};

} // namespace refine::testing

#endif // REFINE_TESTS_SUPPORT_HPP
