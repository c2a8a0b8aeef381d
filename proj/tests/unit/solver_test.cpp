#include <doctest.h>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "refine/common/error.hpp"
#include "refine/logic/smtlib.hpp"
#include "refine/solver/oracle.hpp"
#include "refine/solver/process.hpp"
#include "refine/solver/solver.hpp"
#include "support/support.hpp"

using namespace refine;
using namespace refine::solver;
using logic::CmpOp;
using logic::LinearTerm;
using logic::Predicate;
using typesys::VerificationCondition;

namespace {

LinearTerm v(const std::string& n) { return LinearTerm::var(n); }
LinearTerm c(std::int64_t k) { return LinearTerm::constant(k); }
Predicate cmp(CmpOp op, LinearTerm a, LinearTerm b) { return Predicate::compare(op, std::move(a), std::move(b)); }
ModelValue I(std::int64_t k) { return k; }

VerificationCondition widen_vc() {
    VerificationCondition vc;
    vc.declarations = {{"n", BaseType::Nat}, {"x", BaseType::Nat}};
    vc.facts = {cmp(CmpOp::Lt, v("x"), v("n"))};
    vc.goal = cmp(CmpOp::Lt, v("x"), LinearTerm::add(v("n"), c(1)));
    return vc;
}

VerificationCondition two_three_vc() {
    VerificationCondition vc;
    vc.declarations = {{"v", BaseType::Nat}};
    vc.facts = {cmp(CmpOp::Eq, v("v"), c(2))};
    vc.goal = cmp(CmpOp::Eq, v("v"), c(3));
    return vc;
}

std::vector<SolverConfig> solvers_under_test() {
    std::vector<SolverConfig> out{testing::solver_config()};
#ifdef REFINE_CVC5_SHIM
    SolverConfig cvc5;
    cvc5.executable = REFINE_CVC5_SHIM;
    cvc5.timeout_ms = 20000;
    out.push_back(cvc5);
#endif
    return out;
}

SolverConfig fake(const std::string& script, int timeout_ms = 5000) {
    SolverConfig cfg;
    cfg.executable = testing::fixture_solver(script);
    cfg.timeout_ms = timeout_ms;
    return cfg;
}

bool no_children() {
    int status = 0;
    return ::waitpid(-1, &status, WNOHANG) == -1 && errno == ECHILD;
}

bool group_gone(pid_t pgid) {
    for (int i = 0; i < 100; ++i) {
        if (::kill(-pgid, 0) == -1 && errno == ESRCH) return true;
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    return false;
}

} // namespace

TEST_CASE("parseModel: value shapes") {
    CHECK(parse_model("((define-fun x () Int 2))", {{"x", BaseType::Int}}) == Model{{"x", I(2)}});
    CHECK(parse_model("((define-fun b () Bool true))", {{"b", BaseType::Bool}}) == Model{{"b", true}});
    CHECK(parse_model("((define-fun x () Int (- 1)))", {{"x", BaseType::Int}}) == Model{{"x", I(-1)}});
}

TEST_CASE("parseModel: solver layouts") {
    const std::string z3_style = "(\n  (define-fun x () Int\n    2)\n  (define-fun |k'| () Int\n    (- 7))\n)\n";
    CHECK(parse_model(z3_style, {{"x", BaseType::Int}, {"k'", BaseType::Int}}) == Model{{"x", I(2)}, {"k'", I(-7)}});
    const std::string legacy = "(model\n  (define-fun p () Bool false)\n)";
    CHECK(parse_model(legacy, {{"p", BaseType::Bool}}) == Model{{"p", false}});
    // Unconstrained symbols may be omitted by the solver.
    CHECK(parse_model("()", {{"x", BaseType::Int}, {"p", BaseType::Bool}}) == Model{{"x", I(0)}, {"p", false}});
}

TEST_CASE("parseModel: malformed input") {
    CHECK_THROWS_AS(parse_model("((define-fun x () Int", {{"x", BaseType::Int}}), Error);
    CHECK_THROWS_AS(parse_model("((define-fun x () Int banana))", {{"x", BaseType::Int}}), Error);
    CHECK_THROWS_AS(parse_model("((define-fun x () Int 2))", {{"x", BaseType::Bool}}), Error);
    try {
        parse_model("((define-fun x () Int (* 2 3)))", {{"x", BaseType::Int}});
        FAIL("accepted a non-literal value");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ModelParse);
        CHECK(std::string(e.what()).find("(* 2 3)") != std::string::npos);
    }
}

TEST_CASE("evalPredicateGround") {
    CHECK(eval_predicate_ground(cmp(CmpOp::Lt, v("x"), LinearTerm::add(v("n"), c(1))), {{"x", I(0)}, {"n", I(0)}}));
    CHECK(eval_predicate_ground(Predicate::truth(true), {}));
    CHECK_FALSE(eval_predicate_ground(cmp(CmpOp::Eq, v("v"), c(3)), {{"v", I(2)}}));
    CHECK(eval_predicate_ground(Predicate::iff(Predicate::var("p"), Predicate::truth(false)), {{"p", false}}));
    try {
        eval_predicate_ground(cmp(CmpOp::Eq, v("ghost"), c(3)), {});
        FAIL("missing variable accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingVariable);
    }
}

TEST_CASE("bruteForce: examples") {
    auto bad = brute_force_serial(two_three_vc(), 10);
    REQUIRE(bad.is_invalid());
    CHECK(bad.model == Model{{"v", I(2)}});

    VerificationCondition trivial;
    trivial.goal = Predicate::truth(true);
    auto t = brute_force_serial(trivial, 0);
    CHECK(t.is_valid());
    CHECK(t.bounded);

    CHECK(brute_force_serial(widen_vc(), 25).is_valid());
    CHECK(brute_force(widen_vc(), 25).is_valid());

    VerificationCondition falsum;
    falsum.goal = Predicate::truth(false);
    CHECK(brute_force(falsum, 0).is_invalid());
}

TEST_CASE("bruteForce: first counterexample in lexicographic order") {
    // Goal fails wherever x + y > 3; the first such point with x most
    // significant and values ascending is x = -5, y = 9.
    VerificationCondition vc;
    vc.declarations = {{"x", BaseType::Int}, {"y", BaseType::Int}};
    vc.goal = cmp(CmpOp::Le, LinearTerm::add(v("x"), v("y")), c(3));
    auto r = brute_force_serial(vc, 9);
    REQUIRE(r.is_invalid());
    CHECK(r.model == Model{{"x", I(-5)}, {"y", I(9)}});
}

TEST_CASE("bruteForce: too many variables") {
    VerificationCondition vc;
    for (int i = 0; i < 7; ++i) vc.declarations.push_back({"x" + std::to_string(i), BaseType::Bool});
    vc.goal = Predicate::truth(true);
    try {
        brute_force_serial(vc, 1);
        FAIL("7 variables accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooManyVariables);
    }
    CHECK_THROWS_AS(brute_force(vc, 1), Error);
}

TEST_CASE("property: parallel oracle matches the serial reference") {
    testing::VcGenerator gen(99);
    for (int i = 0; i < 300; ++i) {
        auto vc = gen.next();
        auto serial = brute_force_serial(vc, 6);
        auto parallel = brute_force(vc, 6);
        CHECK(serial.kind == parallel.kind);
        CHECK(serial.model == parallel.model);
    }
}

TEST_CASE("solve: verdicts from real solvers") {
    for (const auto& cfg : solvers_under_test()) {
        CAPTURE(cfg.executable);
        CHECK(solve_raw(logic::translate_vc(widen_vc()), cfg).is_valid());

        VerificationCondition trivial;
        trivial.goal = Predicate::truth(true);
        CHECK(solve_raw(logic::translate_vc(trivial), cfg).is_valid());

        auto bad = solve_raw(logic::translate_vc(two_three_vc()), cfg);
        REQUIRE(bad.is_invalid());
        CHECK(bad.model == Model{{"v", I(2)}});
        CHECK(no_children());
    }
}

TEST_CASE("solve: Bool models and quoted names") {
    VerificationCondition vc;
    vc.declarations = {{"p", BaseType::Bool}, {"k'", BaseType::Int}};
    vc.facts = {Predicate::var("p"), cmp(CmpOp::Eq, v("k'"), c(-4))};
    vc.goal = Predicate::negate(Predicate::var("p"));
    for (const auto& cfg : solvers_under_test()) {
        CAPTURE(cfg.executable);
        auto r = solve_raw(logic::translate_vc(vc), cfg);
        REQUIRE(r.is_invalid());
        CHECK(r.model == Model{{"p", true}, {"k'", I(-4)}});
    }
}

TEST_CASE("solve: timeouts kill the whole process group") {
    auto pidfile = std::filesystem::temp_directory_path() / ("refine_sleeper_" + std::to_string(::getpid()));
    ::setenv("REFINE_SLEEPER_PIDFILE", pidfile.c_str(), 1);
    auto started = std::chrono::steady_clock::now();
    auto r = solve(logic::translate_vc(widen_vc()), fake("sleeper.sh", 300));
    auto elapsed = std::chrono::steady_clock::now() - started;
    ::unsetenv("REFINE_SLEEPER_PIDFILE");
    CHECK(r.is_unknown());
    CHECK(r.describe_reason() == "timeout");
    CHECK(elapsed < std::chrono::milliseconds(300 + 2000));
    CHECK(no_children());
    auto pid = std::stoi(testing::read_text(pidfile.string()));
    CHECK(group_gone(pid));
    std::filesystem::remove(pidfile);
}

TEST_CASE("solve: misbehaving solvers become Unknown, never Valid") {
    auto script = logic::translate_vc(two_three_vc());
    auto said = solve(script, fake("says_unknown.sh"));
    CHECK(said.is_unknown());
    CHECK(said.describe_reason() == "solver-said-unknown");

    for (const auto* name : {"garbage.sh", "bad_model.sh", "crasher.sh", "does_not_exist"}) {
        CAPTURE(name);
        auto r = solve(script, fake(name));
        CHECK(r.is_unknown());
        CHECK(r.reason == Verdict::Reason::SolverError);
        CHECK(r.describe_reason().rfind("solver-error", 0) == 0);
        CHECK(no_children());
    }
    CHECK_THROWS_AS(solve_raw(script, fake("bad_model.sh")), Error);
    try {
        solve_raw(script, fake("does_not_exist"));
        FAIL("spawned a missing executable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SolverSpawn);
    }
}

TEST_CASE("solveAll: keeps input order under parallelism") {
    std::vector<logic::SmtScript> scripts;
    std::vector<bool> expect_valid;
    for (int k = 0; k < 12; ++k) {
        VerificationCondition vc;
        vc.declarations = {{"v", BaseType::Int}};
        vc.facts = {cmp(CmpOp::Eq, v("v"), c(k))};
        vc.goal = cmp(CmpOp::Ne, v("v"), c(k % 3 == 0 ? k : -1));
        scripts.push_back(logic::translate_vc(vc));
        expect_valid.push_back(k % 3 != 0);
    }
    auto cfg = testing::solver_config();
    cfg.jobs = 4;
    auto out = solve_all(scripts, cfg);
    REQUIRE(out.size() == scripts.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        CAPTURE(k);
        CHECK(out[k].is_valid() == expect_valid[k]);
        if (!expect_valid[k]) CHECK(out[k].model == Model{{"v", I(static_cast<std::int64_t>(k))}});
    }
    CHECK(no_children());
}

TEST_CASE("solver selection") {
    CHECK(known_args("/usr/bin/z3") == std::vector<std::string>{"-in"});
    CHECK(known_args("cvc5") == std::vector<std::string>{"--lang=smt2", "--produce-models"});
    CHECK(known_args("mysolver").empty());
    CHECK(default_executable("/opt/s") == "/opt/s");
    ::setenv("REFINE_SOLVER", "from-env", 1);
    CHECK(default_executable("") == "from-env");
    CHECK(default_executable("flag") == "flag");
    ::unsetenv("REFINE_SOLVER");
    CHECK(default_executable("") == "z3");
}

TEST_CASE("runProcess: large input to a reader that exits early") {
    std::string big(1 << 20, 'x');
    auto r = run_process("/bin/sh", {"-c", "echo done"}, big, 5000);
    CHECK(r.output == "done\n");
    CHECK(r.exit_status == 0);
    CHECK(no_children());
}
