#include "refine/driver/driver.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "refine/common/error.hpp"
#include "refine/eval/interpreter.hpp"
#include "refine/logic/smtlib.hpp"
#include "refine/solver/oracle.hpp"
#include "refine/solver/solver.hpp"
#include "refine/surface/aliases.hpp"
#include "refine/surface/parser.hpp"
#include "refine/typesys/checker.hpp"
#include "refine/typesys/types.hpp"

namespace refine::driver {

namespace {

std::map<std::string, std::string> surface_names(const typesys::VerificationCondition& vc) {
    std::map<std::string, int> roots;
    for (const auto& d : vc.declarations) ++roots[typesys::source_root(d.name)];
    std::map<std::string, std::string> out;
    for (const auto& d : vc.declarations) {
        auto root = typesys::source_root(d.name);
        out[d.name] = roots[root] == 1 ? root : d.name;
    }
    return out;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string dump_stem(const std::string& path) {
    auto name = std::filesystem::path(path).filename().string();
    if (name.size() > 4 && name.compare(name.size() - 4, 4, ".rfn") == 0) name.resize(name.size() - 4);
    return name;
}

// Rejects `--run` arguments outside the entry's parameter refinements, so a
// verified function is never run on inputs its proofs do not cover.
void check_run_args(const surface::SurfaceProgram& program, const std::string& entry,
                    const std::vector<eval::Value>& args) {
    const surface::item::Fun* fun = nullptr;
    for (const auto& it : program.items) {
        if (const auto* f = std::get_if<surface::item::Fun>(&it.node); f && f->name == entry) fun = f;
    }
    if (fun == nullptr || fun->params.size() != args.size()) return;
    auto sig = fun->result;
    for (auto p = fun->params.rbegin(); p != fun->params.rend(); ++p) {
        sig = std::make_shared<const surface::Type>(surface::Type{surface::type::Arrow{p->name, p->type, sig}, {}});
    }
    typesys::Checker checker;
    auto type = checker.elaborate(typesys::TypingContext{}, *sig);
    solver::Model model;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& fn = type.as_fun();
        if (!fn.domain->is_base()) return;
        const auto& d = fn.domain->as_base();
        const auto& v = eval::underlying(args[i]).node;
        bool sorted = d.base == BaseType::Bool ? std::holds_alternative<eval::BoolV>(v)
                      : d.base == BaseType::Nat ? std::holds_alternative<eval::NatV>(v)
                                                : !std::holds_alternative<eval::BoolV>(v);
        auto where = "argument " + std::to_string(i + 1) + " (`" + fun->params[i].name + "`)";
        if (!sorted) throw Error(ErrorKind::Runtime, where + " must be a " + std::string(to_string(d.base)));
        solver::ModelValue mv;
        if (const auto* b = std::get_if<eval::BoolV>(&v)) mv = b->value;
        else if (const auto* n = std::get_if<eval::NatV>(&v)) mv = n->value;
        else mv = std::get<eval::IntV>(v).value;
        auto with_binder = model;
        with_binder[d.binder] = mv;
        if (!solver::eval_predicate_ground(d.pred, with_binder)) {
            throw Error(ErrorKind::Runtime, where + " violates its refinement " + logic::render_predicate(d.pred));
        }
        model[fn.param] = mv;
        type = *fn.codomain;
    }
}

} // namespace

std::vector<std::pair<std::string, std::string>> surface_model(const typesys::VerificationCondition& vc,
                                                               const solver::Model& model) {
    auto names = surface_names(vc);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& d : vc.declarations) {
        auto it = model.find(d.name);
        if (it != model.end()) out.emplace_back(names[d.name], solver::to_string(it->second));
    }
    return out;
}

std::string render_goal(const typesys::VerificationCondition& vc) {
    auto names = surface_names(vc);
    return logic::render_predicate(vc.goal, [&](const std::string& n) {
        auto it = names.find(n);
        return it == names.end() ? n : it->second;
    });
}

std::string render_diagnostic(const Diagnostic& d) {
    std::ostringstream out;
    out << d.file << ':' << d.position.line << ':' << d.position.column << ": ";
    if (d.severity == Diagnostic::Severity::Error) {
        out << "error: " << d.message << '\n';
        return out.str();
    }
    out << "refinement not provable: " << d.message << '\n';
    if (d.verdict && d.verdict->is_invalid()) {
        out << "  counterexample: ";
        for (std::size_t i = 0; i < d.counterexample.size(); ++i) {
            if (i != 0) out << ", ";
            out << d.counterexample[i].first << " = " << d.counterexample[i].second;
        }
        out << '\n';
    } else if (d.verdict && d.verdict->is_unknown()) {
        out << "  verdict: unknown (" << d.verdict->describe_reason() << ")\n";
    }
    if (!d.reason.empty()) out << "  note: " << d.reason << '\n';
    return out.str();
}

int exit_code(const RunReport& report) {
    bool invalid = false;
    bool unknown = false;
    for (const auto& f : report.files) {
        invalid = invalid || f.invalid > 0 || f.user_errors > 0;
        unknown = unknown || f.unknown > 0 || f.infra_errors > 0;
    }
    if (invalid) return 1;
    if (unknown) return 2;
    return 0;
}

RunReport check_files(const std::vector<std::string>& paths, const CheckOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    RunReport report;

    solver::SolverConfig cfg;
    cfg.executable = solver::default_executable(options.solver);
    cfg.timeout_ms = options.timeout_ms;
    cfg.jobs = options.jobs;
    report.solver_identity = options.no_solver
                                 ? "brute-force oracle (bound " + std::to_string(options.oracle_bound) + ")"
                                 : solver::solver_identity(cfg);

    if (options.dump_dir) std::filesystem::create_directories(*options.dump_dir);

    for (const auto& path : paths) {
        FileReport file;
        file.path = path;
        std::vector<std::pair<std::uint32_t, Diagnostic>> diags;

        auto error_diag = [&](const Error& e, const SourceFile* source) {
            Diagnostic d;
            d.severity = Diagnostic::Severity::Error;
            d.file = path;
            if (e.span() && source != nullptr) d.position = source->position(e.span()->begin);
            d.message = e.what();
            diags.emplace_back(e.span() ? e.span()->begin : 0, std::move(d));
        };

        auto text = read_file(path);
        if (!text) {
            ++file.infra_errors;
            error_diag(Error(ErrorKind::Runtime, "cannot read file"), nullptr);
        } else {
            SourceFile source(path, *text);
            std::optional<surface::SurfaceProgram> program;
            try {
                program = surface::expand_aliases(surface::parse(*text, path));
            } catch (const Error& e) {
                ++file.user_errors;
                error_diag(e, &source);
            }
            if (program) {
                auto checked = typesys::check_program(*program);
                for (const auto& e : checked.errors) {
                    ++file.user_errors;
                    error_diag(e, &source);
                }

                std::vector<logic::SmtScript> scripts;
                std::vector<std::size_t> vc_index;
                std::vector<std::optional<solver::Verdict>> verdicts(checked.vcs.size());
                for (std::size_t i = 0; i < checked.vcs.size(); ++i) {
                    try {
                        scripts.push_back(logic::translate_vc(checked.vcs[i]));
                        vc_index.push_back(i);
                    } catch (const Error& e) {
                        verdicts[i] = solver::Verdict::unknown(solver::Verdict::Reason::SolverError, e.what());
                    }
                }
                if (options.dump_dir) {
                    for (std::size_t k = 0; k < scripts.size(); ++k) {
                        auto name = dump_stem(path) + ".vc" + std::to_string(vc_index[k] + 1) + ".smt2";
                        std::ofstream dump(std::filesystem::path(*options.dump_dir) / name, std::ios::binary);
                        dump << scripts[k].text();
                    }
                }
                if (options.no_solver) {
                    for (auto i : vc_index) {
                        try {
                            verdicts[i] = solver::brute_force(checked.vcs[i], options.oracle_bound);
                        } catch (const Error& e) {
                            verdicts[i] = solver::Verdict::unknown(solver::Verdict::Reason::SolverError, e.what());
                        }
                    }
                } else {
                    auto solved = solver::solve_all(scripts, cfg);
                    for (std::size_t k = 0; k < solved.size(); ++k) verdicts[vc_index[k]] = std::move(solved[k]);
                }

                for (std::size_t i = 0; i < checked.vcs.size(); ++i) {
                    const auto& vc = checked.vcs[i];
                    const auto& verdict = *verdicts[i];
                    ++file.vcs;
                    if (verdict.is_valid()) {
                        ++file.valid;
                        continue;
                    }
                    if (verdict.is_invalid()) ++file.invalid; else ++file.unknown;
                    Diagnostic d;
                    d.file = path;
                    d.position = source.position(vc.origin.span.begin);
                    d.message = render_goal(vc);
                    d.reason = vc.origin.reason;
                    d.verdict = verdict;
                    if (verdict.is_invalid()) d.counterexample = surface_model(vc, verdict.model);
                    diags.emplace_back(vc.origin.span.begin, std::move(d));
                }
            }
        }

        std::stable_sort(diags.begin(), diags.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [offset, d] : diags) report.diagnostics.push_back(std::move(d));
        report.files.push_back(file);
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

int run_check(const std::vector<std::string>& paths, const CheckOptions& options, std::ostream& out,
              std::ostream& err) {
    auto report = check_files(paths, options);
    for (const auto& d : report.diagnostics) out << render_diagnostic(d);
    for (const auto& f : report.files) {
        out << f.path << ": " << f.vcs << " VCs, " << f.valid << " valid, " << f.invalid << " invalid, "
            << f.unknown << " unknown";
        auto errors = f.user_errors + f.infra_errors;
        if (errors > 0) out << ", " << errors << (errors == 1 ? " error" : " errors");
        out << '\n';
    }
    out << "solver: " << report.solver_identity << '\n';
    err << "time: " << report.wall_seconds << "s\n";

    int code = exit_code(report);
    if (!options.run_entry) return code;
    if (code != 0) {
        err << "not running '" << *options.run_entry << "': the program was not fully verified\n";
        return code;
    }
    try {
        std::vector<eval::Value> args;
        for (const auto& a : options.run_args) args.push_back(eval::parse_value(a));
        auto text = read_file(paths.back());
        auto source = surface::expand_aliases(surface::parse(*text, paths.back()));
        check_run_args(source, *options.run_entry, args);
        auto program = eval::erase(source);
        auto result = eval::eval(program, *options.run_entry, args);
        out << "run: " << eval::to_string(result.value) << " (" << result.steps << " steps)\n";
    } catch (const Error& e) {
        err << "run: error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace refine::driver
