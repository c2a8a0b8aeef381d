// refine: refinement type checker for .rfn programs.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "refine/common/error.hpp"
#include "refine/driver/driver.hpp"
#include "refine/surface/aliases.hpp"
#include "refine/surface/parser.hpp"
#include "refine/surface/printer.hpp"

namespace {

int print_file(const std::string& path, bool expand) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << path << ": error: cannot read file\n";
        return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        auto program = refine::surface::parse(ss.str(), path);
        if (expand) program = refine::surface::expand_aliases(program);
        std::cout << refine::surface::print(program);
    } catch (const refine::Error& e) {
        refine::SourceFile source(path, ss.str());
        auto pos = e.span() ? source.position(e.span()->begin) : refine::LineCol{};
        std::cerr << path << ':' << pos.line << ':' << pos.column << ": error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Refinement type checker"};
    app.require_subcommand(1);

    refine::driver::CheckOptions options;
    std::vector<std::string> files;
    std::vector<std::string> run;
    std::string dump_dir;

    auto* check = app.add_subcommand("check", "Type-check files and discharge their verification conditions");
    check->add_option("files", files, "Source files (.rfn)");
    check->add_option("--solver", options.solver, "SMT-LIB v2 solver executable (default: $REFINE_SOLVER, then z3)");
    check->add_option("--timeout", options.timeout_ms, "Per-VC solver timeout in milliseconds")
        ->check(CLI::PositiveNumber);
    check->add_option("--dump-smt", dump_dir, "Write each VC's SMT-LIB script into DIR");
    check->add_option("--oracle-bound", options.oracle_bound, "Search bound for --no-solver")
        ->check(CLI::NonNegativeNumber);
    check->add_flag("--no-solver", options.no_solver, "Discharge VCs with the brute-force oracle");
    check->add_option("--run", run, "After a clean check, evaluate ENTRY applied to ARGS")->expected(1, -1);
    check->add_option("--jobs", options.jobs, "Solver processes run in parallel")->check(CLI::PositiveNumber);

    std::string print_path;
    bool expand = false;
    auto* print = app.add_subcommand("print", "Parse a file and print it back");
    print->add_option("file", print_path, "Source file")->required();
    print->add_flag("--expand", expand, "Expand type aliases first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*print) return print_file(print_path, expand);

    if (files.empty()) {
        std::cerr << "usage: refine check FILE... [options]\n" << check->help();
        return 2;
    }
    if (!dump_dir.empty()) options.dump_dir = dump_dir;
    if (!run.empty()) {
        if (files.size() != 1) {
            std::cerr << "--run needs exactly one file\n";
            return 2;
        }
        options.run_entry = run.front();
        options.run_args.assign(run.begin() + 1, run.end());
    }
    return refine::driver::run_check(files, options, std::cout, std::cerr);
}
