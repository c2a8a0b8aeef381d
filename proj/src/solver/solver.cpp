#include "refine/solver/solver.hpp"

#include <cstdlib>
#include <filesystem>
#include <cctype>
#include <optional>


#include "refine/common/error.hpp"
#include "refine/solver/process.hpp"

namespace refine::solver {

std::string to_string(const ModelValue& v) {
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    return std::to_string(std::get<std::int64_t>(v));
}

Verdict Verdict::valid(bool bounded) {
    Verdict v;
    v.kind = Kind::Valid;
    v.bounded = bounded;
    return v;
}

Verdict Verdict::invalid(Model model) {
    Verdict v;
    v.kind = Kind::Invalid;
    v.model = std::move(model);
    return v;
}

Verdict Verdict::unknown(Reason reason, std::string detail) {
    Verdict v;
    v.kind = Kind::Unknown;
    v.reason = reason;
    v.detail = std::move(detail);
    return v;
}

std::string Verdict::describe_reason() const {
    switch (reason) {
    case Reason::Timeout: return "timeout";
    case Reason::SolverSaidUnknown: return "solver-said-unknown";
    case Reason::SolverError: return detail.empty() ? "solver-error" : "solver-error: " + detail;
    case Reason::None: break;
    }
    return "";
}

std::vector<std::string> known_args(const std::string& executable) {
    auto stem = std::filesystem::path(executable).filename().string();
    if (stem.rfind("z3", 0) == 0) return {"-in"};
    if (stem.rfind("cvc5", 0) == 0 || stem.rfind("cvc4", 0) == 0) return {"--lang=smt2", "--produce-models"};
    return {};
}

std::string default_executable(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("REFINE_SOLVER"); env != nullptr && *env != '\0') return env;
    return "z3";
}

// ---------------------------------------------------------------------------
// Minimal s-expression reader for solver responses.

namespace {

struct Sexp {
    std::string atom;  // empty for lists
    std::vector<Sexp> list;
    bool is_list = false;
};

class SexpReader {
public:
    explicit SexpReader(const std::string& text) : text_(text) {}

    std::optional<Sexp> next() {
        skip();
        if (pos_ >= text_.size()) return std::nullopt;
        return read();
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        auto from = pos_ > 20 ? pos_ - 20 : 0;
        throw Error(ErrorKind::ModelParse, what + " near '" + text_.substr(from, 40) + "'");
    }

    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    Sexp read() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of model");
        char c = text_[pos_];
        Sexp s;
        if (c == '(') {
            ++pos_;
            s.is_list = true;
            for (;;) {
                skip();
                if (pos_ >= text_.size()) fail("unbalanced parenthesis");
                if (text_[pos_] == ')') {
                    ++pos_;
                    return s;
                }
                s.list.push_back(read());
            }
        }
        if (c == ')') fail("unexpected ')'");
        if (c == '|') {
            auto end = text_.find('|', pos_ + 1);
            if (end == std::string::npos) fail("unterminated quoted symbol");
            s.atom = text_.substr(pos_ + 1, end - pos_ - 1);
            pos_ = end + 1;
            return s;
        }
        if (c == '"') {
            auto end = pos_ + 1;
            while (end < text_.size() && !(text_[end] == '"' && (end + 1 >= text_.size() || text_[end + 1] != '"'))) {
                end += text_[end] == '"' ? 2 : 1;
            }
            if (end >= text_.size()) fail("unterminated string");
            s.atom = text_.substr(pos_, end + 1 - pos_);
            pos_ = end + 1;
            return s;
        }
        auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')' && text_[pos_] != ';') {
            ++pos_;
        }
        s.atom = text_.substr(start, pos_ - start);
        return s;
    }
};

std::string show(const Sexp& s) {
    if (!s.is_list) return s.atom;
    std::string out = "(";
    for (std::size_t i = 0; i < s.list.size(); ++i) {
        if (i != 0) out += ' ';
        out += show(s.list[i]);
    }
    return out + ")";
}

std::optional<std::int64_t> parse_int(const std::string& atom) {
    if (atom.empty()) return std::nullopt;
    std::int64_t v = 0;
    for (char c : atom) {
        if (c < '0' || c > '9') return std::nullopt;
        if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, c - '0', &v)) return std::nullopt;
    }
    return v;
}

ModelValue parse_value(const Sexp& s, BaseType base) {
    if (base == BaseType::Bool) {
        if (!s.is_list && (s.atom == "true" || s.atom == "false")) return s.atom == "true";
        throw Error(ErrorKind::ModelParse, "expected a Bool value, got '" + show(s) + "'");
    }
    if (!s.is_list) {
        if (auto v = parse_int(s.atom)) return *v;
    } else if (s.list.size() == 2 && !s.list[0].is_list && s.list[0].atom == "-" && !s.list[1].is_list) {
        if (auto v = parse_int(s.list[1].atom)) return -*v;
    }
    throw Error(ErrorKind::ModelParse, "expected an Int value, got '" + show(s) + "'");
}

void collect_definitions(const Sexp& s, std::vector<const Sexp*>& out) {
    if (!s.is_list) return;
    if (!s.list.empty() && !s.list[0].is_list && s.list[0].atom == "define-fun") {
        out.push_back(&s);
        return;
    }
    for (const auto& child : s.list) collect_definitions(child, out);
}

} // namespace

Model parse_model(const std::string& raw, const std::vector<typesys::Declaration>& declared) {
    std::vector<Sexp> forms;
    SexpReader reader(raw);
    while (auto s = reader.next()) forms.push_back(std::move(*s));

    std::vector<const Sexp*> defs;
    for (const auto& f : forms) collect_definitions(f, defs);

    Model model;
    for (const auto& d : declared) {
        const Sexp* def = nullptr;
        for (const auto* candidate : defs) {
            if (candidate->list.size() >= 2 && !candidate->list[1].is_list && candidate->list[1].atom == d.name) {
                def = candidate;
                break;
            }
        }
        if (def == nullptr) {
            model[d.name] = d.base == BaseType::Bool ? ModelValue{false} : ModelValue{std::int64_t{0}};
            continue;
        }
        // (define-fun name () Sort value)
        if (def->list.size() != 5 || !def->list[2].is_list || !def->list[2].list.empty()) {
            throw Error(ErrorKind::ModelParse, "unexpected model entry '" + show(*def) + "'");
        }
        model[d.name] = parse_value(def->list[4], d.base);
    }
    return model;
}

// ---------------------------------------------------------------------------

namespace {

std::string first_line_of(const std::string& text, std::size_t& rest) {
    std::size_t pos = 0;
    for (;;) {
        auto end = text.find('\n', pos);
        auto line = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        auto start = line.find_first_not_of(" \t");
        line = start == std::string::npos ? "" : line.substr(start);
        rest = end == std::string::npos ? text.size() : end + 1;
        if (!line.empty() || end == std::string::npos) return line;
        pos = end + 1;
    }
}

std::vector<std::string> effective_args(const SolverConfig& cfg) {
    return cfg.args.empty() ? known_args(cfg.executable) : cfg.args;
}

} // namespace

Verdict solve_raw(const logic::SmtScript& script, const SolverConfig& cfg) {
    auto result = run_process(cfg.executable, effective_args(cfg), script.text(), cfg.timeout_ms);
    if (result.timed_out) return Verdict::unknown(Verdict::Reason::Timeout);
    std::size_t rest = 0;
    auto answer = first_line_of(result.output, rest);
    if (answer == "unsat") return Verdict::valid();
    if (answer == "unknown") return Verdict::unknown(Verdict::Reason::SolverSaidUnknown);
    if (answer == "timeout") return Verdict::unknown(Verdict::Reason::Timeout);
    if (answer == "sat") return Verdict::invalid(parse_model(result.output.substr(rest), script.declarations));
    if (answer.empty()) {
        throw Error(ErrorKind::SolverSpawn,
                    cfg.executable + " produced no answer (exit status " + std::to_string(result.exit_status) + ")");
    }
    throw Error(ErrorKind::SolverSpawn, cfg.executable + " answered '" + answer.substr(0, 80) + "'");
}

Verdict solve(const logic::SmtScript& script, const SolverConfig& cfg) {
    try {
        return solve_raw(script, cfg);
    } catch (const Error& e) {
        return Verdict::unknown(Verdict::Reason::SolverError, e.what());
    }
}

std::vector<Verdict> solve_all(const std::vector<logic::SmtScript>& scripts, const SolverConfig& cfg) {
    std::vector<Verdict> out(scripts.size());
    const auto n = static_cast<std::int64_t>(scripts.size());
    const int jobs = cfg.jobs < 1 ? 1 : cfg.jobs;
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs > 1 && n > 1)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = solve(scripts[static_cast<std::size_t>(i)], cfg);
    }
    return out;
}

std::string solver_identity(const SolverConfig& cfg) {
    try {
        auto stem = std::filesystem::path(cfg.executable).filename().string();
        std::vector<std::string> args = stem.rfind("z3", 0) == 0 ? std::vector<std::string>{"-version"}
                                                                 : std::vector<std::string>{"--version"};
        auto r = run_process(cfg.executable, args, "", cfg.timeout_ms);
        std::size_t rest = 0;
        auto line = first_line_of(r.output, rest);
        return line.empty() ? cfg.executable : line;
    } catch (const Error&) {
        return cfg.executable + " (not runnable)";
    }
}

} // namespace refine::solver
