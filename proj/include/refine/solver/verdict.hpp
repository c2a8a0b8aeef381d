#ifndef REFINE_SOLVER_VERDICT_HPP
#define REFINE_SOLVER_VERDICT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace refine::solver {

using ModelValue = std::variant<std::int64_t, bool>;
using Model = std::map<std::string, ModelValue>;

std::string to_string(const ModelValue& v);

struct Verdict {
    enum class Kind { Valid, Invalid, Unknown };
    enum class Reason { None, Timeout, SolverSaidUnknown, SolverError };

    Kind kind = Kind::Unknown;
    bool bounded = false;  // Valid only within the oracle's search box
    Model model;           // Invalid
    Reason reason = Reason::None;
    std::string detail;    // SolverError

    static Verdict valid(bool bounded = false);
    static Verdict invalid(Model model);
    static Verdict unknown(Reason reason, std::string detail = {});

    bool is_valid() const { return kind == Kind::Valid; }
    bool is_invalid() const { return kind == Kind::Invalid; }
    bool is_unknown() const { return kind == Kind::Unknown; }

    // "timeout", "solver-said-unknown", "solver-error: <detail>"
    std::string describe_reason() const;
};

} // namespace refine::solver

#endif // REFINE_SOLVER_VERDICT_HPP
