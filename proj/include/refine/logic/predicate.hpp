#ifndef REFINE_LOGIC_PREDICATE_HPP
#define REFINE_LOGIC_PREDICATE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace refine::logic {

enum class Sort { Int, Bool };

// Linear integer term. Scale carries a literal coefficient, so products of
// two variables cannot be represented.
struct LinearTerm {
    enum class Op { Var, Const, Add, Sub, Neg, Scale };

    Op op = Op::Const;
    std::string name;       // Var
    std::int64_t value = 0; // Const value, or Scale coefficient
    std::vector<LinearTerm> args;

    static LinearTerm var(std::string name);
    static LinearTerm constant(std::int64_t value);
    static LinearTerm add(LinearTerm lhs, LinearTerm rhs);
    static LinearTerm sub(LinearTerm lhs, LinearTerm rhs);
    static LinearTerm neg(LinearTerm operand);
    static LinearTerm scale(std::int64_t coefficient, LinearTerm operand);

    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

// Quantifier-free formula over linear integer arithmetic and booleans.
struct Predicate {
    enum class Kind { Const, Var, Cmp, Not, And, Or, Implies, Iff };

    Kind kind = Kind::Const;
    bool value = true;          // Const
    std::string name;           // Var (boolean-sorted)
    CmpOp cmp = CmpOp::Eq;      // Cmp
    std::vector<LinearTerm> terms;  // Cmp: {lhs, rhs}
    std::vector<Predicate> args;    // Not: 1, others: 2

    static Predicate truth(bool value);
    static Predicate var(std::string name);
    static Predicate compare(CmpOp op, LinearTerm lhs, LinearTerm rhs);
    static Predicate negate(Predicate operand);
    static Predicate conj(Predicate lhs, Predicate rhs);
    static Predicate disj(Predicate lhs, Predicate rhs);
    static Predicate implies(Predicate lhs, Predicate rhs);
    static Predicate iff(Predicate lhs, Predicate rhs);

    bool is_true() const { return kind == Kind::Const && value; }

    friend bool operator==(const Predicate&, const Predicate&) = default;
};

// sum(coefficient * variable) + constant, variables in first-occurrence order.
struct LinearForm {
    std::vector<std::pair<std::string, std::int64_t>> coefficients;
    std::int64_t constant = 0;
};

LinearForm normalize(const LinearTerm& term);

// Replacement terms for integer variables. A boolean variable is renamed when
// its replacement is a bare LinearTerm::var.
using Substitution = std::map<std::string, LinearTerm>;

LinearTerm substitute(const LinearTerm& term, const Substitution& subst);
Predicate substitute(const Predicate& pred, const Substitution& subst);

// Free symbols in first-occurrence order, each with the sort its position
// implies.
std::vector<std::pair<std::string, Sort>> free_symbols(const Predicate& pred);

// A name as an SMT-LIB symbol: unchanged when it is a simple symbol
// (`x!3` is), otherwise quoted as `|x'|`.
std::string smt_symbol(const std::string& name);

// SMT-LIB s-expression, fully parenthesized.
std::string print_term(const LinearTerm& term);
std::string print_predicate(const Predicate& pred);

// Infix rendering in the source language's predicate syntax, with an optional
// symbol renaming applied on the way out.
using NameMap = std::function<std::string(const std::string&)>;
std::string render_term(const LinearTerm& term, const NameMap& names = {});
std::string render_predicate(const Predicate& pred, const NameMap& names = {});

} // namespace refine::logic

#endif // REFINE_LOGIC_PREDICATE_HPP
