#ifndef REFINE_SURFACE_AST_HPP
#define REFINE_SURFACE_AST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "refine/common/base_type.hpp"
#include "refine/common/source.hpp"

namespace refine::surface {

struct Expr;
struct Type;
struct Term;
using ExprPtr = std::shared_ptr<const Expr>;
using TypePtr = std::shared_ptr<const Type>;
using TermPtr = std::shared_ptr<const Term>;

// ---------------------------------------------------------------------------
// Predicate expressions, as written inside `{x: B | ...}` and alias arguments.
// `zero` and `suc e` are desugared by the parser to `0` and `e + 1`.

enum class ExprOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies, Not, Neg };

namespace expr {
struct Name { std::string name; };
struct IntLit { std::int64_t value; };
struct BoolLit { bool value; };
struct Unary { ExprOp op; ExprPtr operand; };
struct Binary { ExprOp op; ExprPtr lhs, rhs; };
} // namespace expr

struct Expr {
    std::variant<expr::Name, expr::IntLit, expr::BoolLit, expr::Unary, expr::Binary> node;
    Span span;
};

// ---------------------------------------------------------------------------
// Types.

namespace type {
struct Base { BaseType base; };
struct Refined { std::string binder; BaseType base; ExprPtr pred; };
// An empty param is the non-dependent arrow `A -> B`.
struct Arrow { std::string param; TypePtr domain, codomain; };
struct AliasRef { std::string name; ExprPtr arg; };  // arg may be null
} // namespace type

struct Type {
    std::variant<type::Base, type::Refined, type::Arrow, type::AliasRef> node;
    Span span;
};

// ---------------------------------------------------------------------------
// Terms.

enum class ArithOp { Add, Sub, Mul };

namespace term {
struct Var { std::string name; };
// `peano` marks literals written with the Nat constructors: `zero`, and the
// `1` in the desugaring of `suc e` to `e + 1`.
struct NatLit { std::int64_t value; bool peano = false; };
struct IntLit { std::int64_t value; };
struct BoolLit { bool value; };
struct Arith { ArithOp op; TermPtr lhs, rhs; };
struct App { TermPtr fn, arg; };
struct Lam { std::string param; TypePtr annotation; TermPtr body; };  // annotation may be null
struct Let { std::string name; TermPtr bound, body; };
struct If { TermPtr cond, then_branch, else_branch; };
struct Match { TermPtr scrutinee, zero_branch; std::string suc_binder; TermPtr suc_branch; };
struct Pair { TermPtr value, proof; };
struct Auto {};
struct ErasedProof {};  // the proof slot after erasure
struct Annot { TermPtr term; TypePtr type; };
} // namespace term

struct Term {
    std::variant<term::Var, term::NatLit, term::IntLit, term::BoolLit, term::Arith, term::App,
                 term::Lam, term::Let, term::If, term::Match, term::Pair, term::Auto,
                 term::ErasedProof, term::Annot>
        node;
    Span span;
};

// True for `suc` desugarings: Arith(+, e, NatLit{1, peano}).
bool is_suc(const term::Arith& a);

// ---------------------------------------------------------------------------
// Items and programs.

struct Param {
    std::string name;
    TypePtr type;
    Span span;
};

namespace item {
struct Alias { std::string name; std::optional<std::string> param; TypePtr body; };
struct Fun { std::string name; std::vector<Param> params; TypePtr result; TermPtr body; };
struct Val { std::string name; TypePtr type; TermPtr body; };  // type may be null
} // namespace item

struct Item {
    std::variant<item::Alias, item::Fun, item::Val> node;
    Span span;
};

struct SurfaceProgram {
    std::vector<Item> items;
    std::shared_ptr<const SourceFile> source;  // null for synthesized programs
};

// Structural equality, ignoring spans.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Type& a, const Type& b);
bool same_structure(const Term& a, const Term& b);
bool same_structure(const SurfaceProgram& a, const SurfaceProgram& b);

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace refine::surface

#endif // REFINE_SURFACE_AST_HPP
