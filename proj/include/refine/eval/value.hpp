#ifndef REFINE_EVAL_VALUE_HPP
#define REFINE_EVAL_VALUE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "refine/surface/ast.hpp"

namespace refine::eval {

struct Value;
struct Env;
using EnvPtr = std::shared_ptr<const Env>;

struct NatV { std::int64_t value; };
struct IntV { std::int64_t value; };
struct BoolV { bool value; };
struct Closure {
    std::string param;
    surface::TermPtr body;
    EnvPtr env;
};
// A refinement pair at run time. There is no field for the proof.
struct ErasedPairV { std::shared_ptr<const Value> value; };

struct Value {
    std::variant<NatV, IntV, BoolV, Closure, ErasedPairV> node;
};

// Persistent environment; lookups that miss fall back to top-level bindings.
struct Env {
    std::string name;
    Value value;
    EnvPtr next;
};

// Strips ErasedPairV wrappers.
const Value& underlying(const Value& v);

// Integer payload of NatV/IntV, the flag of BoolV; closures compare unequal.
bool same_value(const Value& a, const Value& b);

std::string to_string(const Value& v);

// "5" -> NatV, "-3" -> IntV, "true"/"false" -> BoolV. Throws Runtime.
Value parse_value(const std::string& text);

} // namespace refine::eval

#endif // REFINE_EVAL_VALUE_HPP
