#ifndef REFINE_COMMON_BASE_TYPE_HPP
#define REFINE_COMMON_BASE_TYPE_HPP

#include <string_view>

namespace refine {

enum class BaseType { Nat, Int, Bool };

constexpr std::string_view to_string(BaseType b) {
    switch (b) {
    case BaseType::Nat: return "Nat";
    case BaseType::Int: return "Int";
    case BaseType::Bool: return "Bool";
    }
    return "?";
}

constexpr bool is_numeric(BaseType b) { return b != BaseType::Bool; }

// Nat values are Int values; the reverse direction needs a proof.
constexpr bool widens_to(BaseType from, BaseType to) {
    return from == to || (from == BaseType::Nat && to == BaseType::Int);
}

} // namespace refine

#endif // REFINE_COMMON_BASE_TYPE_HPP
