#include "refine/eval/value.hpp"

#include <charconv>

#include "refine/common/error.hpp"

namespace refine::eval {

const Value& underlying(const Value& v) {
    const Value* cur = &v;
    while (const auto* p = std::get_if<ErasedPairV>(&cur->node)) cur = p->value.get();
    return *cur;
}

bool same_value(const Value& a, const Value& b) {
    const auto& x = underlying(a).node;
    const auto& y = underlying(b).node;
    if (const auto* bx = std::get_if<BoolV>(&x)) {
        const auto* by = std::get_if<BoolV>(&y);
        return by != nullptr && bx->value == by->value;
    }
    auto number = [](const auto& n) -> std::optional<std::int64_t> {
        if (const auto* v = std::get_if<NatV>(&n)) return v->value;
        if (const auto* v = std::get_if<IntV>(&n)) return v->value;
        return std::nullopt;
    };
    auto nx = number(x);
    auto ny = number(y);
    return nx && ny && *nx == *ny;
}

std::string to_string(const Value& v) {
    return std::visit(surface::overloaded{
                          [](const NatV& x) { return std::to_string(x.value); },
                          [](const IntV& x) { return std::to_string(x.value); },
                          [](const BoolV& x) { return std::string(x.value ? "true" : "false"); },
                          [](const Closure&) { return std::string("<function>"); },
                          [](const ErasedPairV& x) { return "(" + to_string(*x.value) + ", •)"; },
                      },
                      v.node);
}

Value parse_value(const std::string& text) {
    if (text == "true") return {BoolV{true}};
    if (text == "false") return {BoolV{false}};
    std::int64_t n = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorKind::Runtime, "cannot read argument '" + text + "'");
    }
    if (n >= 0 && text[0] != '-') return {NatV{n}};
    return {IntV{n}};
}

} // namespace refine::eval
