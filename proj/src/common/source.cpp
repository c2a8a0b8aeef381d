#include "refine/common/source.hpp"

#include <algorithm>

#include "refine/common/error.hpp"

namespace refine {

SourceFile::SourceFile(std::string path, std::string text)
    : path_(std::move(path)), text_(std::move(text)) {
    line_starts_.push_back(0);
    for (std::uint32_t i = 0; i < text_.size(); ++i) {
        if (text_[i] == '\n') line_starts_.push_back(i + 1);
    }
}

LineCol SourceFile::position(std::uint32_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    auto line = static_cast<std::uint32_t>(it - line_starts_.begin());
    return {line, offset - line_starts_[line - 1] + 1};
}

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::CyclicAlias: return "cyclic alias";
    case ErrorKind::UnknownAlias: return "unknown alias";
    case ErrorKind::AliasArity: return "alias arity mismatch";
    case ErrorKind::DuplicateDefinition: return "duplicate definition";
    case ErrorKind::Sort: return "sort error";
    case ErrorKind::NonLinearPredicate: return "non-linear predicate";
    case ErrorKind::TypeMismatch: return "type mismatch";
    case ErrorKind::CannotSynthesize: return "cannot synthesize type";
    case ErrorKind::UnboundVariable: return "unbound variable";
    case ErrorKind::UnsupportedPredicate: return "unsupported predicate";
    case ErrorKind::SolverSpawn: return "solver spawn error";
    case ErrorKind::ModelParse: return "model parse error";
    case ErrorKind::TooManyVariables: return "too many variables";
    case ErrorKind::MissingVariable: return "missing variable";
    case ErrorKind::OutOfFuel: return "out of fuel";
    case ErrorKind::Runtime: return "runtime error";
    }
    return "error";
}

} // namespace refine
