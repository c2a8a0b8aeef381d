#ifndef REFINE_COMMON_SOURCE_HPP
#define REFINE_COMMON_SOURCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace refine {

// Half-open byte range [begin, end) into a source buffer.
struct Span {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;

    bool contains(const Span& inner) const {
        return begin <= inner.begin && inner.end <= end;
    }
    friend bool operator==(const Span&, const Span&) = default;
};

inline Span cover(const Span& a, const Span& b) {
    return {a.begin < b.begin ? a.begin : b.begin, a.end > b.end ? a.end : b.end};
}

struct LineCol {
    std::uint32_t line = 1;
    std::uint32_t column = 1;
};

// A named source buffer with a lazily-built line table.
class SourceFile {
public:
    SourceFile(std::string path, std::string text);

    const std::string& path() const { return path_; }
    const std::string& text() const { return text_; }
    LineCol position(std::uint32_t offset) const;

private:
    std::string path_;
    std::string text_;
    std::vector<std::uint32_t> line_starts_;
};

} // namespace refine

#endif // REFINE_COMMON_SOURCE_HPP
