#ifndef DROIDMUT_SOURCE_FILE_HPP
#define DROIDMUT_SOURCE_FILE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "droidmut/core.hpp"

namespace droidmut {

enum class FileKind {
    JavaSource,
    Manifest,
    StringsResource,
    LayoutResource,
    ColorResource,
    OtherResource,
    Unclassified,
};

inline const char* to_string(FileKind k) {
    switch (k) {
        case FileKind::JavaSource: return "JavaSource";
        case FileKind::Manifest: return "Manifest";
        case FileKind::StringsResource: return "StringsResource";
        case FileKind::LayoutResource: return "LayoutResource";
        case FileKind::ColorResource: return "ColorResource";
        case FileKind::OtherResource: return "OtherResource";
        case FileKind::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

namespace detail {

inline std::vector<std::string_view> path_segments(std::string_view rel) {
    std::vector<std::string_view> segs;
    std::size_t pos = 0;
    while (pos <= rel.size()) {
        auto next = rel.find('/', pos);
        if (next == std::string_view::npos) {
            segs.push_back(rel.substr(pos));
            break;
        }
        segs.push_back(rel.substr(pos, next - pos));
        pos = next + 1;
    }
    return segs;
}

} // namespace detail

// Path-rule classification. The manifest rule is refined by scan_project:
// only the lexicographically first AndroidManifest.xml keeps kind Manifest,
// any other one is demoted to OtherResource.
inline FileKind classify_path(std::string_view relative_path) {
    auto segs = detail::path_segments(relative_path);
    if (segs.empty()) return FileKind::Unclassified;
    std::string_view name = segs.back();

    if (name == "AndroidManifest.xml") return FileKind::Manifest;
    if (ends_with(name, ".java")) return FileKind::JavaSource;

    // res/values*/strings.xml, res/layout*/..., res/values*/colors.xml
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        if (segs[i] != "res") continue;
        std::string_view group = segs[i + 1];
        if (starts_with(group, "values") && i + 2 == segs.size() - 1) {
            if (name == "strings.xml") return FileKind::StringsResource;
            if (name == "colors.xml") return FileKind::ColorResource;
        }
        if (starts_with(group, "layout") && i + 2 <= segs.size() - 1)
            return FileKind::LayoutResource;
        return FileKind::OtherResource;
    }
    return FileKind::Unclassified;
}

// One file of the scanned project. Content is the exact on-disk byte
// sequence; nothing is ever normalized.
struct SourceFile {
    std::string relative_path;
    FileKind kind = FileKind::Unclassified;
    std::string content;
    std::vector<std::size_t> line_index; // byte offsets of line starts, [0] = 0

    void build_line_index() {
        line_index.clear();
        line_index.push_back(0);
        for (std::size_t i = 0; i < content.size(); ++i)
            if (content[i] == '\n' && i + 1 < content.size())
                line_index.push_back(i + 1);
    }

    // 1-based line/column for a byte offset.
    std::pair<std::size_t, std::size_t> line_col(std::size_t offset) const {
        std::size_t lo = 0, hi = line_index.size();
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (line_index[mid] <= offset)
                lo = mid;
            else
                hi = mid;
        }
        return {lo + 1, offset - line_index[lo] + 1};
    }

    std::string_view bytes() const { return content; }
    std::string_view slice(const Span& s) const { return droidmut::slice(content, s); }
};

} // namespace droidmut

#endif // DROIDMUT_SOURCE_FILE_HPP
