#ifndef DROIDMUT_CORE_HPP
#define DROIDMUT_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace droidmut {

// Half-open byte range [start, end) inside one file. All source positions in
// the toolkit are byte offsets; character encodings are never interpreted
// when locating or splicing text.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - start; }
    bool empty() const { return start == end; }
    bool contains(const Span& inner) const {
        return start <= inner.start && inner.end <= end;
    }
    bool overlaps(const Span& other) const {
        return start < other.end && other.start < end;
    }
    friend bool operator==(const Span& a, const Span& b) {
        return a.start == b.start && a.end == b.end;
    }
};

inline std::string_view slice(std::string_view bytes, const Span& s) {
    return bytes.substr(s.start, s.end - s.start);
}

// A tolerated per-file problem (parse failure, skipped file, planner skip).
// Diagnostics never abort a scan; they surface in CLI output and drive the
// nonzero exit code.
struct Diagnostic {
    std::string file;
    std::size_t position = 0;
    std::string message;
};

using DiagnosticList = std::vector<Diagnostic>;

// Error hierarchy. Hard failures (violated preconditions, unusable input)
// throw; everything recoverable becomes a Diagnostic instead.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotADirectoryError : public Error {
public:
    explicit NotADirectoryError(const std::string& path)
        : Error("not a directory: " + path) {}
};

class NoManifestError : public Error {
public:
    explicit NoManifestError(const std::string& root)
        : Error("no AndroidManifest.xml found under: " + root) {}
};

class ParseFailure : public Error {
public:
    ParseFailure(const std::string& file, std::size_t position, const std::string& msg)
        : Error(file + ":" + std::to_string(position) + ": " + msg),
          file_(file), position_(position) {}
    const std::string& file() const { return file_; }
    std::size_t position() const { return position_; }

private:
    std::string file_;
    std::size_t position_;
};

class UnknownOperatorError : public Error {
public:
    explicit UnknownOperatorError(const std::string& id)
        : Error("unknown operator id: " + id) {}
};

class OperatorNotFoundError : public Error {
public:
    explicit OperatorNotFoundError(const std::string& msg) : Error(msg) {}
};

class TransformationFailure : public Error {
public:
    explicit TransformationFailure(const std::string& msg) : Error(msg) {}
};

class IoFailure : public Error {
public:
    explicit IoFailure(const std::string& msg) : Error(msg) {}
};

class PatchConflict : public Error {
public:
    explicit PatchConflict(const std::string& msg) : Error(msg) {}
};

class HookNotExecutable : public Error {
public:
    explicit HookNotExecutable(const std::string& msg) : Error(msg) {}
};

class UnknownMutantId : public Error {
public:
    explicit UnknownMutantId(const std::string& id)
        : Error("unknown mutant id: " + id) {}
};

class InconsistentManifest : public Error {
public:
    explicit InconsistentManifest(const std::string& msg) : Error(msg) {}
};

inline bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline bool contains(std::string_view s, std::string_view needle) {
    return s.find(needle) != std::string_view::npos;
}

// Last dot-separated segment of a (possibly qualified) name.
inline std::string_view last_segment(std::string_view dotted) {
    auto pos = dotted.rfind('.');
    return pos == std::string_view::npos ? dotted : dotted.substr(pos + 1);
}

inline std::string trim_copy(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\n' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace droidmut

#endif // DROIDMUT_CORE_HPP
