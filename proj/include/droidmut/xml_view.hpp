#ifndef DROIDMUT_XML_VIEW_HPP
#define DROIDMUT_XML_VIEW_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droidmut/core.hpp"
#include "droidmut/source_file.hpp"

namespace droidmut {

struct XmlAttribute {
    std::string name;
    std::string value;   // raw bytes between the quotes, entities untouched
    Span value_span;     // covers only the text between the quotes
};

struct XmlElement {
    std::string tag_name;
    std::vector<XmlAttribute> attributes;
    Span element_span;       // '<' of the start tag through the closing '>' inclusive
    Span content_span;       // between start and end tag; empty for self-closing
    std::size_t open_tag_end = 0; // offset just past the '>' of the start tag
    bool self_closing = false;
    int parent = -1;         // index into elements, -1 for the root
};

// Span-preserving view over one XML resource file. Elements appear in
// document order; slicing any recorded span out of the original bytes
// reproduces the text the view claims for it.
struct XmlView {
    std::vector<XmlElement> elements;
    bool well_formed = false;

    const XmlAttribute* find_attribute(const XmlElement& e, std::string_view name) const {
        for (const auto& a : e.attributes)
            if (a.name == name) return &a;
        return nullptr;
    }

    std::vector<int> children_of(int parent_index) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i].parent == parent_index) out.push_back(static_cast<int>(i));
        return out;
    }
};

namespace xml_detail {

class Parser {
public:
    Parser(std::string_view bytes, std::string path)
        : bytes_(bytes), path_(std::move(path)) {}

    XmlView parse() {
        XmlView view;
        std::vector<int> stack; // indices of open elements
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] != '<') {
                ++pos_; // character data / whitespace
                continue;
            }
            if (try_skip_comment() || try_skip_cdata() || try_skip_pi() || try_skip_doctype())
                continue;
            if (pos_ + 1 < bytes_.size() && bytes_[pos_ + 1] == '/') {
                close_element(view, stack);
                continue;
            }
            open_element(view, stack);
        }
        if (!stack.empty())
            fail(bytes_.size(), "unexpected end of file: unclosed <" +
                                    view.elements[static_cast<std::size_t>(stack.back())].tag_name + ">");
        if (view.elements.empty())
            fail(0, "no root element");
        view.well_formed = true;
        return view;
    }

private:
    std::string_view bytes_;
    std::string path_;
    std::size_t pos_ = 0;
    bool root_closed_ = false;

    [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
        throw ParseFailure(path_, at, msg);
    }

    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
    static bool is_name_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':';
    }
    static bool is_name_char(char c) {
        return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
    }

    void skip_spaces() {
        while (pos_ < bytes_.size() && is_space(bytes_[pos_])) ++pos_;
    }

    bool try_skip_seq(std::string_view open, std::string_view close) {
        if (!starts_with(bytes_.substr(pos_), open)) return false;
        auto end = bytes_.find(close, pos_ + open.size());
        if (end == std::string_view::npos)
            fail(pos_, std::string("unterminated ") + std::string(open));
        pos_ = end + close.size();
        return true;
    }

    bool try_skip_comment() { return try_skip_seq("<!--", "-->"); }
    bool try_skip_cdata() { return try_skip_seq("<![CDATA[", "]]>"); }
    bool try_skip_pi() { return try_skip_seq("<?", "?>"); }
    bool try_skip_doctype() {
        if (!starts_with(bytes_.substr(pos_), "<!DOCTYPE")) return false;
        // no internal-subset support; android resource files do not use one
        auto end = bytes_.find('>', pos_);
        if (end == std::string_view::npos) fail(pos_, "unterminated <!DOCTYPE");
        pos_ = end + 1;
        return true;
    }

    std::string read_name() {
        if (pos_ >= bytes_.size() || !is_name_start(bytes_[pos_]))
            fail(pos_, "expected name");
        std::size_t b = pos_;
        while (pos_ < bytes_.size() && is_name_char(bytes_[pos_])) ++pos_;
        return std::string(bytes_.substr(b, pos_ - b));
    }

    void open_element(XmlView& view, std::vector<int>& stack) {
        std::size_t start = pos_;
        if (stack.empty() && root_closed_)
            fail(start, "multiple root elements");
        ++pos_; // '<'
        XmlElement elem;
        elem.tag_name = read_name();
        elem.parent = stack.empty() ? -1 : stack.back();
        elem.element_span = Span{start, 0}; // end filled when the tag closes

        for (;;) {
            skip_spaces();
            if (pos_ >= bytes_.size()) fail(start, "unterminated start tag");
            char c = bytes_[pos_];
            if (c == '>') {
                ++pos_;
                elem.open_tag_end = pos_;
                elem.content_span = Span{pos_, pos_};
                view.elements.push_back(std::move(elem));
                stack.push_back(static_cast<int>(view.elements.size() - 1));
                return;
            }
            if (c == '/') {
                if (pos_ + 1 >= bytes_.size() || bytes_[pos_ + 1] != '>')
                    fail(pos_, "malformed self-closing tag");
                pos_ += 2;
                elem.open_tag_end = pos_;
                elem.self_closing = true;
                elem.element_span.end = pos_;
                elem.content_span = Span{pos_, pos_};
                if (stack.empty()) root_closed_ = true;
                view.elements.push_back(std::move(elem));
                return;
            }
            XmlAttribute attr;
            attr.name = read_name();
            skip_spaces();
            if (pos_ >= bytes_.size() || bytes_[pos_] != '=')
                fail(pos_, "expected '=' after attribute name");
            ++pos_;
            skip_spaces();
            if (pos_ >= bytes_.size() || (bytes_[pos_] != '"' && bytes_[pos_] != '\''))
                fail(pos_, "expected quoted attribute value");
            char quote = bytes_[pos_];
            ++pos_;
            std::size_t vb = pos_;
            while (pos_ < bytes_.size() && bytes_[pos_] != quote) ++pos_;
            if (pos_ >= bytes_.size()) fail(vb, "unterminated attribute value");
            attr.value = std::string(bytes_.substr(vb, pos_ - vb));
            attr.value_span = Span{vb, pos_};
            ++pos_; // closing quote
            elem.attributes.push_back(std::move(attr));
        }
    }

    void close_element(XmlView& view, std::vector<int>& stack) {
        std::size_t start = pos_;
        pos_ += 2; // "</"
        std::string name = read_name();
        skip_spaces();
        if (pos_ >= bytes_.size() || bytes_[pos_] != '>')
            fail(pos_, "malformed end tag");
        ++pos_;
        if (stack.empty())
            fail(start, "end tag </" + name + "> without open element");
        auto idx = static_cast<std::size_t>(stack.back());
        XmlElement& elem = view.elements[idx];
        if (elem.tag_name != name)
            fail(start, "mismatched end tag: expected </" + elem.tag_name + ">, got </" + name + ">");
        elem.element_span.end = pos_;
        elem.content_span = Span{elem.open_tag_end, start};
        stack.pop_back();
        if (stack.empty()) root_closed_ = true;
    }
};

} // namespace xml_detail

// Parse one XML resource file into a span-preserving view.
// Throws ParseFailure on malformed input; the caller records a diagnostic
// and skips the file for detection.
inline XmlView parse_xml(const SourceFile& file) {
    xml_detail::Parser parser(file.content, file.relative_path);
    return parser.parse();
}

} // namespace droidmut

#endif // DROIDMUT_XML_VIEW_HPP
