#ifndef DROIDMUT_JAVA_VIEW_HPP
#define DROIDMUT_JAVA_VIEW_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droidmut/core.hpp"
#include "droidmut/source_file.hpp"

// Span-preserving syntactic view over Java-like sources. Recognition is
// purely name-pattern based: no type resolution, no classpath. The view only
// has to answer the operator detectors' query set, but every span it records
// must be exact, because spans feed byte-splice patches.

namespace droidmut {

struct JavaInvocation {
    std::string receiver_text;        // "" for unqualified calls
    std::string method_name;
    std::vector<Span> argument_spans; // trimmed to token bounds
    Span call_span;                   // receiver start through closing ')'
    Span statement_span;              // enclosing statement (incl. ';') or control header
    std::string enclosing_method;     // descriptor, "" outside method bodies
    std::string enclosing_class;      // dotted nesting chain
};

struct JavaInstantiation {
    std::string class_name;           // last segment of the constructed type
    std::vector<Span> argument_spans;
    Span span;                        // 'new' through ')'
    Span statement_span;
    std::string enclosing_method;
    std::string enclosing_class;
};

struct JavaImplementsName {
    std::string name;                 // dotted text, generics stripped
    Span span;                        // covers the name incl. type arguments
};

struct JavaClassDecl {
    std::string name;
    std::vector<JavaImplementsName> implements;
    Span implements_clause_span;      // 'implements' through last name; empty if none
    std::vector<Span> override_annotation_spans; // @Override spans on this class's methods
    Span span;                        // 'class' keyword through closing '}'
    std::string enclosing_class;      // outer chain, "" for top level
};

struct JavaVarDecl {
    std::string name;
    std::string declared_type_name;   // dotted base, generics/arrays stripped
    bool is_final = false;
    bool has_init = false;
    Span init_span;                   // text after '=' (empty when none)
    Span statement_span;              // whole declaration statement incl. ';'
    std::string enclosing_method;     // "" for fields
    std::string enclosing_class;
};

struct JavaAssignment {
    std::string lhs_name;             // dotted lvalue text (simple chains only)
    Span rhs_span;
    Span statement_span;
    std::string enclosing_method;
    std::string enclosing_class;
};

struct JavaStringLiteral {
    std::string value;                // raw bytes between the quotes
    Span span;                        // including the quotes
    std::string enclosing_method;
    std::string enclosing_class;
};

struct JavaParameter {
    std::string type_name;            // dotted base
    std::string name;
};

struct JavaMethodDecl {
    std::string name;
    std::string return_type;          // base text; "" for constructors
    std::vector<JavaParameter> parameters;
    bool has_body = false;
    Span body_span;                   // '{' through '}' inclusive
    std::string enclosing_class;
    bool is_override = false;
    Span override_annotation_span;    // valid when is_override
};

struct SyntaxView {
    std::vector<JavaInvocation> invocations;
    std::vector<JavaInstantiation> instantiations;
    std::vector<JavaClassDecl> class_decls;
    std::vector<JavaVarDecl> var_decls;
    std::vector<JavaAssignment> assignments;
    std::vector<JavaStringLiteral> string_literals;
    std::vector<JavaMethodDecl> method_decls;

    // Nearest declaration of `name` visible at byte position `pos`: the
    // latest preceding local/field declaration, else any field of that name.
    // Lexical approximation, which is all the name-based detection contract
    // asks for.
    const JavaVarDecl* find_var_decl(std::string_view name, std::size_t pos) const {
        const JavaVarDecl* best = nullptr;
        for (const auto& v : var_decls) {
            if (v.name != name) continue;
            if (v.statement_span.start <= pos &&
                (!best || v.statement_span.start > best->statement_span.start))
                best = &v;
        }
        if (best) return best;
        for (const auto& v : var_decls)
            if (v.name == name) return &v;
        return nullptr;
    }

    // Declared type for a name used at `pos`; consults variable declarations
    // first, then parameters of the innermost enclosing method body.
    std::optional<std::string> declared_type_of(std::string_view name, std::size_t pos) const {
        const JavaVarDecl* decl = nullptr;
        for (const auto& v : var_decls) {
            if (v.name != name) continue;
            if (v.statement_span.start <= pos &&
                (!decl || v.statement_span.start > decl->statement_span.start))
                decl = &v;
        }
        if (decl) return decl->declared_type_name;
        const JavaMethodDecl* inner = nullptr;
        for (const auto& m : method_decls) {
            if (!m.has_body || !(m.body_span.start <= pos && pos < m.body_span.end)) continue;
            if (!inner || m.body_span.start > inner->body_span.start) inner = &m;
        }
        if (inner)
            for (const auto& p : inner->parameters)
                if (p.name == name) return p.type_name;
        for (const auto& v : var_decls)
            if (v.name == name) return v.declared_type_name;
        return std::nullopt;
    }
};

namespace java_detail {

enum class TokKind { Ident, String, Char, Number, Punct };

struct Token {
    TokKind kind;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string_view text;

    bool is(std::string_view s) const { return text == s; }
    bool is_ident() const { return kind == TokKind::Ident; }
};

class Lexer {
public:
    Lexer(std::string_view bytes, std::string path) : bytes_(bytes), path_(std::move(path)) {}

    std::vector<Token> run() {
        std::vector<Token> toks;
        while (pos_ < bytes_.size()) {
            char c = bytes_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos_;
                continue;
            }
            if (c == '/' && peek(1) == '/') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '/' && peek(1) == '*') {
                std::size_t close = bytes_.find("*/", pos_ + 2);
                if (close == std::string_view::npos)
                    fail(pos_, "unterminated block comment");
                pos_ = close + 2;
                continue;
            }
            if (c == '"') {
                lex_string(toks);
                continue;
            }
            if (c == '\'') {
                lex_char(toks);
                continue;
            }
            if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
                lex_number(toks);
                continue;
            }
            if (is_ident_start(c)) {
                std::size_t b = pos_;
                while (pos_ < bytes_.size() && is_ident_char(bytes_[pos_])) ++pos_;
                push(toks, TokKind::Ident, b, pos_);
                continue;
            }
            lex_punct(toks);
        }
        return toks;
    }

private:
    std::string_view bytes_;
    std::string path_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
        throw ParseFailure(path_, at, msg);
    }

    char peek(std::size_t ahead) const {
        return pos_ + ahead < bytes_.size() ? bytes_[pos_ + ahead] : '\0';
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
               static_cast<unsigned char>(c) >= 0x80;
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

    void push(std::vector<Token>& toks, TokKind kind, std::size_t b, std::size_t e) {
        toks.push_back(Token{kind, b, e, bytes_.substr(b, e - b)});
    }

    void lex_string(std::vector<Token>& toks) {
        std::size_t b = pos_;
        if (peek(1) == '"' && peek(2) == '"') { // text block
            std::size_t close = bytes_.find("\"\"\"", pos_ + 3);
            if (close == std::string_view::npos) fail(b, "unterminated text block");
            pos_ = close + 3;
            push(toks, TokKind::String, b, pos_);
            return;
        }
        ++pos_;
        while (pos_ < bytes_.size()) {
            char c = bytes_[pos_];
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            if (c == '\n') fail(b, "unterminated string literal");
            if (c == '"') {
                ++pos_;
                push(toks, TokKind::String, b, pos_);
                return;
            }
            ++pos_;
        }
        fail(b, "unterminated string literal");
    }

    void lex_char(std::vector<Token>& toks) {
        std::size_t b = pos_;
        ++pos_;
        while (pos_ < bytes_.size()) {
            char c = bytes_[pos_];
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            if (c == '\n') fail(b, "unterminated char literal");
            if (c == '\'') {
                ++pos_;
                push(toks, TokKind::Char, b, pos_);
                return;
            }
            ++pos_;
        }
        fail(b, "unterminated char literal");
    }

    void lex_number(std::vector<Token>& toks) {
        std::size_t b = pos_;
        while (pos_ < bytes_.size()) {
            char c = bytes_[pos_];
            if (is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                c == '_' || c == '.') {
                ++pos_;
                continue;
            }
            if ((c == '+' || c == '-') && pos_ > b) {
                char prev = bytes_[pos_ - 1];
                if (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P') {
                    ++pos_;
                    continue;
                }
            }
            break;
        }
        push(toks, TokKind::Number, b, pos_);
    }

    void lex_punct(std::vector<Token>& toks) {
        static const std::string_view multi[] = {
            ">>>=", ">>>", ">>=", "<<=", "->", "::", "==", "!=", "<=", ">=",
            "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
            "^=", "<<", ">>", "...",
        };
        std::string_view rest = bytes_.substr(pos_);
        for (auto op : multi) {
            if (starts_with(rest, op)) {
                push(toks, TokKind::Punct, pos_, pos_ + op.size());
                pos_ += op.size();
                return;
            }
        }
        push(toks, TokKind::Punct, pos_, pos_ + 1);
        ++pos_;
    }
};

struct TypeRef {
    std::string base;      // dotted, generics and arrays stripped
    std::size_t begin = 0; // byte span including generics/arrays
    std::size_t end = 0;
    std::size_t next = 0;  // token index after the type
};

struct AnnotationRef {
    std::string name; // last segment
    Span span;        // '@' through end (incl. arguments)
};

class Scanner {
public:
    Scanner(const std::vector<Token>& toks, std::string_view bytes, std::string path)
        : toks_(toks), bytes_(bytes), path_(std::move(path)) {}

    SyntaxView run() {
        while (i_ < toks_.size()) {
            const Token& t = toks_[i_];
            if (t.is("package") || t.is("import")) {
                skip_past(";");
                continue;
            }
            if (at_type_decl_start()) {
                scan_member(/*in_class=*/false);
                continue;
            }
            ++i_;
        }
        if (brace_balance_ != 0)
            throw ParseFailure(path_, bytes_.size(), "unbalanced braces");
        return std::move(out_);
    }

private:
    const std::vector<Token>& toks_;
    std::string_view bytes_;
    std::string path_;
    std::size_t i_ = 0;
    long brace_balance_ = 0;
    SyntaxView out_;
    std::vector<std::string> class_stack_;
    std::vector<std::size_t> class_decl_index_stack_; // into out_.class_decls; npos for anonymous
    std::string current_method_desc_;
    // ')' token indices that are followed by an anonymous class body, with
    // the base type name of the instantiation that opened them
    std::vector<std::pair<std::size_t, std::string>> anon_close_parens_;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // ---- token helpers ----

    bool done() const { return i_ >= toks_.size(); }
    const Token& tok(std::size_t idx) const { return toks_[idx]; }
    bool tok_is(std::size_t idx, std::string_view s) const {
        return idx < toks_.size() && toks_[idx].is(s);
    }

    [[noreturn]] void fail_here(const std::string& msg) const {
        std::size_t at = done() ? bytes_.size() : toks_[i_].begin;
        throw ParseFailure(path_, at, msg);
    }

    void skip_past(std::string_view terminator) {
        while (!done() && !toks_[i_].is(terminator)) ++i_;
        if (!done()) ++i_;
    }

    // Matching ')' or ']' or '}' for the opener at `open`, tracking all
    // three bracket kinds. Returns npos if unbalanced.
    std::size_t match_forward(std::size_t open) const {
        long p = 0, b = 0, c = 0;
        for (std::size_t j = open; j < toks_.size(); ++j) {
            const auto& t = toks_[j];
            if (t.kind != TokKind::Punct) continue;
            if (t.is("(")) ++p;
            else if (t.is(")")) --p;
            else if (t.is("[")) ++b;
            else if (t.is("]")) --b;
            else if (t.is("{")) ++c;
            else if (t.is("}")) --c;
            if (p == 0 && b == 0 && c == 0 && j > open) return j;
            if (p < 0 || b < 0 || c < 0) return npos;
        }
        return npos;
    }

    std::size_t match_backward(std::size_t close) const {
        long p = 0, b = 0, c = 0;
        for (std::size_t j = close + 1; j-- > 0;) {
            const auto& t = toks_[j];
            if (t.kind != TokKind::Punct) continue;
            if (t.is(")")) ++p;
            else if (t.is("(")) --p;
            else if (t.is("]")) ++b;
            else if (t.is("[")) --b;
            else if (t.is("}")) ++c;
            else if (t.is("{")) --c;
            if (p == 0 && b == 0 && c == 0 && j < close) return j;
            if (j == 0) break;
        }
        return npos;
    }

    static bool is_modifier(const Token& t) {
        return t.is("public") || t.is("private") || t.is("protected") || t.is("static") ||
               t.is("final") || t.is("abstract") || t.is("synchronized") || t.is("native") ||
               t.is("transient") || t.is("volatile") || t.is("strictfp") || t.is("default");
    }

    bool at_type_decl_start() const {
        std::size_t j = i_;
        while (j < toks_.size()) {
            const Token& t = toks_[j];
            if (t.is("@")) { // annotation: skip name and optional args
                ++j;
                while (j + 1 < toks_.size() && toks_[j].is_ident() && toks_[j + 1].is("."))
                    j += 2;
                if (j < toks_.size()) ++j;
                if (j < toks_.size() && toks_[j].is("(")) {
                    std::size_t m = match_forward(j);
                    if (m == npos) return false;
                    j = m + 1;
                }
                continue;
            }
            if (is_modifier(t)) {
                ++j;
                continue;
            }
            return t.is("class") || t.is("interface") || t.is("enum");
        }
        return false;
    }

    // Angle-bracket skip for type arguments starting at '<'. Only accepts
    // type-ish tokens inside; returns npos when the '<' is a comparison.
    std::size_t skip_generics(std::size_t open) const {
        long depth = 0;
        std::size_t j = open;
        while (j < toks_.size()) {
            const Token& t = toks_[j];
            if (t.is("<")) ++depth;
            else if (t.is(">")) --depth;
            else if (t.is(">>")) depth -= 2;
            else if (t.is(">>>")) depth -= 3;
            else if (t.is_ident() || t.is(".") || t.is(",") || t.is("?") || t.is("[") ||
                     t.is("]") || t.is("&") || t.is("@")) {
                // fine: identifiers, wildcards, bounds, arrays, annotations
            } else {
                return npos;
            }
            ++j;
            if (depth <= 0) return depth == 0 ? j : npos;
        }
        return npos;
    }

    // Ident ('.' Ident)* with optional type arguments per segment and
    // trailing '[]' pairs. Returns nullopt when the shape does not match.
    std::optional<TypeRef> parse_type(std::size_t from) const {
        if (from >= toks_.size() || !toks_[from].is_ident()) return std::nullopt;
        if (is_reserved_non_type(toks_[from].text)) return std::nullopt;
        TypeRef ref;
        ref.begin = toks_[from].begin;
        std::string base(toks_[from].text);
        std::size_t j = from + 1;
        std::size_t last_end = toks_[from].end;
        if (tok_is(j, "<")) {
            std::size_t g = skip_generics(j);
            if (g != npos) {
                last_end = toks_[g - 1].end;
                j = g;
            }
        }
        while (j + 1 < toks_.size() && toks_[j].is(".") && toks_[j + 1].is_ident()) {
            base += ".";
            base += toks_[j + 1].text;
            last_end = toks_[j + 1].end;
            j += 2;
            if (tok_is(j, "<")) {
                std::size_t g = skip_generics(j);
                if (g == npos) break;
                last_end = toks_[g - 1].end;
                j = g;
            }
        }
        while (j + 1 < toks_.size() && toks_[j].is("[") && toks_[j + 1].is("]")) {
            last_end = toks_[j + 1].end;
            j += 2;
        }
        ref.base = std::move(base);
        ref.end = last_end;
        ref.next = j;
        return ref;
    }

    static bool is_reserved_non_type(std::string_view s) {
        return s == "return" || s == "new" || s == "if" || s == "else" || s == "for" ||
               s == "while" || s == "do" || s == "switch" || s == "case" || s == "break" ||
               s == "continue" || s == "throw" || s == "throws" || s == "try" ||
               s == "catch" || s == "finally" || s == "instanceof" || s == "this" ||
               s == "super" || s == "class" || s == "interface" || s == "enum" ||
               s == "extends" || s == "implements" || s == "import" || s == "package" ||
               s == "assert" || s == "default";
    }

    std::optional<AnnotationRef> parse_annotation(std::size_t& j) {
        if (!tok_is(j, "@")) return std::nullopt;
        std::size_t at = j;
        ++j;
        if (j >= toks_.size() || !toks_[j].is_ident()) {
            j = at;
            return std::nullopt;
        }
        std::string name(toks_[j].text);
        std::size_t end = toks_[j].end;
        ++j;
        while (j + 1 < toks_.size() && toks_[j].is(".") && toks_[j + 1].is_ident()) {
            name = std::string(toks_[j + 1].text);
            end = toks_[j + 1].end;
            j += 2;
        }
        if (tok_is(j, "(")) {
            std::size_t m = match_forward(j);
            if (m == npos) fail_at(j, "unbalanced annotation arguments");
            end = toks_[m].end;
            j = m + 1;
        }
        return AnnotationRef{name, Span{toks_[at].begin, end}};
    }

    [[noreturn]] void fail_at(std::size_t tok_idx, const std::string& msg) const {
        std::size_t at = tok_idx < toks_.size() ? toks_[tok_idx].begin : bytes_.size();
        throw ParseFailure(path_, at, msg);
    }

    std::string class_chain() const {
        std::string out;
        for (const auto& c : class_stack_) {
            if (!out.empty()) out += ".";
            out += c;
        }
        return out;
    }

    // ---- declarations ----

    // One member of a class body (or a top-level type declaration).
    void scan_member(bool in_class) {
        std::vector<AnnotationRef> annotations;
        bool saw_final = false;
        std::size_t member_start_byte = toks_[i_].begin;

        for (;;) {
            if (done()) return;
            if (toks_[i_].is("@")) {
                if (tok_is(i_ + 1, "interface")) { // annotation type declaration
                    i_ += 2;
                    scan_type_header_and_body("", /*record=*/false);
                    return;
                }
                std::size_t j = i_;
                auto anno = parse_annotation(j);
                if (!anno) {
                    ++i_;
                    return;
                }
                annotations.push_back(*anno);
                i_ = j;
                continue;
            }
            if (is_modifier(toks_[i_])) {
                if (toks_[i_].is("final")) saw_final = true;
                ++i_;
                continue;
            }
            break;
        }
        if (done()) return;

        const Token& t = toks_[i_];
        if (t.is("class") || t.is("interface") || t.is("enum")) {
            std::size_t kw = i_;
            ++i_;
            if (done() || !toks_[i_].is_ident()) {
                skip_member_tail();
                return;
            }
            std::string name(toks_[i_].text);
            ++i_;
            scan_type_header_and_body(name, /*record=*/true, toks_[kw].begin);
            return;
        }
        if (t.is(";")) {
            ++i_;
            return;
        }
        if (t.is("{")) { // instance or static initializer
            std::string saved = current_method_desc_;
            current_method_desc_ = class_chain() + ".<initializer>";
            scan_block(current_method_desc_);
            current_method_desc_ = saved;
            return;
        }
        if (t.is("}")) return;

        if (!in_class) { // stray tokens at top level
            ++i_;
            return;
        }

        // method type parameters
        if (t.is("<")) {
            std::size_t g = skip_generics(i_);
            if (g == npos) {
                skip_member_tail();
                return;
            }
            i_ = g;
        }

        auto type = parse_type(i_);
        if (!type) {
            skip_member_tail();
            return;
        }

        // constructor: ClassName followed directly by '('
        if (tok_is(type->next, "(") && !class_stack_.empty() &&
            type->base == class_stack_.back()) {
            i_ = type->next;
            scan_method_rest("", annotations);
            return;
        }

        if (type->next < toks_.size() && toks_[type->next].is_ident()) {
            std::string name(toks_[type->next].text);
            std::size_t after = type->next + 1;
            if (tok_is(after, "(")) {
                i_ = after;
                scan_method_rest(name, annotations, type->base);
                return;
            }
            if (tok_is(after, "=") || tok_is(after, ";") || tok_is(after, ",") ||
                tok_is(after, "[")) {
                i_ = type->next;
                scan_var_declarators(type->base, saw_final, member_start_byte, "");
                return;
            }
        }
        skip_member_tail();
    }

    // extends/implements clauses, then the '{...}' body.
    void scan_type_header_and_body(const std::string& name, bool record,
                                   std::size_t kw_begin = 0) {
        JavaClassDecl decl;
        decl.name = name;
        decl.enclosing_class = class_chain();
        decl.span.start = kw_begin;

        if (tok_is(i_, "<")) {
            std::size_t g = skip_generics(i_);
            if (g != npos) i_ = g;
        }
        while (!done() && !toks_[i_].is("{")) {
            if (toks_[i_].is("implements")) {
                std::size_t kw = i_;
                ++i_;
                decl.implements_clause_span.start = toks_[kw].begin;
                for (;;) {
                    auto ty = parse_type(i_);
                    if (!ty) break;
                    decl.implements.push_back(
                        JavaImplementsName{ty->base, Span{ty->begin, ty->end}});
                    decl.implements_clause_span.end = ty->end;
                    i_ = ty->next;
                    if (tok_is(i_, ","))
                        ++i_;
                    else
                        break;
                }
                continue;
            }
            ++i_;
        }
        if (done()) fail_here("unexpected end of file in type header");

        std::size_t decl_index = npos;
        if (record) {
            out_.class_decls.push_back(decl);
            decl_index = out_.class_decls.size() - 1;
        }
        class_stack_.push_back(name.empty() ? "<anonymous>" : name);
        class_decl_index_stack_.push_back(decl_index);
        scan_class_body();
        class_decl_index_stack_.pop_back();
        class_stack_.pop_back();
        if (record) out_.class_decls[decl_index].span.end = toks_[i_ - 1].end;
    }

    // expects '{' at i_; consumes through matching '}'
    void scan_class_body() {
        if (!tok_is(i_, "{")) fail_here("expected '{' to open class body");
        ++i_;
        ++brace_balance_;
        while (!done() && !toks_[i_].is("}")) {
            std::string saved_method = current_method_desc_;
            current_method_desc_.clear();
            scan_member(/*in_class=*/true);
            current_method_desc_ = saved_method;
        }
        if (done()) fail_here("unexpected end of file in class body");
        ++i_; // '}'
        --brace_balance_;
    }

    // i_ is at '(' of the parameter list.
    void scan_method_rest(const std::string& name, const std::vector<AnnotationRef>& annotations,
                          const std::string& return_type = "") {
        JavaMethodDecl m;
        m.name = name.empty() ? (class_stack_.empty() ? "<init>" : class_stack_.back()) : name;
        m.return_type = return_type;
        m.enclosing_class = class_chain();
        for (const auto& a : annotations) {
            if (a.name == "Override") {
                m.is_override = true;
                m.override_annotation_span = a.span;
            }
        }

        std::size_t close = match_forward(i_);
        if (close == npos) fail_at(i_, "unbalanced parameter list");
        std::size_t j = i_ + 1;
        while (j < close) {
            while (j < close && (toks_[j].is("final") || toks_[j].is("@"))) {
                if (toks_[j].is("@")) {
                    auto anno = parse_annotation(j);
                    if (!anno) ++j;
                } else {
                    ++j;
                }
            }
            auto ty = parse_type(j);
            if (!ty) break;
            j = ty->next;
            if (tok_is(j, "...")) ++j;
            if (j < close && toks_[j].is_ident()) {
                m.parameters.push_back(JavaParameter{ty->base, std::string(toks_[j].text)});
                ++j;
                while (j + 1 < close && toks_[j].is("[") && toks_[j + 1].is("]")) j += 2;
            }
            if (j < close && toks_[j].is(","))
                ++j;
            else
                break;
        }
        i_ = close + 1;

        // throws clause
        if (tok_is(i_, "throws")) {
            ++i_;
            for (;;) {
                auto ty = parse_type(i_);
                if (!ty) break;
                i_ = ty->next;
                if (tok_is(i_, ","))
                    ++i_;
                else
                    break;
            }
        }

        if (tok_is(i_, ";")) { // abstract / interface method
            ++i_;
            record_method(m);
            return;
        }
        if (!tok_is(i_, "{")) { // something unexpected; bail out safely
            skip_member_tail();
            record_method(m);
            return;
        }

        std::string desc = method_descriptor(m);
        std::string saved = current_method_desc_;
        current_method_desc_ = desc;
        m.has_body = true;
        m.body_span.start = toks_[i_].begin;
        scan_block(desc);
        m.body_span.end = toks_[i_ - 1].end;
        current_method_desc_ = saved;
        record_method(m);
    }

    void record_method(JavaMethodDecl& m) {
        if (m.is_override && !class_decl_index_stack_.empty() &&
            class_decl_index_stack_.back() != npos)
            out_.class_decls[class_decl_index_stack_.back()]
                .override_annotation_spans.push_back(m.override_annotation_span);
        out_.method_decls.push_back(std::move(m));
    }

    std::string method_descriptor(const JavaMethodDecl& m) const {
        std::string desc = m.enclosing_class;
        if (!desc.empty()) desc += ".";
        desc += m.name;
        desc += "(";
        for (std::size_t k = 0; k < m.parameters.size(); ++k) {
            if (k) desc += ",";
            desc += m.parameters[k].type_name;
        }
        desc += ")";
        return desc;
    }

    // Skips an unrecognized member: through ';' or a balanced '{...}'.
    void skip_member_tail() {
        while (!done()) {
            const Token& t = toks_[i_];
            if (t.is(";")) {
                ++i_;
                return;
            }
            if (t.is("{")) {
                std::size_t m = match_forward(i_);
                if (m == npos) fail_here("unbalanced braces");
                i_ = m + 1;
                return;
            }
            if (t.is("}")) return;
            ++i_;
        }
    }

    // ---- statements ----

    // expects '{' at i_; scans statements through matching '}'
    void scan_block(const std::string& desc) {
        (void)desc;
        if (!tok_is(i_, "{")) fail_here("expected '{'");
        ++i_;
        ++brace_balance_;
        while (!done() && !toks_[i_].is("}")) scan_statement();
        if (done()) fail_here("unexpected end of file in block");
        ++i_;
        --brace_balance_;
    }

    struct ItemMark {
        std::size_t invocations, instantiations, literals, assignments, var_decls;
    };

    ItemMark mark() const {
        return ItemMark{out_.invocations.size(), out_.instantiations.size(),
                        out_.string_literals.size(), out_.assignments.size(),
                        out_.var_decls.size()};
    }

    // Stamp the enclosing-statement span on items recorded since `m` that
    // have not been stamped by a nested statement already.
    void stamp(const ItemMark& m, Span stmt) {
        for (std::size_t k = m.invocations; k < out_.invocations.size(); ++k)
            if (out_.invocations[k].statement_span.end == 0)
                out_.invocations[k].statement_span = stmt;
        for (std::size_t k = m.instantiations; k < out_.instantiations.size(); ++k)
            if (out_.instantiations[k].statement_span.end == 0)
                out_.instantiations[k].statement_span = stmt;
    }

    void scan_statement() {
        if (done()) return;
        const Token& t = toks_[i_];
        std::size_t stmt_begin = t.begin;

        if (t.is("{")) {
            scan_block(current_method_desc_);
            return;
        }
        if (t.is(";")) {
            ++i_;
            return;
        }
        if (t.is("if") || t.is("while") || t.is("switch") || t.is("synchronized") ||
            t.is("for") || t.is("catch")) {
            ++i_;
            ItemMark m = mark();
            if (tok_is(i_, "(")) {
                std::size_t close = match_forward(i_);
                if (close == npos) fail_here("unbalanced control header");
                ++i_; // into the header; expression walker records calls inside
                scan_expr_region(close);
                i_ = close + 1;
                stamp(m, Span{stmt_begin, toks_[close].end});
            }
            return; // body handled as following statement(s)
        }
        if (t.is("else") || t.is("do") || t.is("try") || t.is("finally")) {
            ++i_;
            return;
        }
        if (t.is("case")) {
            ++i_;
            while (!done() && !toks_[i_].is(":") && !toks_[i_].is("->") &&
                   !toks_[i_].is("{") && !toks_[i_].is(";") && !toks_[i_].is("}"))
                ++i_;
            if (tok_is(i_, ":") || tok_is(i_, "->")) ++i_;
            return;
        }
        if (t.is("default")) {
            ++i_;
            if (tok_is(i_, ":")) ++i_;
            return;
        }
        if (t.is("break") || t.is("continue")) {
            skip_past(";");
            return;
        }
        if (t.is("return") || t.is("throw") || t.is("assert")) {
            ++i_;
            ItemMark m = mark();
            std::size_t end_tok = scan_expr_statement_tail();
            stamp(m, Span{stmt_begin, end_tok});
            return;
        }

        // local variable declaration?
        {
            std::size_t j = i_;
            bool is_final = false;
            for (;;) {
                if (tok_is(j, "final")) {
                    is_final = true;
                    ++j;
                    continue;
                }
                if (tok_is(j, "@")) {
                    auto anno = parse_annotation(j);
                    if (!anno) break;
                    continue;
                }
                break;
            }
            auto ty = parse_type(j);
            if (ty && ty->next < toks_.size() && toks_[ty->next].is_ident()) {
                std::size_t after = ty->next + 1;
                // skip C-style array suffix on the declarator
                while (after + 1 < toks_.size() && toks_[after].is("[") &&
                       toks_[after + 1].is("]"))
                    after += 2;
                if (tok_is(after, "=") || tok_is(after, ";") || tok_is(after, ",")) {
                    if (!(tok_is(after, "=") && tok_is(after + 1, "="))) { // not '=='
                        i_ = ty->next;
                        scan_var_declarators(ty->base, is_final, stmt_begin,
                                             current_method_desc_);
                        return;
                    }
                }
            }
        }

        // assignment? simple dotted lvalue '=' ...
        {
            std::size_t j = i_;
            if (toks_[j].is_ident()) {
                std::size_t last_ident = j;
                ++j;
                while (j + 1 < toks_.size() && toks_[j].is(".") && toks_[j + 1].is_ident()) {
                    last_ident = j + 1;
                    j += 2;
                }
                if (tok_is(j, "=") && !tok_is(j + 1, "=")) {
                    std::string lhs(bytes_.substr(toks_[i_].begin,
                                                  toks_[last_ident].end - toks_[i_].begin));
                    i_ = j + 1;
                    ItemMark m = mark();
                    std::size_t rhs_begin = done() ? toks_[j].end : toks_[i_].begin;
                    scan_expr_region(npos);
                    std::size_t rhs_end = i_ > 0 ? toks_[i_ - 1].end : rhs_begin;
                    std::size_t stmt_end = rhs_end;
                    if (tok_is(i_, ";")) {
                        stmt_end = toks_[i_].end;
                        ++i_;
                    }
                    Span stmt{stmt_begin, stmt_end};
                    stamp(m, stmt);
                    out_.assignments.push_back(JavaAssignment{
                        lhs, Span{rhs_begin, rhs_end}, stmt, current_method_desc_,
                        class_chain()});
                    return;
                }
            }
        }

        // plain expression statement
        ItemMark m = mark();
        std::size_t end_tok = scan_expr_statement_tail();
        stamp(m, Span{stmt_begin, end_tok});
    }

    // Scans an expression statement up to and including ';' (or stops before
    // '}'). Returns the byte offset just past the statement end.
    std::size_t scan_expr_statement_tail() {
        std::size_t guard = i_;
        scan_expr_region(npos);
        if (tok_is(i_, ";")) {
            std::size_t end = toks_[i_].end;
            ++i_;
            return end;
        }
        if (!done() && i_ == guard) ++i_; // always make progress
        return i_ > 0 ? toks_[i_ - 1].end : 0;
    }

    // ---- expressions ----

    // Walks tokens recording invocations, instantiations and string
    // literals. Stops (without consuming) at ';' or ',' at depth 0, at an
    // unmatched ')' or '}' — or at token index `stop` when given.
    void scan_expr_region(std::size_t stop) {
        long paren = 0;
        while (!done() && i_ != stop) {
            const Token& t = toks_[i_];
            if (t.kind == TokKind::Punct) {
                if (t.is("(")) {
                    ++paren;
                    ++i_;
                    continue;
                }
                if (t.is(")")) {
                    if (paren == 0) return;
                    --paren;
                    ++i_;
                    continue;
                }
                if (t.is("{")) {
                    // anonymous class body, array initializer, or lambda block
                    const std::string* anon_base = i_ > 0 ? was_anon_open(i_ - 1) : nullptr;
                    if (anon_base) {
                        scan_anonymous_body(*anon_base);
                    } else {
                        std::size_t m = match_forward(i_);
                        if (m == npos) fail_here("unbalanced '{' in expression");
                        ++i_;
                        ++brace_balance_;
                        scan_expr_region(m);
                        i_ = m + 1;
                        --brace_balance_;
                    }
                    continue;
                }
                if (t.is("}")) return;
                if ((t.is(";") || t.is(",")) && paren == 0) return;
                ++i_;
                continue;
            }
            if (t.kind == TokKind::String) {
                out_.string_literals.push_back(JavaStringLiteral{
                    std::string(t.text.substr(1, t.text.size() > 1 ? t.text.size() - 2 : 0)),
                    Span{t.begin, t.end}, current_method_desc_, class_chain()});
                ++i_;
                continue;
            }
            if (t.is("new")) {
                handle_instantiation();
                continue;
            }
            if (t.is_ident() && tok_is(i_ + 1, "(") && !is_reserved_non_type(t.text)) {
                record_invocation();
                ++i_; // walker descends into '(' and records nested items
                continue;
            }
            ++i_;
        }
    }

    const std::string* was_anon_open(std::size_t close_paren_idx) const {
        for (const auto& [idx, name] : anon_close_parens_)
            if (idx == close_paren_idx) return &name;
        return nullptr;
    }

    void scan_anonymous_body(const std::string& base_name) {
        class_stack_.push_back("anon:" + base_name);
        class_decl_index_stack_.push_back(npos);
        std::string saved = current_method_desc_;
        current_method_desc_.clear();
        scan_class_body();
        current_method_desc_ = saved;
        class_decl_index_stack_.pop_back();
        class_stack_.pop_back();
    }

    void handle_instantiation() {
        std::size_t new_idx = i_;
        auto ty = parse_type(i_ + 1);
        if (!ty) {
            ++i_;
            return;
        }
        if (!(ty->next < toks_.size() && toks_[ty->next].is("("))) {
            // array creation or malformed; let the walker continue
            ++i_;
            return;
        }
        std::size_t open = ty->next;
        std::size_t close = match_forward(open);
        if (close == npos) fail_at(open, "unbalanced constructor arguments");

        JavaInstantiation inst;
        inst.class_name = std::string(last_segment(ty->base));
        inst.span = Span{toks_[new_idx].begin, toks_[close].end};
        inst.argument_spans = split_arguments(open, close);
        inst.enclosing_method = current_method_desc_;
        inst.enclosing_class = class_chain();
        out_.instantiations.push_back(std::move(inst));

        if (close + 1 < toks_.size() && toks_[close + 1].is("{"))
            anon_close_parens_.emplace_back(close, inst.class_name);

        // jump to '(': the constructor name must not be rescanned as a call
        i_ = open;
    }

    void record_invocation() {
        std::size_t name_idx = i_;
        std::size_t open = i_ + 1;
        std::size_t close = match_forward(open);
        if (close == npos) fail_at(open, "unbalanced call arguments");

        JavaInvocation inv;
        inv.method_name = std::string(toks_[name_idx].text);
        inv.argument_spans = split_arguments(open, close);
        inv.enclosing_method = current_method_desc_;
        inv.enclosing_class = class_chain();

        std::size_t chain_start = name_idx;
        if (name_idx > 0 && toks_[name_idx - 1].is(".")) {
            std::size_t start_tok = receiver_chain_start(name_idx - 1);
            inv.receiver_text = trim_copy(bytes_.substr(
                toks_[start_tok].begin, toks_[name_idx - 1].begin - toks_[start_tok].begin));
            chain_start = start_tok;
        }
        inv.call_span = Span{toks_[chain_start].begin, toks_[close].end};
        out_.invocations.push_back(std::move(inv));
    }

    // Token index where the receiver chain of the '.' at dot_idx begins.
    std::size_t receiver_chain_start(std::size_t dot_idx) const {
        std::size_t k = dot_idx;
        for (;;) {
            if (k == 0) return k;
            std::size_t link_end = k - 1;
            std::size_t link_start = link_end;
            const Token& lt = toks_[link_end];
            if (lt.is(")") || lt.is("]")) {
                std::size_t open = match_backward(link_end);
                if (open == npos) return k;
                link_start = open;
                if (open > 0 && toks_[open - 1].is_ident() &&
                    !is_reserved_non_type(toks_[open - 1].text))
                    link_start = open - 1;
                if (link_start > 0 && toks_[link_start - 1].is("new"))
                    link_start -= 1;
            } else if (lt.is_ident() || lt.kind == TokKind::String ||
                       lt.kind == TokKind::Char) {
                if (is_reserved_non_type(lt.text) && !lt.is("this") && !lt.is("super"))
                    return k;
            } else {
                return k;
            }
            if (link_start > 0 && toks_[link_start - 1].is("."))
                k = link_start - 1;
            else
                return link_start;
        }
    }

    // Top-level comma split between '(' at open and ')' at close, each
    // argument trimmed to its first/last token bounds. Type arguments are
    // skipped as a unit so their commas do not split.
    std::vector<Span> split_arguments(std::size_t open, std::size_t close) const {
        std::vector<Span> args;
        long p = 0, b = 0, c = 0;
        std::size_t arg_first = open + 1;
        for (std::size_t j = open + 1; j < close; ++j) {
            const Token& t = toks_[j];
            if (t.is("<") && j > open + 1 && toks_[j - 1].is_ident()) {
                std::size_t g = skip_generics(j);
                if (g != npos && g <= close) {
                    j = g - 1;
                    continue;
                }
            }
            if (t.kind == TokKind::Punct) {
                if (t.is("(")) ++p;
                else if (t.is(")")) --p;
                else if (t.is("[")) ++b;
                else if (t.is("]")) --b;
                else if (t.is("{")) ++c;
                else if (t.is("}")) --c;
                else if (t.is(",") && p == 0 && b == 0 && c == 0) {
                    if (j > arg_first)
                        args.push_back(Span{toks_[arg_first].begin, toks_[j - 1].end});
                    arg_first = j + 1;
                }
            }
        }
        if (close > arg_first)
            args.push_back(Span{toks_[arg_first].begin, toks_[close - 1].end});
        return args;
    }

    // ---- variable declarations ----

    // i_ is at the first declarator name; consumes through ';'.
    void scan_var_declarators(const std::string& type_base, bool is_final,
                              std::size_t stmt_begin, const std::string& method_desc) {
        struct Declarator {
            std::string name;
            bool has_init = false;
            Span init;
        };
        std::vector<Declarator> decls;
        ItemMark m = mark();

        for (;;) {
            if (done() || !toks_[i_].is_ident()) break;
            Declarator d;
            d.name = std::string(toks_[i_].text);
            ++i_;
            while (i_ + 1 < toks_.size() && toks_[i_].is("[") && toks_[i_ + 1].is("]"))
                i_ += 2;
            if (tok_is(i_, "=")) {
                ++i_;
                d.has_init = true;
                d.init.start = done() ? 0 : toks_[i_].begin;
                scan_expr_region(npos); // stops at ',' or ';' at depth 0
                d.init.end = i_ > 0 ? toks_[i_ - 1].end : d.init.start;
            }
            decls.push_back(std::move(d));
            if (tok_is(i_, ",")) {
                ++i_;
                continue;
            }
            break;
        }
        std::size_t stmt_end;
        if (tok_is(i_, ";")) {
            stmt_end = toks_[i_].end;
            ++i_;
        } else {
            stmt_end = i_ > 0 ? toks_[i_ - 1].end : stmt_begin;
        }
        Span stmt{stmt_begin, stmt_end};
        stamp(m, stmt);
        for (auto& d : decls) {
            out_.var_decls.push_back(JavaVarDecl{d.name, type_base, is_final, d.has_init,
                                                 d.init, stmt, method_desc, class_chain()});
        }
    }
};

} // namespace java_detail

// Parse one Java source file into a span-preserving syntactic view.
// Throws ParseFailure; the caller records a diagnostic and skips the file.
inline SyntaxView parse_java(const SourceFile& file) {
    java_detail::Lexer lexer(file.content, file.relative_path);
    auto tokens = lexer.run();
    java_detail::Scanner scanner(tokens, file.content, file.relative_path);
    return scanner.run();
}

} // namespace droidmut

#endif // DROIDMUT_JAVA_VIEW_HPP
