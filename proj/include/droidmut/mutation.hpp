#ifndef DROIDMUT_MUTATION_HPP
#define DROIDMUT_MUTATION_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droidmut/core.hpp"
#include "droidmut/operator_catalog.hpp"
#include "droidmut/pfp.hpp"
#include "droidmut/project_model.hpp"
#include "droidmut/rng.hpp"
#include "droidmut/unified_diff.hpp"

namespace droidmut {

struct PatchEdit {
    std::string file;
    Span span;               // in the original file
    std::string original;    // exact bytes being replaced
    std::string replacement;
};

// Reversible byte-splice patch: edits are non-overlapping and sorted by
// (file, span.start); applying then reverting restores the original bytes.
struct Patch {
    std::vector<PatchEdit> edits;

    std::vector<std::string> touched_files() const {
        std::vector<std::string> files;
        for (const auto& e : edits)
            if (files.empty() || files.back() != e.file) files.push_back(e.file);
        return files;
    }
};

struct Mutant {
    std::string mutant_id;    // operator id + "-" + per-operator sequence number
    std::string operator_id;
    std::string source_entry; // stable_key of the originating PfpEntry
    Patch patch;
    std::string summary;
};

enum class MaterializeMode { Clone, PatchFile };

namespace mutation_detail {

inline std::string sleep_block() {
    return std::string(" ") + std::string(op_params::sleep_statement);
}

// Reverse a UTF-8 string by code points; invalid sequences fall back to
// byte-wise chunks so the operation is total.
inline std::string reverse_utf8(std::string_view s) {
    std::vector<std::string_view> chunks;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len = 1;
        if ((c & 0xE0) == 0xC0) len = 2;
        else if ((c & 0xF0) == 0xE0) len = 3;
        else if ((c & 0xF8) == 0xF0) len = 4;
        if (i + len > s.size()) len = 1;
        chunks.push_back(s.substr(i, len));
        i += len;
    }
    std::string out;
    out.reserve(s.size());
    for (auto it = chunks.rbegin(); it != chunks.rend(); ++it) out += *it;
    return out;
}

// Split a raw Java string-literal body into logical units: escape sequences
// (incl. \uXXXX) and UTF-8 code points stay intact.
inline std::vector<std::string_view> literal_units(std::string_view raw) {
    std::vector<std::string_view> units;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t len = 1;
        if (raw[i] == '\\' && i + 1 < raw.size()) {
            len = (raw[i + 1] == 'u' && i + 5 < raw.size()) ? 6 : 2;
        } else {
            unsigned char c = static_cast<unsigned char>(raw[i]);
            if ((c & 0xE0) == 0xC0) len = 2;
            else if ((c & 0xF0) == 0xE0) len = 3;
            else if ((c & 0xF8) == 0xF0) len = 4;
        }
        if (i + len > raw.size()) len = 1;
        units.push_back(raw.substr(i, len));
        i += len;
    }
    return units;
}

inline char hex_complement(char c) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else return c;
    int flipped = 15 - v;
    return flipped < 10 ? static_cast<char>('0' + flipped)
                        : static_cast<char>('a' + flipped - 10);
}

inline long parse_int_literal(std::string_view s) {
    std::string digits;
    for (char c : s) {
        if (c >= '0' && c <= '9') digits += c;
        else if (c == '_') continue;
        else break;
    }
    return digits.empty() ? 0 : std::stol(digits);
}

inline std::string default_return_statement(std::string_view return_type) {
    if (return_type.empty() || return_type == "void") return " ";
    if (return_type == "boolean") return " return false; ";
    if (return_type == "int" || return_type == "long" || return_type == "short" ||
        return_type == "byte" || return_type == "char")
        return " return 0; ";
    if (return_type == "float" || return_type == "double") return " return 0; ";
    return " return null; ";
}

struct TransformContext {
    const SourceModel& model;
    const PfpEntry& entry;
    SeededRng& rng;

    const SourceFile& file() const {
        const SourceFile* f = model.find_file(entry.file);
        if (!f) throw TransformationFailure(entry.file + ": file not in model");
        return *f;
    }
    std::string target_text() const {
        const SourceFile& f = file();
        if (entry.target.end > f.content.size())
            throw TransformationFailure(entry.file + ": stale span");
        return std::string(f.slice(entry.target));
    }
    std::string aux(const std::string& key) const {
        auto it = entry.aux.find(key);
        if (it == entry.aux.end())
            throw TransformationFailure(entry.operator_id + ": missing aux '" + key + "'");
        return it->second;
    }
    PatchEdit replace_target(std::string replacement) const {
        return PatchEdit{entry.file, entry.target, target_text(), std::move(replacement)};
    }
    PatchEdit replace_span(Span s, std::string replacement) const {
        return PatchEdit{entry.file, s, std::string(file().slice(s)), std::move(replacement)};
    }
    PatchEdit insert_at(std::size_t pos, std::string text) const {
        return PatchEdit{entry.file, Span{pos, pos}, "", std::move(text)};
    }
    const SyntaxView& java_view() const {
        const SyntaxView* v = model.java_view(entry.file);
        if (!v) throw TransformationFailure(entry.file + ": no syntax view");
        return *v;
    }
    const XmlView& xml_view() const {
        const XmlView* v = model.xml_view(entry.file);
        if (!v) throw TransformationFailure(entry.file + ": no xml view");
        return *v;
    }
};

inline std::vector<PatchEdit> implements_removal_edits(const TransformContext& ctx,
                                                       std::string_view interface_name,
                                                       bool drop_override_annotations) {
    const SyntaxView& view = ctx.java_view();
    const JavaClassDecl* decl = nullptr;
    std::size_t impl_idx = 0;
    for (const auto& c : view.class_decls)
        for (std::size_t k = 0; k < c.implements.size(); ++k)
            if (c.implements[k].span == ctx.entry.target) {
                decl = &c;
                impl_idx = k;
            }
    if (!decl) throw TransformationFailure("implements clause not found at target span");

    std::vector<PatchEdit> edits;
    if (decl->implements.size() == 1) {
        edits.push_back(ctx.replace_span(decl->implements_clause_span, ""));
    } else if (impl_idx == 0) {
        edits.push_back(ctx.replace_span(
            Span{decl->implements[0].span.start, decl->implements[1].span.start}, ""));
    } else {
        edits.push_back(ctx.replace_span(
            Span{decl->implements[impl_idx - 1].span.end, decl->implements[impl_idx].span.end},
            ""));
    }

    if (drop_override_annotations) {
        std::string chain = decl->enclosing_class.empty()
                                ? decl->name
                                : decl->enclosing_class + "." + decl->name;
        for (const auto& m : ctx.java_view().method_decls) {
            if (m.enclosing_class != chain || !m.is_override) continue;
            if (m.name != "writeToParcel" && m.name != "describeContents") continue;
            (void)interface_name;
            edits.push_back(ctx.replace_span(m.override_annotation_span, ""));
        }
    }
    return edits;
}

inline std::vector<PatchEdit> transform(const TransformContext& ctx) {
    const std::string& op = ctx.entry.operator_id;
    namespace p = op_params;

    if (op == "ActivityNotDefined" || op == "MissingPermissionManifest")
        return {ctx.replace_target("")};

    if (op == "InvalidActivityName") {
        std::string value = ctx.target_text();
        auto positions = pfp_detail::swap_positions(value);
        if (positions.empty())
            throw TransformationFailure("no distinct adjacent characters to swap");
        std::size_t at = positions[ctx.rng.below(positions.size())];
        std::swap(value[at], value[at + 1]);
        return {ctx.replace_target(std::move(value))};
    }

    if (op == "InvalidLabel") {
        std::string original = ctx.target_text();
        std::string label = ctx.rng.alnum_string(p::random_label_length);
        while (label == original) label = ctx.rng.alnum_string(p::random_label_length);
        return {ctx.replace_target(std::move(label))};
    }

    if (op == "SDKVersion") {
        long original = parse_int_literal(ctx.target_text());
        long v = p::sdk_version_min + static_cast<long>(ctx.rng.below(
                     static_cast<std::uint64_t>(p::sdk_version_max - p::sdk_version_min + 1)));
        while (v == original)
            v = p::sdk_version_min + static_cast<long>(ctx.rng.below(
                    static_cast<std::uint64_t>(p::sdk_version_max - p::sdk_version_min + 1)));
        return {ctx.replace_target(std::to_string(v))};
    }

    if (op == "WrongMainActivity") {
        const XmlView& view = ctx.xml_view();
        std::string dest_name = ctx.aux("to");
        const XmlElement* dest = nullptr;
        for (const auto& e : view.elements) {
            if (e.tag_name != "activity" && e.tag_name != "activity-alias") continue;
            const auto* n = view.find_attribute(e, "android:name");
            if (n && n->value == dest_name) {
                dest = &e;
                break;
            }
        }
        if (!dest) throw TransformationFailure("destination activity not found: " + dest_name);
        std::string filter_text = ctx.target_text();
        std::vector<PatchEdit> edits;
        edits.push_back(ctx.replace_target("")); // remove from current activity
        if (dest->self_closing) {
            // expand <activity .../> into <activity ...> filter </activity>
            std::string orig(ctx.file().slice(dest->element_span));
            std::string expanded = orig.substr(0, orig.size() - 2);
            while (!expanded.empty() && expanded.back() == ' ') expanded.pop_back();
            expanded += ">" + filter_text + "</" + dest->tag_name + ">";
            edits.push_back(ctx.replace_span(dest->element_span, std::move(expanded)));
        } else {
            edits.push_back(ctx.insert_at(dest->open_tag_end, filter_text));
        }
        return edits;
    }

    if (op == "WrongStringResource") {
        std::string value = ctx.target_text();
        std::string reversed = reverse_utf8(value);
        if (reversed == value) reversed = value + std::string(p::mutation_suffix);
        return {ctx.replace_target(std::move(reversed))};
    }

    if (op == "InvalidColor") {
        std::string text = ctx.target_text();
        auto hash = text.find('#');
        if (hash == std::string::npos) throw TransformationFailure("no color value at target");
        auto is_hex = [](char c) {
            return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
        };
        for (std::size_t i = hash + 1; i < text.size() && is_hex(text[i]); ++i)
            text[i] = hex_complement(text[i]);
        return {ctx.replace_target(std::move(text))};
    }

    if (op == "NullIntent") return {ctx.replace_target("null")};

    if (op == "DifferentActivityIntentDefinition")
        return {ctx.replace_target(ctx.aux("replacement"))};

    if (op == "InvalidKeyIntentPutExtra") {
        std::string lit = ctx.target_text();
        if (lit.size() < 2) throw TransformationFailure("malformed string literal");
        lit.insert(lit.size() - 1, std::string(p::mutation_suffix));
        return {ctx.replace_target(std::move(lit))};
    }

    if (op == "NullValueIntentPutExtra")
        return {ctx.replace_target(std::string(p::null_put_extra_value))};

    if (op == "FindViewByIdReturnsNull" || op == "NullBluetoothAdapter" ||
        op == "NullBackEndServiceReturn") {
        std::string var = ctx.aux("var");
        return {ctx.insert_at(ctx.entry.target.end, " " + var + " = null;")};
    }

    if (op == "ViewComponentNotVisible") {
        std::string var = ctx.aux("var");
        return {ctx.insert_at(ctx.entry.target.end,
                              " " + var + std::string(p::gone_call_suffix))};
    }

    if (op == "ClosingNullCursor" || op == "NullInputStream" || op == "NullOutputStream") {
        std::string var = ctx.aux("var");
        return {ctx.insert_at(ctx.entry.target.start, var + " = null; ")};
    }

    if (op == "BluetoothAdapterAlwaysEnabled") return {ctx.replace_target("true")};

    if (op == "InvalidIDFindView")
        return {ctx.replace_target("R.id." + ctx.aux("replacement"))};

    if (op == "InvalidURI" || op == "InvalidFilePath") {
        std::string lit = ctx.target_text();
        if (lit.size() < 2) throw TransformationFailure("malformed string literal");
        lit.insert(1, std::string(p::invalid_path_prefix));
        return {ctx.replace_target(std::move(lit))};
    }

    if (op == "InvalidDate") {
        std::string text = ctx.target_text();
        auto paren = text.find('(');
        if (paren == std::string::npos) throw TransformationFailure("malformed instantiation");
        return {ctx.replace_target(text.substr(0, paren) + "(0)")};
    }

    if (op == "InvalidSQLQuery") {
        std::string lit = ctx.target_text();
        if (lit.size() < 3) throw TransformationFailure("empty SQL literal");
        std::string_view raw(lit);
        raw = raw.substr(1, raw.size() - 2);
        auto units = literal_units(raw);
        if (units.empty()) throw TransformationFailure("empty SQL literal");
        std::string shortened(raw.substr(0, raw.size() - units.back().size()));
        return {ctx.replace_target("\"" + shortened + "\"")};
    }

    if (op == "InvalidIndexQueryParameter") {
        const SyntaxView& view = ctx.java_view();
        for (const auto& inv : view.invocations) {
            if (inv.method_name != "query" || !(inv.call_span == ctx.entry.target)) continue;
            if (inv.argument_spans.size() < 2)
                throw TransformationFailure("query call lost its arguments");
            const Span a0 = inv.argument_spans[0];
            const Span a1 = inv.argument_spans[1];
            std::string t0(ctx.file().slice(a0));
            std::string t1(ctx.file().slice(a1));
            return {ctx.replace_span(a0, t1), ctx.replace_span(a1, t0)};
        }
        throw TransformationFailure("query call not found at target span");
    }

    if (op == "NotParcelable") return implements_removal_edits(ctx, "Parcelable", true);
    if (op == "NotSerializable") return implements_removal_edits(ctx, "Serializable", false);

    if (op == "BuggyGUIListener") {
        Span body = ctx.entry.target;
        if (body.size() < 2) throw TransformationFailure("malformed listener body");
        Span interior{body.start + 1, body.end - 1};
        return {ctx.replace_span(interior, default_return_statement(ctx.aux("return")))};
    }

    if (op == "LengthyGUICreation" || op == "LengthyGUIListener")
        return {ctx.insert_at(ctx.entry.target.start + 1, sleep_block())};

    if (op == "LengthyBackEndService")
        return {ctx.insert_at(ctx.entry.target.end, sleep_block())};

    if (op == "NullGPSLocation") {
        std::string param = ctx.aux("param");
        return {ctx.insert_at(ctx.entry.target.start + 1, " " + param + " = null;")};
    }

    if (op == "LongConnectionTimeOut") {
        std::string arg = ctx.target_text();
        std::string trimmed = trim_copy(arg);
        if (pfp_detail::is_integer_literal(trimmed)) {
            long v = parse_int_literal(trimmed) * p::timeout_multiplier;
            return {ctx.replace_target(std::to_string(v))};
        }
        return {ctx.replace_target(std::to_string(p::timeout_fallback))};
    }

    if (op == "OOMLargeImage") {
        const SyntaxView& view = ctx.java_view();
        for (const auto& inv : view.invocations) {
            if (!(inv.call_span == ctx.entry.target)) continue;
            if (!pfp_detail::name_in(inv.method_name, p::bitmap_factory_methods())) continue;
            std::vector<PatchEdit> edits;
            for (const auto& arg : inv.argument_spans) {
                std::string text = trim_copy(ctx.file().slice(arg));
                if (pfp_detail::is_integer_literal(text))
                    edits.push_back(
                        ctx.replace_span(arg, std::to_string(p::large_bitmap_dimension)));
            }
            if (edits.empty()) throw TransformationFailure("no integer dimension arguments");
            return edits;
        }
        throw TransformationFailure("bitmap call not found at target span");
    }

    throw TransformationFailure("no transformation for operator: " + op);
}

inline void validate_patch(const Patch& patch, const SourceModel& model) {
    for (std::size_t i = 0; i < patch.edits.size(); ++i) {
        const PatchEdit& e = patch.edits[i];
        const SourceFile* f = model.find_file(e.file);
        if (!f) throw TransformationFailure("edit references unknown file: " + e.file);
        if (e.span.end > f->content.size())
            throw TransformationFailure("edit span exceeds file: " + e.file);
        if (i > 0 && patch.edits[i - 1].file == e.file &&
            patch.edits[i - 1].span.end > e.span.start)
            throw TransformationFailure("overlapping edits in one patch");
    }
}

} // namespace mutation_detail

// Apply one file's edits (sorted, non-overlapping) to its original content.
inline std::string apply_edits(std::string_view original,
                               const std::vector<PatchEdit>& edits) {
    std::string out;
    out.reserve(original.size() + 64);
    std::size_t pos = 0;
    for (const auto& e : edits) {
        if (e.span.start < pos || e.span.end > original.size())
            throw PatchConflict("edit span out of order or out of range");
        if (original.substr(e.span.start, e.span.size()) != e.original)
            throw PatchConflict("original bytes do not match at " + e.file + ":" +
                                std::to_string(e.span.start));
        out += original.substr(pos, e.span.start - pos);
        out += e.replacement;
        pos = e.span.end;
    }
    out += original.substr(pos);
    return out;
}

// Undo one file's edits against its mutated content.
inline std::string revert_edits(std::string_view mutated,
                                const std::vector<PatchEdit>& edits) {
    std::string out;
    long delta = 0;
    std::size_t pos = 0;
    for (const auto& e : edits) {
        std::size_t at = static_cast<std::size_t>(static_cast<long>(e.span.start) + delta);
        if (at < pos || at + e.replacement.size() > mutated.size())
            throw PatchConflict("revert span out of range");
        if (mutated.substr(at, e.replacement.size()) != e.replacement)
            throw PatchConflict("mutated bytes do not match expected replacement");
        out += mutated.substr(pos, at - pos);
        out += e.original;
        pos = at + e.replacement.size();
        delta += static_cast<long>(e.replacement.size()) - static_cast<long>(e.span.size());
    }
    out += mutated.substr(pos);
    return out;
}

// Edits of one patch grouped per file, preserving order.
inline std::map<std::string, std::vector<PatchEdit>> edits_by_file(const Patch& patch) {
    std::map<std::string, std::vector<PatchEdit>> grouped;
    for (const auto& e : patch.edits) grouped[e.file].push_back(e);
    return grouped;
}

// Turn PFP entries into mutants. Every seeded choice derives from
// seed XOR stable_key, so adding or removing an entry never perturbs the
// other mutants. Entries whose transformation fails are skipped with a
// diagnostic (counted separately from stillborn mutants).
inline std::vector<Mutant> plan_mutants(const std::vector<PfpEntry>& pfp,
                                        const SourceModel& model, std::uint64_t seed,
                                        DiagnosticList& diagnostics) {
    std::vector<Mutant> mutants;
    std::map<std::string, int> op_counter;
    for (const PfpEntry& entry : pfp) {
        SeededRng rng = SeededRng::for_entry(seed, entry.stable_key);
        mutation_detail::TransformContext ctx{model, entry, rng};
        try {
            Patch patch;
            patch.edits = mutation_detail::transform(ctx);
            std::sort(patch.edits.begin(), patch.edits.end(),
                      [](const PatchEdit& a, const PatchEdit& b) {
                          if (a.file != b.file) return a.file < b.file;
                          return a.span.start < b.span.start;
                      });
            mutation_detail::validate_patch(patch, model);

            Mutant m;
            m.operator_id = entry.operator_id;
            int seq = ++op_counter[entry.operator_id];
            m.mutant_id = entry.operator_id + "-" + std::to_string(seq);
            m.source_entry = entry.stable_key;
            m.patch = std::move(patch);
            const SourceFile* f = model.find_file(entry.file);
            auto [line, col] = f ? f->line_col(entry.target.start)
                                 : std::pair<std::size_t, std::size_t>{0, 0};
            (void)col;
            m.summary = entry.file + ":" + std::to_string(line) + ": " +
                        operator_by_id(entry.operator_id).description;
            mutants.push_back(std::move(m));
        } catch (const TransformationFailure& e) {
            diagnostics.push_back(
                Diagnostic{entry.file, entry.target.start,
                           "transformation skipped (" + entry.operator_id + "): " + e.what()});
        }
    }
    return mutants;
}

// Write the full project with one mutant's patch applied. Returns the
// directory written. Every non-edited file is byte-identical to the model.
inline std::string materialize_clone(const Mutant& mutant, const SourceModel& model,
                                     const std::string& out_dir) {
    namespace fs = std::filesystem;
    auto grouped = edits_by_file(mutant.patch);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoFailure("cannot create " + out_dir + ": " + ec.message());
    for (const auto& f : model.files) {
        std::string content = f.content;
        auto it = grouped.find(f.relative_path);
        if (it != grouped.end()) content = apply_edits(f.content, it->second);
        fs::path dest = fs::path(out_dir) / fs::path(f.relative_path);
        fs::create_directories(dest.parent_path(), ec);
        std::ofstream out(dest, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("cannot write " + dest.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoFailure("short write: " + dest.string());
    }
    return out_dir;
}

// Write a unified-diff patch file applicable to the original tree with a
// standard patch utility (-p1). Returns the file written.
inline std::string materialize_patch_file(const Mutant& mutant, const SourceModel& model,
                                          const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoFailure("cannot create " + out_dir + ": " + ec.message());
    std::string diff_text;
    for (const auto& [file, edits] : edits_by_file(mutant.patch)) {
        const SourceFile* f = model.find_file(file);
        if (!f) throw PatchConflict("patch references unknown file: " + file);
        std::string mutated = apply_edits(f->content, edits);
        diff_text += unified_file_diff(file, f->content, mutated);
    }
    fs::path dest = fs::path(out_dir) / (mutant.mutant_id + ".patch");
    std::ofstream out(dest, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write " + dest.string());
    out.write(diff_text.data(), static_cast<std::streamsize>(diff_text.size()));
    if (!out) throw IoFailure("short write: " + dest.string());
    return dest.generic_string();
}

inline std::string materialize(const Mutant& mutant, const SourceModel& model,
                               const std::string& out_dir, MaterializeMode mode) {
    return mode == MaterializeMode::Clone ? materialize_clone(mutant, model, out_dir)
                                          : materialize_patch_file(mutant, model, out_dir);
}

} // namespace droidmut

#endif // DROIDMUT_MUTATION_HPP
