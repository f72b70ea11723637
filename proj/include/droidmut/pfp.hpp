#ifndef DROIDMUT_PFP_HPP
#define DROIDMUT_PFP_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "droidmut/core.hpp"
#include "droidmut/operator_catalog.hpp"
#include "droidmut/project_model.hpp"
#include "droidmut/rng.hpp"

namespace droidmut {

// One applicable (operator, location) pair: the anchor span the mutation
// will edit plus whatever operator-specific metadata the transformation
// needs. The stable key identifies the entry across runs.
struct PfpEntry {
    std::string operator_id;
    std::string file;
    Span target;
    std::map<std::string, std::string> aux;
    std::string stable_key;
};

struct PfpConfig {
    // Suppress A/I and GUI code mutations inside the MAIN/LAUNCHER activity
    // class. Off by default.
    bool exclude_main_activity = false;
};

namespace pfp_detail {

inline std::string compute_stable_key(const PfpEntry& e) {
    std::string canon = e.operator_id;
    canon += "\n";
    canon += e.file;
    canon += "\n";
    canon += std::to_string(e.target.start);
    canon += "\n";
    canon += std::to_string(e.target.end);
    for (const auto& [k, v] : e.aux) {
        canon += "\n";
        canon += k;
        canon += "=";
        canon += v;
    }
    return to_hex16(fnv1a64(canon));
}

inline bool is_plain_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_' || c == '$';
        if (!ok) return false;
    }
    return !(s[0] >= '0' && s[0] <= '9');
}

inline bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') continue;
        if (c == '_' && i > 0) continue;
        break;
    }
    if (i == 0) return false;
    if (i == s.size()) return true;
    return i + 1 == s.size() && (s[i] == 'l' || s[i] == 'L');
}

inline bool contains_any(std::string_view text, const std::vector<std::string>& needles) {
    for (const auto& n : needles)
        if (contains(text, n)) return true;
    return false;
}

inline bool name_in(std::string_view name, const std::vector<std::string>& set) {
    for (const auto& s : set)
        if (name == s) return true;
    return false;
}

// #RRGGBB or #AARRGGBB
inline bool is_hex_color(std::string_view v) {
    if (v.size() != 7 && v.size() != 9) return false;
    if (v[0] != '#') return false;
    for (std::size_t i = 1; i < v.size(); ++i) {
        char c = v[i];
        bool hex = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
        if (!hex) return false;
    }
    return true;
}

// Positions where swapping adjacent bytes changes the string.
inline std::vector<std::size_t> swap_positions(std::string_view s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] != s[i + 1]) out.push_back(i);
    return out;
}

// Argument expression shaped like a class literal: Foo.class / a.b.Foo.class
inline bool is_class_literal(std::string_view text) {
    if (!ends_with(text, ".class")) return false;
    std::string_view head = text.substr(0, text.size() - 6);
    if (head.empty()) return false;
    for (char c : head) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_' || c == '$' || c == '.';
        if (!ok) return false;
    }
    return true;
}

class Collector {
public:
    Collector(const SourceModel& model, const PfpConfig& config)
        : model_(model), config_(config) {
        if (config.exclude_main_activity) {
            std::string fqn = model.main_activity_class();
            main_simple_ = std::string(last_segment(fqn));
        }
    }

    // `class_chain` is the dotted nesting chain for code entries ("" for
    // manifest/resource entries, which the exclusion flag never touches).
    void add(std::string operator_id, std::string file, Span target,
             std::map<std::string, std::string> aux, std::string_view class_chain = {}) {
        if (!main_simple_.empty() && !class_chain.empty() && excluded_chain(class_chain)) {
            const OperatorSpec& op = operator_by_id(operator_id);
            if (op.category == OperatorCategory::AI || op.category == OperatorCategory::GUI)
                return;
        }
        PfpEntry e;
        e.operator_id = std::move(operator_id);
        e.file = std::move(file);
        e.target = target;
        e.aux = std::move(aux);
        e.stable_key = compute_stable_key(e);
        entries_.push_back(std::move(e));
    }

    std::vector<PfpEntry> take() { return std::move(entries_); }

    const SourceModel& model() const { return model_; }

private:
    const SourceModel& model_;
    const PfpConfig& config_;
    std::string main_simple_;
    std::vector<PfpEntry> entries_;

    bool excluded_chain(std::string_view chain) const {
        std::size_t pos = 0;
        while (pos <= chain.size()) {
            auto next = chain.find('.', pos);
            std::string_view seg = next == std::string_view::npos
                                       ? chain.substr(pos)
                                       : chain.substr(pos, next - pos);
            if (seg == main_simple_) return true;
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
        return false;
    }
};

// ---- manifest detectors ----

inline void detect_manifest_ops(Collector& sink, const std::set<std::string>& wanted) {
    const SourceModel& model = sink.model();
    const XmlView* mv = model.xml_view(model.manifest_path);
    if (!mv) return;
    const std::string& path = model.manifest_path;

    if (wanted.count("ActivityNotDefined")) {
        for (const auto& e : mv->elements)
            if (e.tag_name == "activity") {
                std::map<std::string, std::string> aux;
                if (const auto* n = mv->find_attribute(e, "android:name"))
                    aux["activity"] = n->value;
                sink.add("ActivityNotDefined", path, e.element_span, std::move(aux));
            }
    }
    if (wanted.count("InvalidActivityName")) {
        for (const auto& e : mv->elements) {
            if (e.tag_name != "activity") continue;
            const auto* n = mv->find_attribute(e, "android:name");
            if (!n || swap_positions(n->value).empty()) continue;
            sink.add("InvalidActivityName", path, n->value_span,
                     {{"activity", n->value}});
        }
    }
    if (wanted.count("InvalidLabel")) {
        for (const auto& e : mv->elements)
            if (const auto* a = mv->find_attribute(e, "android:label"))
                sink.add("InvalidLabel", path, a->value_span, {{"label", a->value}});
    }
    if (wanted.count("SDKVersion")) {
        for (const auto& e : mv->elements)
            for (const auto& a : e.attributes)
                if (name_in(a.name, op_params::sdk_version_attributes()) &&
                    is_integer_literal(a.value))
                    sink.add("SDKVersion", path, a.value_span,
                             {{"attribute", a.name}, {"value", a.value}});
    }
    if (wanted.count("MissingPermissionManifest")) {
        for (const auto& e : mv->elements)
            if (e.tag_name == "uses-permission") {
                std::map<std::string, std::string> aux;
                if (const auto* n = mv->find_attribute(e, "android:name"))
                    aux["permission"] = n->value;
                sink.add("MissingPermissionManifest", path, e.element_span, std::move(aux));
            }
    }
    if (wanted.count("WrongMainActivity")) {
        if (model.manifest.main && model.manifest.activities.size() >= 2) {
            const auto& acts = model.manifest.activities;
            std::size_t src = 0;
            for (std::size_t i = 0; i < acts.size(); ++i)
                if (acts[i].element == model.manifest.main->activity_element) src = i;
            const auto& dest = acts[(src + 1) % acts.size()];
            const auto& filter =
                mv->elements[model.manifest.main->filter_element];
            sink.add("WrongMainActivity", path, filter.element_span,
                     {{"from", acts[src].name}, {"to", dest.name}});
        }
    }
}

// ---- resource detectors ----

inline void detect_resource_ops(Collector& sink, const std::set<std::string>& wanted) {
    const SourceModel& model = sink.model();

    if (wanted.count("WrongStringResource")) {
        for (const auto& f : model.files) {
            if (f.kind != FileKind::StringsResource) continue;
            const XmlView* v = model.xml_view(f.relative_path);
            if (!v) continue;
            for (const auto& e : v->elements) {
                if (e.tag_name != "string" || e.self_closing) continue;
                std::string_view content = f.slice(e.content_span);
                if (contains(content, "<")) continue; // markup inside; not a plain value
                std::map<std::string, std::string> aux;
                if (const auto* n = v->find_attribute(e, "name")) aux["name"] = n->value;
                sink.add("WrongStringResource", f.relative_path, e.content_span,
                         std::move(aux));
            }
        }
    }
    if (wanted.count("InvalidColor")) {
        for (const auto& f : model.files) {
            if (f.kind == FileKind::LayoutResource) {
                const XmlView* v = model.xml_view(f.relative_path);
                if (!v) continue;
                for (const auto& e : v->elements)
                    for (const auto& a : e.attributes)
                        if (is_hex_color(a.value))
                            sink.add("InvalidColor", f.relative_path, a.value_span,
                                     {{"value", a.value}});
            } else if (f.kind == FileKind::ColorResource) {
                const XmlView* v = model.xml_view(f.relative_path);
                if (!v) continue;
                for (const auto& e : v->elements) {
                    if (e.tag_name != "color" || e.self_closing) continue;
                    std::string_view content = f.slice(e.content_span);
                    if (is_hex_color(trim_copy(content)))
                        sink.add("InvalidColor", f.relative_path, e.content_span,
                                 {{"value", trim_copy(content)}});
                }
            }
        }
    }
}

// ---- code detectors ----

struct JavaFileCtx {
    const SourceFile& file;
    const SyntaxView& view;
};

// Sorted unique fully-qualified activity names.
inline std::vector<std::string> canonical_activities(const SourceModel& model) {
    std::set<std::string> set;
    for (const auto& a : model.activity_registry)
        set.insert(model.canonical_activity_name(a));
    return {set.begin(), set.end()};
}

// Lexicographically next name after `current`, wrapping around; nullopt when
// no distinct candidate exists.
inline std::optional<std::string> next_activity_after(const std::vector<std::string>& sorted,
                                                      std::string_view current) {
    for (const auto& a : sorted)
        if (a > current) return a;
    if (!sorted.empty() && sorted.front() != current) return sorted.front();
    return std::nullopt;
}

inline const JavaStringLiteral* literal_at(const SyntaxView& view, Span span) {
    for (const auto& lit : view.string_literals)
        if (lit.span == span) return &lit;
    return nullptr;
}

// The variable defined by the statement at `stmt`: a declaration with an
// initializer, or a simple assignment target.
inline std::optional<std::string> defined_var_of_statement(const SyntaxView& view, Span stmt) {
    for (const auto& v : view.var_decls)
        if (v.statement_span == stmt && v.has_init) return v.name;
    for (const auto& a : view.assignments)
        if (a.statement_span == stmt && is_plain_identifier(a.lhs_name)) return a.lhs_name;
    return std::nullopt;
}

inline bool receiver_type_contains(const JavaFileCtx& ctx, const JavaInvocation& inv,
                                   const std::vector<std::string>& markers) {
    if (!is_plain_identifier(inv.receiver_text)) return false;
    auto type = ctx.view.declared_type_of(inv.receiver_text, inv.call_span.start);
    return type && contains_any(*type, markers);
}

inline std::string chain_of(const JavaClassDecl& c) {
    return c.enclosing_class.empty() ? c.name : c.enclosing_class + "." + c.name;
}

inline void detect_code_ops(Collector& sink, const std::set<std::string>& wanted) {
    const SourceModel& model = sink.model();
    namespace p = op_params;
    std::vector<std::string> activities = canonical_activities(model);

    for (const auto& f : model.files) {
        if (f.kind != FileKind::JavaSource) continue;
        const SyntaxView* vp = model.java_view(f.relative_path);
        if (!vp) continue;
        JavaFileCtx ctx{f, *vp};
        const SyntaxView& view = *vp;
        const std::string& path = f.relative_path;

        // --- instantiation-anchored ---
        for (const auto& inst : view.instantiations) {
            if (inst.class_name == "Intent") {
                if (wanted.count("NullIntent"))
                    sink.add("NullIntent", path, inst.span, {}, inst.enclosing_class);
                if (wanted.count("DifferentActivityIntentDefinition")) {
                    for (const auto& arg : inst.argument_spans) {
                        std::string text = trim_copy(f.slice(arg));
                        if (!is_class_literal(text)) continue;
                        std::string head = text.substr(0, text.size() - 6);
                        // map the literal to a declared activity when possible
                        std::string current = head;
                        for (const auto& a : activities)
                            if (a == head || last_segment(a) == last_segment(head))
                                current = a;
                        if (activities.size() < 2) break;
                        auto next = next_activity_after(activities, current);
                        if (!next) break;
                        sink.add("DifferentActivityIntentDefinition", path, arg,
                                 {{"current", text}, {"replacement", *next + ".class"}},
                                 inst.enclosing_class);
                        break; // one class argument per instantiation
                    }
                }
            }
            if (inst.class_name == "Date" && wanted.count("InvalidDate"))
                sink.add("InvalidDate", path, inst.span, {}, inst.enclosing_class);
            if (wanted.count("InvalidFilePath") &&
                name_in(inst.class_name, p::file_open_constructors())) {
                for (const auto& arg : inst.argument_spans) {
                    if (const auto* lit = literal_at(view, arg)) {
                        sink.add("InvalidFilePath", path, lit->span, {{"value", lit->value}},
                                 inst.enclosing_class);
                        break; // first literal argument is the path
                    }
                }
            }
        }

        // --- invocation-anchored ---
        for (const auto& inv : view.invocations) {
            const std::string& m = inv.method_name;

            if (m == "putExtra" && inv.argument_spans.size() >= 2) {
                if (wanted.count("InvalidKeyIntentPutExtra")) {
                    if (const auto* lit = literal_at(view, inv.argument_spans[0]))
                        sink.add("InvalidKeyIntentPutExtra", path, lit->span,
                                 {{"key", lit->value}}, inv.enclosing_class);
                }
                if (wanted.count("NullValueIntentPutExtra"))
                    sink.add("NullValueIntentPutExtra", path, inv.argument_spans[1], {},
                             inv.enclosing_class);
            }

            if (m == "findViewById" && !inv.argument_spans.empty()) {
                std::string arg0 = trim_copy(f.slice(inv.argument_spans[0]));
                if (wanted.count("InvalidIDFindView") && starts_with(arg0, "R.id.") &&
                    model.id_registry.size() >= 2) {
                    std::string current = arg0.substr(5);
                    if (is_plain_identifier(current)) {
                        const auto& reg = model.id_registry;
                        std::string replacement;
                        for (const auto& id : reg)
                            if (id > current) {
                                replacement = id;
                                break;
                            }
                        if (replacement.empty()) replacement = reg.front();
                        if (replacement != current)
                            sink.add("InvalidIDFindView", path, inv.argument_spans[0],
                                     {{"current", current}, {"replacement", replacement}},
                                     inv.enclosing_class);
                    }
                }
                if (inv.statement_span.end != 0) {
                    auto var = defined_var_of_statement(view, inv.statement_span);
                    if (var) {
                        if (wanted.count("FindViewByIdReturnsNull"))
                            sink.add("FindViewByIdReturnsNull", path, inv.statement_span,
                                     {{"var", *var}}, inv.enclosing_class);
                        if (wanted.count("ViewComponentNotVisible"))
                            sink.add("ViewComponentNotVisible", path, inv.statement_span,
                                     {{"var", *var}}, inv.enclosing_class);
                    }
                }
            }

            if (m == "close" && inv.argument_spans.empty() &&
                is_plain_identifier(inv.receiver_text) && inv.statement_span.end != 0) {
                const auto* decl = view.find_var_decl(inv.receiver_text, inv.call_span.start);
                std::string type;
                if (decl)
                    type = decl->declared_type_name;
                else if (auto t = view.declared_type_of(inv.receiver_text, inv.call_span.start))
                    type = *t;
                bool is_final = decl && decl->is_final;
                if (wanted.count("ClosingNullCursor") && contains(type, "Cursor") && !is_final)
                    sink.add("ClosingNullCursor", path, inv.statement_span,
                             {{"var", inv.receiver_text}}, inv.enclosing_class);
                if (wanted.count("NullInputStream") &&
                    (contains(type, "InputStream") || contains(type, "Reader")))
                    sink.add("NullInputStream", path, inv.statement_span,
                             {{"var", inv.receiver_text}}, inv.enclosing_class);
                if (wanted.count("NullOutputStream") &&
                    (contains(type, "OutputStream") || contains(type, "Writer")))
                    sink.add("NullOutputStream", path, inv.statement_span,
                             {{"var", inv.receiver_text}}, inv.enclosing_class);
            }

            if (m == "isEnabled" && inv.argument_spans.empty() &&
                wanted.count("BluetoothAdapterAlwaysEnabled") &&
                receiver_type_contains(ctx, inv, {"BluetoothAdapter"}))
                sink.add("BluetoothAdapterAlwaysEnabled", path, inv.call_span, {},
                         inv.enclosing_class);

            if (m == "parse" && last_segment(inv.receiver_text) == "Uri" &&
                !inv.argument_spans.empty() && wanted.count("InvalidURI")) {
                if (const auto* lit = literal_at(view, inv.argument_spans[0]))
                    sink.add("InvalidURI", path, lit->span, {{"value", lit->value}},
                             inv.enclosing_class);
            }

            if (wanted.count("InvalidFilePath") && name_in(m, p::file_open_calls()) &&
                !inv.argument_spans.empty()) {
                if (const auto* lit = literal_at(view, inv.argument_spans[0]))
                    sink.add("InvalidFilePath", path, lit->span, {{"value", lit->value}},
                             inv.enclosing_class);
            }

            if (wanted.count("InvalidSQLQuery") && name_in(m, p::sql_call_methods()) &&
                !inv.argument_spans.empty()) {
                if (const auto* lit = literal_at(view, inv.argument_spans[0]))
                    if (!lit->value.empty())
                        sink.add("InvalidSQLQuery", path, lit->span, {{"query", lit->value}},
                                 inv.enclosing_class);
            }

            if (m == "query" && inv.argument_spans.size() >= 2 &&
                wanted.count("InvalidIndexQueryParameter"))
                sink.add("InvalidIndexQueryParameter", path, inv.call_span, {},
                         inv.enclosing_class);

            if (m == "setConnectTimeout" && inv.argument_spans.size() == 1 &&
                wanted.count("LongConnectionTimeOut")) {
                std::string arg = trim_copy(f.slice(inv.argument_spans[0]));
                sink.add("LongConnectionTimeOut", path, inv.argument_spans[0],
                         {{"value", arg}}, inv.enclosing_class);
            }

            if (wanted.count("OOMLargeImage") && name_in(m, p::bitmap_factory_methods())) {
                bool has_int_arg = false;
                for (const auto& arg : inv.argument_spans)
                    if (is_integer_literal(trim_copy(f.slice(arg)))) has_int_arg = true;
                if (has_int_arg)
                    sink.add("OOMLargeImage", path, inv.call_span, {}, inv.enclosing_class);
            }

            // back-end service calls
            bool is_backend = name_in(m, p::backend_call_methods()) &&
                              receiver_type_contains(ctx, inv, p::backend_receiver_markers());
            if (is_backend && inv.statement_span.end != 0) {
                if (wanted.count("NullBackEndServiceReturn")) {
                    auto var = defined_var_of_statement(view, inv.statement_span);
                    if (var)
                        sink.add("NullBackEndServiceReturn", path, inv.statement_span,
                                 {{"var", *var}}, inv.enclosing_class);
                }
                if (wanted.count("LengthyBackEndService"))
                    sink.add("LengthyBackEndService", path, inv.statement_span,
                             {{"call", std::to_string(inv.call_span.start)}},
                             inv.enclosing_class);
            }
        }

        // --- declaration-anchored ---
        for (const auto& v : view.var_decls) {
            if (wanted.count("NullBluetoothAdapter") && v.has_init &&
                contains(v.declared_type_name, "BluetoothAdapter"))
                sink.add("NullBluetoothAdapter", path, v.statement_span, {{"var", v.name}},
                         v.enclosing_class);
        }

        for (const auto& c : view.class_decls) {
            for (const auto& impl : c.implements) {
                if (wanted.count("NotParcelable") && last_segment(impl.name) == "Parcelable")
                    sink.add("NotParcelable", path, impl.span, {{"class", c.name}},
                             chain_of(c));
                if (wanted.count("NotSerializable") && last_segment(impl.name) == "Serializable")
                    sink.add("NotSerializable", path, impl.span, {{"class", c.name}},
                             chain_of(c));
            }
        }

        for (const auto& md : view.method_decls) {
            if (!md.has_body) continue;
            if (wanted.count("LengthyGUICreation") && md.name == "onCreate")
                sink.add("LengthyGUICreation", path, md.body_span, {{"method", md.name}},
                         md.enclosing_class);
            if (name_in(md.name, p::gui_listener_methods())) {
                if (wanted.count("BuggyGUIListener"))
                    sink.add("BuggyGUIListener", path, md.body_span,
                             {{"method", md.name}, {"return", md.return_type}},
                             md.enclosing_class);
                if (wanted.count("LengthyGUIListener"))
                    sink.add("LengthyGUIListener", path, md.body_span, {{"method", md.name}},
                             md.enclosing_class);
            }
            if (wanted.count("NullGPSLocation") && md.name == "onLocationChanged") {
                for (const auto& param : md.parameters)
                    if (last_segment(param.type_name) == "Location") {
                        sink.add("NullGPSLocation", path, md.body_span,
                                 {{"param", param.name}}, md.enclosing_class);
                        break;
                    }
            }
        }
    }
}

} // namespace pfp_detail

// Compute the Potential Failure Profile: every location where one of the
// requested operators applies, ordered by (file, target.start, operator_id).
inline std::vector<PfpEntry> extract_pfp(const SourceModel& model,
                                         const std::vector<std::string>& operator_ids,
                                         const PfpConfig& config,
                                         DiagnosticList& diagnostics) {
    std::set<std::string> wanted;
    for (const auto& id : operator_ids) {
        if (!find_operator(id)) throw UnknownOperatorError(id);
        wanted.insert(id);
    }

    pfp_detail::Collector sink(model, config);
    pfp_detail::detect_manifest_ops(sink, wanted);
    pfp_detail::detect_resource_ops(sink, wanted);
    pfp_detail::detect_code_ops(sink, wanted);

    std::vector<PfpEntry> entries = sink.take();
    std::sort(entries.begin(), entries.end(), [](const PfpEntry& a, const PfpEntry& b) {
        if (a.file != b.file) return a.file < b.file;
        if (a.target.start != b.target.start) return a.target.start < b.target.start;
        return a.operator_id < b.operator_id;
    });

    // stable keys must be unique; identical duplicates are the same
    // detection and get dropped with a diagnostic
    std::set<std::string> seen;
    std::vector<PfpEntry> unique;
    unique.reserve(entries.size());
    for (auto& e : entries) {
        if (!seen.insert(e.stable_key).second) {
            diagnostics.push_back(Diagnostic{e.file, e.target.start,
                                             "duplicate detection dropped: " + e.operator_id});
            continue;
        }
        unique.push_back(std::move(e));
    }
    return unique;
}

// All catalog operator ids, in catalog order.
inline std::vector<std::string> all_operator_ids() {
    std::vector<std::string> ids;
    for (const auto& op : catalog()) ids.push_back(op.id);
    return ids;
}

} // namespace droidmut

#endif // DROIDMUT_PFP_HPP
