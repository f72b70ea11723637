#ifndef DROIDMUT_PROJECT_MODEL_HPP
#define DROIDMUT_PROJECT_MODEL_HPP

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "droidmut/core.hpp"
#include "droidmut/java_view.hpp"
#include "droidmut/rng.hpp"
#include "droidmut/source_file.hpp"
#include "droidmut/xml_view.hpp"

namespace droidmut {

// One activity (or activity-alias) declaration from the manifest.
// Aliases count as activity declarations: they are intent-resolution
// targets and can carry the launcher intent-filter.
struct ActivityDecl {
    std::string name;        // android:name attribute, verbatim
    std::size_t element;     // index into the manifest XmlView
    bool is_alias = false;
};

struct MainLauncher {
    std::size_t activity_element; // element holding the MAIN/LAUNCHER filter
    std::size_t filter_element;   // the <intent-filter> element itself
    std::string activity_name;    // verbatim android:name
};

struct ManifestInfo {
    std::string package;
    std::vector<ActivityDecl> activities; // document order
    std::optional<MainLauncher> main;
};

// Immutable snapshot of a scanned project tree.
struct SourceModel {
    std::string root;
    std::vector<SourceFile> files; // ordered by relative_path
    std::map<std::string, SyntaxView> java_views;
    std::map<std::string, XmlView> xml_views;
    std::vector<std::string> activity_registry; // declaration order
    std::vector<std::string> id_registry;       // R.id.<name> references, sorted
    std::string manifest_path;
    ManifestInfo manifest;

    const SourceFile* find_file(std::string_view relative_path) const {
        auto it = std::lower_bound(files.begin(), files.end(), relative_path,
                                   [](const SourceFile& f, std::string_view p) {
                                       return f.relative_path < p;
                                   });
        if (it != files.end() && it->relative_path == relative_path) return &*it;
        return nullptr;
    }

    const SyntaxView* java_view(std::string_view path) const {
        auto it = java_views.find(std::string(path));
        return it == java_views.end() ? nullptr : &it->second;
    }

    const XmlView* xml_view(std::string_view path) const {
        auto it = xml_views.find(std::string(path));
        return it == xml_views.end() ? nullptr : &it->second;
    }

    // Fully qualified class name for a manifest activity reference.
    std::string canonical_activity_name(std::string_view declared) const {
        if (declared.empty()) return std::string(declared);
        if (declared.front() == '.') return manifest.package + std::string(declared);
        if (declared.find('.') == std::string_view::npos && !manifest.package.empty())
            return manifest.package + "." + std::string(declared);
        return std::string(declared);
    }

    // The MAIN/LAUNCHER activity's class, fully qualified; empty if none.
    std::string main_activity_class() const {
        if (!manifest.main) return "";
        return canonical_activity_name(manifest.main->activity_name);
    }

    // Stable digest of the whole model, used for determinism checks.
    std::string serialization() const {
        std::string out;
        out += "root=" + root + "\n";
        out += "manifest=" + manifest_path + "\n";
        out += "package=" + manifest.package + "\n";
        for (const auto& f : files) {
            out += f.relative_path;
            out += "\t";
            out += to_string(f.kind);
            out += "\t";
            out += std::to_string(f.content.size());
            out += "\t";
            out += to_hex16(fnv1a64(f.content));
            out += "\n";
        }
        out += "activities=";
        for (const auto& a : activity_registry) out += a + ";";
        out += "\nids=";
        for (const auto& id : id_registry) out += id + ";";
        out += "\n";
        return out;
    }
};

namespace model_detail {

// Exclusion: a path is skipped when any directory segment is a known
// generated/VCS directory, or when it matches a user glob.
inline bool segment_excluded(std::string_view rel) {
    for (auto seg : detail::path_segments(rel))
        if (seg == "build" || seg == "gen" || seg == "bin" || seg == ".git" ||
            seg == ".svn" || seg == ".hg")
            return true;
    return false;
}

// Glob over the relative path: '*' and '?' stay inside one segment,
// '**' crosses segments. A pattern with no '/' matches any single segment.
inline bool glob_match(std::string_view pattern, std::string_view text) {
    // recursive match on bytes; '**' may consume '/' while '*' may not
    if (pattern.empty()) return text.empty();
    if (starts_with(pattern, "**")) {
        std::string_view rest = pattern.substr(2);
        if (!rest.empty() && rest.front() == '/') {
            // "**/" matches zero or more whole segments
            if (glob_match(rest.substr(1), text)) return true;
        }
        if (glob_match(rest, text)) return true;
        if (!text.empty()) return glob_match(pattern, text.substr(1));
        return false;
    }
    char pc = pattern.front();
    if (pc == '*') {
        if (glob_match(pattern.substr(1), text)) return true;
        if (!text.empty() && text.front() != '/')
            return glob_match(pattern, text.substr(1));
        return false;
    }
    if (text.empty()) return false;
    if (pc == '?') return text.front() != '/' && glob_match(pattern.substr(1), text.substr(1));
    return pc == text.front() && glob_match(pattern.substr(1), text.substr(1));
}

inline bool user_excluded(std::string_view rel, const std::vector<std::string>& globs) {
    for (const auto& g : globs) {
        if (g.empty()) continue;
        if (glob_match(g, rel)) return true;
        // a directory pattern excludes everything beneath it
        if (!ends_with(g, "/") && glob_match(g + "/**", rel)) return true;
    }
    return false;
}

inline std::string read_file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoFailure("cannot read file: " + p.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

template <typename Fn>
inline void parallel_for(std::size_t count, Fn&& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 2;
    workers = std::min<unsigned>(workers, 8);
    if (count < 2 || workers < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

inline ManifestInfo read_manifest_info(const XmlView& view) {
    ManifestInfo info;
    if (!view.elements.empty()) {
        const auto* pkg = view.find_attribute(view.elements[0], "package");
        if (pkg) info.package = pkg->value;
    }
    for (std::size_t i = 0; i < view.elements.size(); ++i) {
        const auto& e = view.elements[i];
        bool is_alias = e.tag_name == "activity-alias";
        if (e.tag_name != "activity" && !is_alias) continue;
        const auto* name = view.find_attribute(e, "android:name");
        if (!name) continue;
        info.activities.push_back(ActivityDecl{name->value, i, is_alias});
    }

    // MAIN/LAUNCHER: an intent-filter under an activity (or alias) with both
    // the MAIN action and the LAUNCHER category.
    for (const auto& act : info.activities) {
        for (std::size_t f = 0; f < view.elements.size(); ++f) {
            const auto& filter = view.elements[f];
            if (filter.tag_name != "intent-filter" ||
                filter.parent != static_cast<int>(act.element))
                continue;
            bool has_main = false, has_launcher = false;
            for (int child : view.children_of(static_cast<int>(f))) {
                const auto& c = view.elements[static_cast<std::size_t>(child)];
                const auto* n = view.find_attribute(c, "android:name");
                if (!n) continue;
                if (c.tag_name == "action" && n->value == "android.intent.action.MAIN")
                    has_main = true;
                if (c.tag_name == "category" && n->value == "android.intent.category.LAUNCHER")
                    has_launcher = true;
            }
            if (has_main && has_launcher) {
                info.main = MainLauncher{act.element, f, act.name};
                break;
            }
        }
        if (info.main) break;
    }
    return info;
}

inline void collect_id_references(std::string_view java_bytes, std::set<std::string>& ids) {
    static constexpr std::string_view needle = "R.id.";
    std::size_t pos = 0;
    while ((pos = java_bytes.find(needle, pos)) != std::string_view::npos) {
        std::size_t j = pos + needle.size();
        std::size_t b = j;
        while (j < java_bytes.size()) {
            char c = java_bytes[j];
            if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                c == '_')
                ++j;
            else
                break;
        }
        if (j > b) ids.insert(std::string(java_bytes.substr(b, j - b)));
        pos = j;
    }
}

} // namespace model_detail

// Ingest a project directory into an immutable, classified source model.
// Per-file parse failures become diagnostics and leave the file in the model
// with kind Unclassified; they never abort the scan.
inline SourceModel scan_project(const std::string& root,
                                const std::vector<std::string>& excludes,
                                DiagnosticList& diagnostics) {
    namespace fs = std::filesystem;
    fs::path root_path(root);
    std::error_code ec;
    if (!fs::exists(root_path, ec) || !fs::is_directory(root_path, ec))
        throw NotADirectoryError(root);

    SourceModel model;
    model.root = root;

    std::vector<std::string> rel_paths;
    for (fs::recursive_directory_iterator it(root_path, fs::directory_options::skip_permission_denied), end;
         it != end; ++it) {
        const fs::directory_entry& entry = *it;
        if (entry.is_symlink()) {
            if (entry.is_directory()) it.disable_recursion_pending();
            continue;
        }
        std::string rel = entry.path().lexically_relative(root_path).generic_string();
        if (entry.is_directory()) {
            if (model_detail::segment_excluded(rel + "/") ||
                model_detail::user_excluded(rel, excludes))
                it.disable_recursion_pending();
            continue;
        }
        if (!entry.is_regular_file()) continue;
        if (model_detail::segment_excluded(rel) || model_detail::user_excluded(rel, excludes))
            continue;
        rel_paths.push_back(std::move(rel));
    }
    std::sort(rel_paths.begin(), rel_paths.end());

    // the lexicographically first AndroidManifest.xml is THE manifest
    for (const auto& rel : rel_paths) {
        if (detail::path_segments(rel).back() == "AndroidManifest.xml") {
            model.manifest_path = rel;
            break;
        }
    }
    if (model.manifest_path.empty()) throw NoManifestError(root);

    model.files.resize(rel_paths.size());
    std::vector<std::optional<Diagnostic>> file_errors(rel_paths.size());
    model_detail::parallel_for(rel_paths.size(), [&](std::size_t i) {
        SourceFile f;
        f.relative_path = rel_paths[i];
        try {
            f.content = model_detail::read_file_bytes(root_path / fs::path(rel_paths[i]));
        } catch (const IoFailure& e) {
            file_errors[i] = Diagnostic{rel_paths[i], 0, e.what()};
        }
        f.kind = classify_path(f.relative_path);
        if (f.kind == FileKind::Manifest && f.relative_path != model.manifest_path)
            f.kind = FileKind::OtherResource;
        f.build_line_index();
        model.files[i] = std::move(f);
    });

    // parse views in parallel, collect failures deterministically afterwards
    std::vector<std::optional<SyntaxView>> jviews(model.files.size());
    std::vector<std::optional<XmlView>> xviews(model.files.size());
    std::vector<std::optional<Diagnostic>> parse_errors(model.files.size());
    model_detail::parallel_for(model.files.size(), [&](std::size_t i) {
        SourceFile& f = model.files[i];
        try {
            switch (f.kind) {
                case FileKind::JavaSource:
                    jviews[i] = parse_java(f);
                    break;
                case FileKind::Manifest:
                case FileKind::StringsResource:
                case FileKind::LayoutResource:
                case FileKind::ColorResource:
                    xviews[i] = parse_xml(f);
                    break;
                default:
                    break;
            }
        } catch (const ParseFailure& e) {
            parse_errors[i] = Diagnostic{f.relative_path, e.position(), e.what()};
        }
    });

    std::set<std::string> ids;
    for (std::size_t i = 0; i < model.files.size(); ++i) {
        SourceFile& f = model.files[i];
        if (file_errors[i]) diagnostics.push_back(*file_errors[i]);
        if (parse_errors[i]) {
            diagnostics.push_back(*parse_errors[i]);
            f.kind = FileKind::Unclassified; // parsed views are required per kind
            continue;
        }
        if (jviews[i]) {
            model_detail::collect_id_references(f.content, ids);
            model.java_views.emplace(f.relative_path, std::move(*jviews[i]));
        }
        if (xviews[i]) model.xml_views.emplace(f.relative_path, std::move(*xviews[i]));
    }
    model.id_registry.assign(ids.begin(), ids.end());

    if (const XmlView* mv = model.xml_view(model.manifest_path)) {
        model.manifest = model_detail::read_manifest_info(*mv);
        for (const auto& a : model.manifest.activities)
            model.activity_registry.push_back(a.name);
    }
    return model;
}

} // namespace droidmut

#endif // DROIDMUT_PROJECT_MODEL_HPP
