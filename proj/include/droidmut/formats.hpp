#ifndef DROIDMUT_FORMATS_HPP
#define DROIDMUT_FORMATS_HPP

#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "droidmut/core.hpp"
#include "droidmut/mutation.hpp"
#include "droidmut/pfp.hpp"
#include "droidmut/project_model.hpp"
#include "droidmut/report.hpp"
#include "droidmut/verify.hpp"

// On-disk document formats. All of them carry format_version and serialize
// byte-deterministically for a fixed input order. Patch bytes are base64:
// source files are arbitrary byte sequences, JSON strings are not.

namespace droidmut {

inline constexpr int format_version = 1;

namespace formats_detail {

inline const char* b64_alphabet() {
    return "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

inline std::string base64_encode(std::string_view bytes) {
    const char* alphabet = b64_alphabet();
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 2 < bytes.size()) {
        unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                     (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                     static_cast<unsigned char>(bytes[i + 2]);
        out += alphabet[(v >> 18) & 63];
        out += alphabet[(v >> 12) & 63];
        out += alphabet[(v >> 6) & 63];
        out += alphabet[v & 63];
        i += 3;
    }
    if (i + 1 == bytes.size()) {
        unsigned v = static_cast<unsigned char>(bytes[i]) << 16;
        out += alphabet[(v >> 18) & 63];
        out += alphabet[(v >> 12) & 63];
        out += "==";
    } else if (i + 2 == bytes.size()) {
        unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                     (static_cast<unsigned char>(bytes[i + 1]) << 8);
        out += alphabet[(v >> 18) & 63];
        out += alphabet[(v >> 12) & 63];
        out += alphabet[(v >> 6) & 63];
        out += "=";
    }
    return out;
}

inline std::string base64_decode(std::string_view text) {
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::string out;
    int acc = 0, bits = 0;
    for (char c : text) {
        if (c == '=') break;
        int v = value_of(c);
        if (v < 0) throw Error("invalid base64 input");
        acc = (acc << 6) | v;
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out += static_cast<char>((acc >> bits) & 0xff);
        }
    }
    return out;
}

} // namespace formats_detail

inline void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoFailure("short write: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// ---- PFP document ----

inline nlohmann::json pfp_to_json(const std::vector<PfpEntry>& entries,
                                  const SourceModel& model) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json aux = nlohmann::json::object();
        for (const auto& [k, v] : e.aux) aux[k] = v;
        const SourceFile* f = model.find_file(e.file);
        auto [line, col] = f ? f->line_col(e.target.start)
                             : std::pair<std::size_t, std::size_t>{0, 0};
        items.push_back({{"operator_id", e.operator_id},
                         {"file", e.file},
                         {"start", e.target.start},
                         {"end", e.target.end},
                         {"line", line},
                         {"col", col},
                         {"aux", aux},
                         {"stable_key", e.stable_key}});
    }
    return nlohmann::json{{"format_version", format_version},
                          {"root", model.root},
                          {"entries", items}};
}

inline std::vector<PfpEntry> pfp_from_json(const nlohmann::json& j) {
    std::vector<PfpEntry> entries;
    for (const auto& item : j.at("entries")) {
        PfpEntry e;
        e.operator_id = item.at("operator_id").get<std::string>();
        e.file = item.at("file").get<std::string>();
        e.target = Span{item.at("start").get<std::size_t>(), item.at("end").get<std::size_t>()};
        for (auto it = item.at("aux").begin(); it != item.at("aux").end(); ++it)
            e.aux[it.key()] = it.value().get<std::string>();
        e.stable_key = item.at("stable_key").get<std::string>();
        entries.push_back(std::move(e));
    }
    return entries;
}

// ---- mutants manifest ----

struct MutantsManifest {
    std::string root;
    std::uint64_t seed = 0;
    std::vector<Mutant> mutants;

    std::vector<ManifestRecord> records() const {
        std::vector<ManifestRecord> out;
        out.reserve(mutants.size());
        for (const auto& m : mutants)
            out.push_back(ManifestRecord{m.mutant_id, m.operator_id});
        return out;
    }
};

inline nlohmann::json manifest_to_json(const MutantsManifest& manifest) {
    using formats_detail::base64_encode;
    nlohmann::json items = nlohmann::json::array();
    for (const auto& m : manifest.mutants) {
        nlohmann::json edits = nlohmann::json::array();
        for (const auto& e : m.patch.edits)
            edits.push_back({{"file", e.file},
                             {"start", e.span.start},
                             {"end", e.span.end},
                             {"original_b64", base64_encode(e.original)},
                             {"replacement_b64", base64_encode(e.replacement)}});
        items.push_back({{"mutant_id", m.mutant_id},
                         {"operator_id", m.operator_id},
                         {"source_entry", m.source_entry},
                         {"summary", m.summary},
                         {"edits", edits}});
    }
    return nlohmann::json{{"format_version", format_version},
                          {"root", manifest.root},
                          {"seed", manifest.seed},
                          {"mutants", items}};
}

inline MutantsManifest manifest_from_json(const nlohmann::json& j) {
    using formats_detail::base64_decode;
    MutantsManifest manifest;
    manifest.root = j.at("root").get<std::string>();
    manifest.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& item : j.at("mutants")) {
        Mutant m;
        m.mutant_id = item.at("mutant_id").get<std::string>();
        m.operator_id = item.at("operator_id").get<std::string>();
        m.source_entry = item.at("source_entry").get<std::string>();
        m.summary = item.at("summary").get<std::string>();
        for (const auto& edit : item.at("edits")) {
            PatchEdit e;
            e.file = edit.at("file").get<std::string>();
            e.span = Span{edit.at("start").get<std::size_t>(), edit.at("end").get<std::size_t>()};
            e.original = base64_decode(edit.at("original_b64").get<std::string>());
            e.replacement = base64_decode(edit.at("replacement_b64").get<std::string>());
            m.patch.edits.push_back(std::move(e));
        }
        manifest.mutants.push_back(std::move(m));
    }
    return manifest;
}

// ---- outcomes document ----

inline nlohmann::json outcomes_to_json(const std::vector<MutantOutcome>& outcomes) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& o : outcomes)
        items.push_back({{"mutant_id", o.mutant_id},
                         {"status", to_string(o.status)},
                         {"evidence", o.evidence},
                         {"wall_time_s", o.wall_time_s}});
    return nlohmann::json{{"format_version", format_version}, {"outcomes", items}};
}

inline std::vector<MutantOutcome> outcomes_from_json(const nlohmann::json& j) {
    std::vector<MutantOutcome> outcomes;
    for (const auto& item : j.at("outcomes")) {
        MutantOutcome o;
        o.mutant_id = item.at("mutant_id").get<std::string>();
        auto status = status_from_string(item.at("status").get<std::string>());
        if (!status) throw Error("unknown status in outcomes document");
        o.status = *status;
        o.evidence = item.at("evidence").get<std::string>();
        o.wall_time_s = item.at("wall_time_s").get<double>();
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

// ---- test results (any_test_failed per mutant) ----

inline std::map<std::string, bool> test_results_from_json(const nlohmann::json& j) {
    std::map<std::string, bool> results;
    const nlohmann::json& entries = j.contains("results") ? j.at("results") : j;
    for (auto it = entries.begin(); it != entries.end(); ++it) {
        if (it.key() == "format_version") continue;
        if (it.value().is_boolean())
            results[it.key()] = it.value().get<bool>();
        else
            results[it.key()] = it.value().at("any_test_failed").get<bool>();
    }
    return results;
}

// ---- catalog export ----

inline nlohmann::json catalog_to_json() {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& op : catalog()) {
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [k, v] : op.params) params[k] = v;
        items.push_back({{"id", op.id},
                         {"category", to_string(op.category)},
                         {"detection", to_string(op.detection)},
                         {"description", op.description},
                         {"params", params}});
    }
    return nlohmann::json{{"format_version", format_version}, {"operators", items}};
}

} // namespace droidmut

#endif // DROIDMUT_FORMATS_HPP
