#ifndef DROIDMUT_CONFIG_HPP
#define DROIDMUT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "droidmut/core.hpp"
#include "droidmut/formats.hpp"
#include "droidmut/verify.hpp"

namespace droidmut {

// One config file drives the whole pipeline; every field can be overridden
// by a CLI flag.
struct RunConfig {
    std::uint64_t seed = 0;
    std::vector<std::string> operators;         // empty: all implemented operators
    std::vector<std::string> exclude_operators;
    std::vector<std::string> excludes;          // extra glob patterns
    std::string out_dir = "droidmut-out";
    bool exclude_main_activity = false;
    std::string mode = "clone"; // clone | patch
    HookConfig hooks;
};

inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("operators"))
        c.operators = j.at("operators").get<std::vector<std::string>>();
    if (j.contains("exclude_operators"))
        c.exclude_operators = j.at("exclude_operators").get<std::vector<std::string>>();
    if (j.contains("excludes")) c.excludes = j.at("excludes").get<std::vector<std::string>>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("exclude_main_activity"))
        c.exclude_main_activity = j.at("exclude_main_activity").get<bool>();
    if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
    if (j.contains("hooks")) {
        const auto& h = j.at("hooks");
        if (h.contains("compile_command"))
            c.hooks.compile_command = h.at("compile_command").get<std::string>();
        if (h.contains("launch_command"))
            c.hooks.launch_command = h.at("launch_command").get<std::string>();
        if (h.contains("compile_timeout_s"))
            c.hooks.compile_timeout_s = h.at("compile_timeout_s").get<double>();
        if (h.contains("launch_timeout_s"))
            c.hooks.launch_timeout_s = h.at("launch_timeout_s").get<double>();
        if (h.contains("max_parallel"))
            c.hooks.max_parallel = h.at("max_parallel").get<unsigned>();
    }
    return c;
}

inline RunConfig load_config(const std::string& path) {
    return config_from_json(nlohmann::json::parse(read_text_file(path)));
}

// Operator selection: configured include list (or the full catalog), minus
// the exclusions. Unknown ids surface as UnknownOperatorError downstream.
inline std::vector<std::string> selected_operators(const RunConfig& c) {
    std::vector<std::string> ids = c.operators.empty() ? all_operator_ids() : c.operators;
    if (c.exclude_operators.empty()) return ids;
    std::vector<std::string> out;
    for (const auto& id : ids) {
        bool excluded = false;
        for (const auto& ex : c.exclude_operators)
            if (ex == id) excluded = true;
        if (!excluded) out.push_back(id);
    }
    return out;
}

} // namespace droidmut

#endif // DROIDMUT_CONFIG_HPP
