// droidmut: mutation-analysis toolkit for Android app source trees.
//
//   droidmut profile  — extract the potential-failure profile of a project
//   droidmut mutate   — generate mutants (clones or patch files)
//   droidmut verify   — classify mutants through compile/launch hooks
//   droidmut report   — aggregate outcomes into per-operator tables
//   droidmut catalog  — export the operator catalog
//
// Exit code 0 on success, 2 on any diagnostic-level failure.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "droidmut/droidmut.hpp"

namespace {

using namespace droidmut;

int report_diagnostics(const DiagnosticList& diagnostics) {
    for (const auto& d : diagnostics)
        std::cerr << "diagnostic: " << d.file << ":" << d.position << ": " << d.message
                  << "\n";
    return diagnostics.empty() ? 0 : 2;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_text_file(out_path, content);
}

struct CommonOpts {
    std::string config_path;
    std::string root = ".";
    std::vector<std::string> operators;
    std::vector<std::string> exclude_operators;
    std::vector<std::string> excludes;
    bool exclude_main_activity = false;

    void attach(CLI::App* cmd, bool with_root = true) {
        cmd->add_option("--config", config_path, "JSON config file");
        if (with_root) cmd->add_option("root", root, "project root directory");
        cmd->add_option("--operators", operators, "operator ids to enable")
            ->delimiter(',');
        cmd->add_option("--exclude-operators", exclude_operators,
                        "operator ids to disable")
            ->delimiter(',');
        cmd->add_option("--exclude", excludes, "glob patterns to skip while scanning");
        cmd->add_flag("--exclude-main-activity", exclude_main_activity,
                      "suppress A/I and GUI mutations in the MAIN/LAUNCHER activity");
    }

    RunConfig merge_into_config() const {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!operators.empty()) cfg.operators = operators;
        if (!exclude_operators.empty()) cfg.exclude_operators = exclude_operators;
        for (const auto& g : excludes) cfg.excludes.push_back(g);
        if (exclude_main_activity) cfg.exclude_main_activity = true;
        return cfg;
    }
};

int run_profile(const CommonOpts& common, const std::string& out_path) {
    RunConfig cfg = common.merge_into_config();
    DiagnosticList diagnostics;
    SourceModel model = scan_project(common.root, cfg.excludes, diagnostics);
    PfpConfig pfp_cfg{cfg.exclude_main_activity};
    auto entries = extract_pfp(model, selected_operators(cfg), pfp_cfg, diagnostics);
    emit(pfp_to_json(entries, model).dump(2) + "\n", out_path);
    return report_diagnostics(diagnostics);
}

int run_mutate(const CommonOpts& common, std::uint64_t seed, bool seed_given,
               const std::string& mode, const std::string& out_dir) {
    RunConfig cfg = common.merge_into_config();
    if (seed_given) cfg.seed = seed;
    if (!mode.empty()) cfg.mode = mode;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.mode != "clone" && cfg.mode != "patch")
        throw Error("mode must be 'clone' or 'patch'");

    DiagnosticList diagnostics;
    SourceModel model = scan_project(common.root, cfg.excludes, diagnostics);
    PfpConfig pfp_cfg{cfg.exclude_main_activity};
    auto entries = extract_pfp(model, selected_operators(cfg), pfp_cfg, diagnostics);
    auto mutants = plan_mutants(entries, model, cfg.seed, diagnostics);

    MutantsManifest manifest;
    manifest.root = model.root;
    manifest.seed = cfg.seed;
    manifest.mutants = mutants;

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoFailure("cannot create " + cfg.out_dir + ": " + ec.message());
    write_text_file((fs::path(cfg.out_dir) / "mutants_manifest.json").string(),
                    manifest_to_json(manifest).dump(2) + "\n");

    for (const auto& m : mutants) {
        if (cfg.mode == "clone")
            materialize_clone(m, model,
                              (fs::path(cfg.out_dir) / "mutants" / m.mutant_id).string());
        else
            materialize_patch_file(m, model, (fs::path(cfg.out_dir) / "patches").string());
    }
    std::cout << "generated " << mutants.size() << " mutants from " << entries.size()
              << " PFP entries into " << cfg.out_dir << "\n";
    return report_diagnostics(diagnostics);
}

int run_verify(const std::string& manifest_path, const std::string& mutants_dir,
               HookConfig hooks, const std::string& out_path,
               const std::string& test_results_path) {
    MutantsManifest manifest =
        manifest_from_json(nlohmann::json::parse(read_text_file(manifest_path)));
    namespace fs = std::filesystem;
    std::vector<MutantRun> runs;
    for (const auto& m : manifest.mutants)
        runs.push_back(MutantRun{
            m.mutant_id, (fs::path(mutants_dir) / m.mutant_id).generic_string()});
    auto outcomes = verify(runs, hooks);
    if (!test_results_path.empty()) {
        auto results =
            test_results_from_json(nlohmann::json::parse(read_text_file(test_results_path)));
        outcomes = classify_with_tests(std::move(outcomes), results);
    }
    emit(outcomes_to_json(outcomes).dump(2) + "\n", out_path);
    return 0;
}

ReportFormat parse_format(const std::string& name) {
    if (name == "plain" || name == "table") return ReportFormat::Plain;
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    throw Error("unknown report format: " + name);
}

int run_report(const std::vector<std::string>& manifest_paths,
               const std::vector<std::string>& outcome_paths,
               const std::vector<std::string>& names, const std::string& format_name,
               const std::string& out_path) {
    if (manifest_paths.size() != outcome_paths.size() || manifest_paths.empty())
        throw Error("need one --outcomes per --manifest");
    ReportFormat format = parse_format(format_name);

    std::vector<AppReport> apps;
    for (std::size_t i = 0; i < manifest_paths.size(); ++i) {
        MutantsManifest manifest =
            manifest_from_json(nlohmann::json::parse(read_text_file(manifest_paths[i])));
        auto outcomes =
            outcomes_from_json(nlohmann::json::parse(read_text_file(outcome_paths[i])));
        std::string name = i < names.size() ? names[i] : "app" + std::to_string(i + 1);
        apps.push_back(AppReport{name, build_report(outcomes, manifest.records())});
    }

    if (apps.size() == 1) {
        emit(render(apps[0].report, format), out_path);
        return 0;
    }

    if (format == ReportFormat::Csv)
        throw Error("csv format reports one app at a time");
    CorpusSummary summary = summarize_corpus(apps);
    if (format == ReportFormat::Json) {
        nlohmann::json japps = nlohmann::json::array();
        for (const auto& a : apps)
            japps.push_back({{"app", a.app}, {"report", report_to_json(a.report)}});
        nlohmann::json j = {{"format_version", format_version}, {"apps", japps}};
        if (summary.mean_sm_rate) j["summary"]["mean_sm_rate"] = *summary.mean_sm_rate;
        if (summary.mean_tm_rate) j["summary"]["mean_tm_rate"] = *summary.mean_tm_rate;
        j["summary"]["apps"] = summary.app_count;
        emit(j.dump(2) + "\n", out_path);
        return 0;
    }
    std::string out;
    for (const auto& a : apps) {
        out += "== " + a.app + " ==\n";
        out += render(a.report, ReportFormat::Plain);
        out += "\n";
    }
    out += "== corpus summary (" + std::to_string(summary.app_count) + " apps) ==\n";
    if (summary.mean_sm_rate)
        out += "mean stillborn rate: " + report_detail::format_rate(*summary.mean_sm_rate) + "\n";
    if (summary.mean_tm_rate)
        out += "mean trivial rate:   " + report_detail::format_rate(*summary.mean_tm_rate) + "\n";
    emit(out, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mutation-analysis toolkit for Android app source trees"};
    app.require_subcommand(1);

    // profile
    auto* profile = app.add_subcommand("profile", "extract the potential-failure profile");
    CommonOpts profile_opts;
    profile_opts.attach(profile);
    std::string profile_out;
    profile->add_option("-o,--out", profile_out, "output file (default: stdout)");

    // mutate
    auto* mutate = app.add_subcommand("mutate", "generate mutants");
    CommonOpts mutate_opts;
    mutate_opts.attach(mutate);
    std::uint64_t seed = 0;
    std::string mode;
    std::string out_dir;
    auto* seed_opt = mutate->add_option("--seed", seed, "run seed (64-bit)");
    mutate->add_option("--mode", mode, "clone | patch");
    mutate->add_option("--out-dir", out_dir, "output directory");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "classify mutants via hooks");
    std::string manifest_path, mutants_dir, outcomes_out, test_results_path;
    std::string verify_config;
    HookConfig hooks;
    verify_cmd->add_option("--config", verify_config, "JSON config file");
    verify_cmd->add_option("--manifest", manifest_path, "mutants manifest")->required();
    verify_cmd->add_option("--mutants-dir", mutants_dir, "directory of mutant clones")
        ->required();
    auto* ch = verify_cmd->add_option("--compile-hook", hooks.compile_command,
                                      "compile command template ({mutant_dir})");
    auto* lh = verify_cmd->add_option("--launch-hook", hooks.launch_command,
                                      "launch command template ({mutant_dir})");
    auto* ct = verify_cmd->add_option("--compile-timeout", hooks.compile_timeout_s,
                                      "compile hook timeout in seconds");
    auto* lt = verify_cmd->add_option("--launch-timeout", hooks.launch_timeout_s,
                                      "launch hook timeout in seconds");
    unsigned max_parallel = 0;
    auto* mp = verify_cmd->add_option("--max-parallel", max_parallel, "worker pool size");
    verify_cmd->add_option("-o,--out", outcomes_out, "outcomes file (default: stdout)");
    verify_cmd->add_option("--test-results", test_results_path,
                           "test results JSON to mark killed/survived");

    // report
    auto* report_cmd = app.add_subcommand("report", "aggregate outcomes");
    std::vector<std::string> report_manifests, report_outcomes, report_names;
    std::string report_format = "plain", report_out;
    report_cmd->add_option("--manifest", report_manifests, "mutants manifest (repeatable)")
        ->required();
    report_cmd->add_option("--outcomes", report_outcomes, "outcomes document (repeatable)")
        ->required();
    report_cmd->add_option("--name", report_names, "app label (repeatable)");
    report_cmd->add_option("--format", report_format, "plain | json | csv");
    report_cmd->add_option("-o,--out", report_out, "output file (default: stdout)");

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "export the operator catalog");
    std::string catalog_out;
    catalog_cmd->add_option("-o,--out", catalog_out, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*profile) return run_profile(profile_opts, profile_out);
        if (*mutate)
            return run_mutate(mutate_opts, seed, seed_opt->count() > 0, mode, out_dir);
        if (*verify_cmd) {
            if (!verify_config.empty()) {
                RunConfig cfg = load_config(verify_config);
                HookConfig merged = cfg.hooks;
                if (ch->count()) merged.compile_command = hooks.compile_command;
                if (lh->count()) merged.launch_command = hooks.launch_command;
                if (ct->count()) merged.compile_timeout_s = hooks.compile_timeout_s;
                if (lt->count()) merged.launch_timeout_s = hooks.launch_timeout_s;
                if (mp->count()) merged.max_parallel = max_parallel;
                hooks = merged;
            } else if (mp->count()) {
                hooks.max_parallel = max_parallel;
            }
            return run_verify(manifest_path, mutants_dir, hooks, outcomes_out,
                              test_results_path);
        }
        if (*report_cmd)
            return run_report(report_manifests, report_outcomes, report_names,
                              report_format, report_out);
        if (*catalog_cmd) {
            emit(catalog_to_json().dump(2) + "\n", catalog_out);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
