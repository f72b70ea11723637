#ifndef DROIDMUT_VERIFY_HPP
#define DROIDMUT_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "droidmut/core.hpp"

namespace droidmut {

inline unsigned default_max_parallel() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return std::min(hw, 20u); // mirrors a 20-device parallel-testing setup
}

// External hook commands. Templates may contain {mutant_dir}, replaced with
// the mutant's clone directory. The compile hook signals failure by exit
// code; the launch hook signals a crash by printing CRASH:<exception> on its
// first output line (launchers often exit 0 even when the app crashed).
struct HookConfig {
    std::string compile_command;
    std::string launch_command; // empty: skip the launch phase
    double compile_timeout_s = 120.0;
    double launch_timeout_s = 120.0;
    unsigned max_parallel = default_max_parallel();
};

enum class MutantStatus { Stillborn, Trivial, Live, Killed, Survived, Skipped };

inline const char* to_string(MutantStatus s) {
    switch (s) {
        case MutantStatus::Stillborn: return "Stillborn";
        case MutantStatus::Trivial: return "Trivial";
        case MutantStatus::Live: return "Live";
        case MutantStatus::Killed: return "Killed";
        case MutantStatus::Survived: return "Survived";
        case MutantStatus::Skipped: return "Skipped";
    }
    return "?";
}

inline std::optional<MutantStatus> status_from_string(std::string_view s) {
    if (s == "Stillborn") return MutantStatus::Stillborn;
    if (s == "Trivial") return MutantStatus::Trivial;
    if (s == "Live") return MutantStatus::Live;
    if (s == "Killed") return MutantStatus::Killed;
    if (s == "Survived") return MutantStatus::Survived;
    if (s == "Skipped") return MutantStatus::Skipped;
    return std::nullopt;
}

struct MutantOutcome {
    std::string mutant_id;
    MutantStatus status = MutantStatus::Skipped;
    std::string evidence;
    double wall_time_s = 0.0;
};

// One materialized mutant to verify.
struct MutantRun {
    std::string mutant_id;
    std::string clone_dir;
};

namespace verify_detail {

struct HookResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string output; // stdout and stderr merged
};

inline std::string substitute(std::string templ, std::string_view key, std::string_view value) {
    std::string needle = "{" + std::string(key) + "}";
    std::size_t pos = 0;
    while ((pos = templ.find(needle, pos)) != std::string::npos) {
        templ.replace(pos, needle.size(), value);
        pos += value.size();
    }
    return templ;
}

// Run `command` under /bin/sh in its own process group, merging stdout and
// stderr, killing the whole group on timeout.
inline HookResult run_command(const std::string& command, double timeout_s) {
    HookResult result;
    int fds[2];
    if (pipe(fds) != 0) throw IoFailure("pipe() failed");

    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        throw IoFailure("fork() failed");
    }
    if (pid == 0) {
        setpgid(0, 0);
        dup2(fds[1], STDOUT_FILENO);
        dup2(fds[1], STDERR_FILENO);
        close(fds[0]);
        close(fds[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(fds[1]);

    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(timeout_s));
    char buf[4096];
    bool open = true;
    while (open) {
        auto now = std::chrono::steady_clock::now();
        long remaining_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
        if (remaining_ms <= 0) {
            result.timed_out = true;
            kill(-pid, SIGKILL);
            kill(pid, SIGKILL);
            break;
        }
        struct pollfd pfd{fds[0], POLLIN, 0};
        int rc = poll(&pfd, 1, static_cast<int>(std::min(remaining_ms, 200L)));
        if (rc > 0) {
            ssize_t n = read(fds[0], buf, sizeof(buf));
            if (n > 0)
                result.output.append(buf, static_cast<std::size_t>(n));
            else
                open = false;
        }
    }
    // drain whatever is left after a kill
    for (;;) {
        ssize_t n = read(fds[0], buf, sizeof(buf));
        if (n <= 0) break;
        result.output.append(buf, static_cast<std::size_t>(n));
    }
    close(fds[0]);

    int status = 0;
    waitpid(pid, &status, 0);
    if (result.timed_out)
        result.exit_code = -1;
    else if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    else
        result.exit_code = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
    return result;
}

inline std::string head_lines(std::string_view text, std::size_t max_lines) {
    std::size_t pos = 0, lines = 0;
    while (pos < text.size() && lines < max_lines) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            pos = text.size();
            break;
        }
        pos = nl + 1;
        ++lines;
    }
    std::string out(text.substr(0, pos));
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    // evidence is embedded in UTF-8 documents; scrub invalid bytes
    for (char& c : out)
        if (static_cast<unsigned char>(c) >= 0x80 ||
            (static_cast<unsigned char>(c) < 0x20 && c != '\n' && c != '\t'))
            c = '?';
    return out;
}

inline std::string first_line(std::string_view text) {
    auto nl = text.find('\n');
    std::string line(nl == std::string_view::npos ? text : text.substr(0, nl));
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return line;
}

} // namespace verify_detail

inline constexpr std::size_t evidence_max_lines = 64;

// Classify one materialized mutant through the compile and launch hooks.
inline MutantOutcome verify_one(const MutantRun& mutant, const HookConfig& hooks) {
    using namespace verify_detail;
    auto started = std::chrono::steady_clock::now();
    MutantOutcome outcome;
    outcome.mutant_id = mutant.mutant_id;

    auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    };

    std::string compile_cmd = substitute(hooks.compile_command, "mutant_dir", mutant.clone_dir);
    HookResult compiled = run_command(compile_cmd, hooks.compile_timeout_s);
    if (compiled.exit_code == 127 || compiled.exit_code == 126)
        throw HookNotExecutable("compile hook failed to execute: " + compile_cmd);
    if (compiled.timed_out) {
        outcome.status = MutantStatus::Stillborn;
        outcome.evidence = "timeout";
        outcome.wall_time_s = elapsed();
        return outcome;
    }
    if (compiled.exit_code != 0) {
        outcome.status = MutantStatus::Stillborn;
        outcome.evidence = head_lines(compiled.output, evidence_max_lines);
        outcome.wall_time_s = elapsed();
        return outcome;
    }

    if (hooks.launch_command.empty()) {
        outcome.status = MutantStatus::Live;
        outcome.wall_time_s = elapsed();
        return outcome;
    }

    std::string launch_cmd = substitute(hooks.launch_command, "mutant_dir", mutant.clone_dir);
    HookResult launched = run_command(launch_cmd, hooks.launch_timeout_s);
    if (launched.exit_code == 127 || launched.exit_code == 126)
        throw HookNotExecutable("launch hook failed to execute: " + launch_cmd);
    outcome.wall_time_s = elapsed();
    if (launched.timed_out) {
        outcome.status = MutantStatus::Trivial;
        outcome.evidence = "timeout";
        return outcome;
    }
    std::string first = verify_detail::first_line(launched.output);
    if (starts_with(first, "CRASH:")) {
        outcome.status = MutantStatus::Trivial;
        outcome.evidence = verify_detail::head_lines(launched.output, evidence_max_lines);
        return outcome;
    }
    if (launched.exit_code != 0) {
        // launcher infrastructure failure, not a verdict about the mutant
        outcome.status = MutantStatus::Skipped;
        outcome.evidence = "launch hook exited " + std::to_string(launched.exit_code) + ": " +
                           verify_detail::head_lines(launched.output, 8);
        return outcome;
    }
    outcome.status = MutantStatus::Live;
    return outcome;
}

// Run both hooks for every mutant with a bounded worker pool. Outcomes come
// back ordered by mutant_id and are independent of scheduling order.
inline std::vector<MutantOutcome> verify(const std::vector<MutantRun>& mutants,
                                         const HookConfig& hooks) {
    if (hooks.max_parallel < 1) throw Error("max_parallel must be >= 1");
    if (hooks.compile_timeout_s <= 0 || hooks.launch_timeout_s <= 0)
        throw Error("hook timeouts must be positive");
    if (hooks.compile_command.empty()) throw HookNotExecutable("compile hook is not set");

    std::vector<MutantOutcome> outcomes(mutants.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> aborted{false};
    std::string abort_message;
    std::mutex abort_mutex;

    auto worker = [&]() {
        for (;;) {
            if (aborted.load()) return;
            std::size_t i = next.fetch_add(1);
            if (i >= mutants.size()) return;
            try {
                outcomes[i] = verify_one(mutants[i], hooks);
            } catch (const HookNotExecutable& e) {
                std::lock_guard<std::mutex> lock(abort_mutex);
                if (!aborted.exchange(true)) abort_message = e.what();
                return;
            }
        }
    };

    unsigned workers = std::min<std::size_t>(hooks.max_parallel, std::max<std::size_t>(mutants.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (aborted.load()) throw HookNotExecutable(abort_message);

    std::sort(outcomes.begin(), outcomes.end(),
              [](const MutantOutcome& a, const MutantOutcome& b) {
                  return a.mutant_id < b.mutant_id;
              });
    return outcomes;
}

// Refine Live outcomes with externally supplied test results.
inline std::vector<MutantOutcome> classify_with_tests(
    std::vector<MutantOutcome> outcomes,
    const std::map<std::string, bool>& any_test_failed) {
    std::map<std::string, MutantOutcome*> live;
    std::map<std::string, bool> known;
    for (auto& o : outcomes) {
        known[o.mutant_id] = true;
        if (o.status == MutantStatus::Live) live[o.mutant_id] = &o;
    }
    for (const auto& [id, failed] : any_test_failed) {
        auto it = live.find(id);
        if (it == live.end()) {
            if (known.count(id))
                throw UnknownMutantId(id + " (not a Live mutant; test results apply only to "
                                           "Live mutants)");
            throw UnknownMutantId(id);
        }
        it->second->status = failed ? MutantStatus::Killed : MutantStatus::Survived;
    }
    return outcomes;
}

} // namespace droidmut

#endif // DROIDMUT_VERIFY_HPP
