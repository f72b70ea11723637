#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "droidmut/verify.hpp"
#include "test_util.hpp"

using namespace droidmut;
using testutil::TempDir;

namespace {

// Writes an executable hook script and returns the command template.
std::string make_hook(const TempDir& tmp, const char* name, const std::string& body) {
    auto path = tmp.path() / name;
    testutil::write_file(path, "#!/bin/sh\n" + body);
    std::filesystem::permissions(path, std::filesystem::perms::owner_all |
                                           std::filesystem::perms::group_read |
                                           std::filesystem::perms::others_read);
    return path.string() + " {mutant_dir}";
}

std::vector<MutantRun> fake_mutants(const TempDir& tmp, std::vector<std::string> ids) {
    std::vector<MutantRun> runs;
    for (const auto& id : ids) {
        auto dir = tmp.path() / "mutants" / id;
        std::filesystem::create_directories(dir);
        runs.push_back(MutantRun{id, dir.string()});
    }
    return runs;
}

const MutantOutcome& outcome_of(const std::vector<MutantOutcome>& outcomes,
                                std::string_view id) {
    for (const auto& o : outcomes)
        if (o.mutant_id == id) return o;
    FAIL("no outcome for " << id);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("compile failures become stillborn with evidence") {
    TempDir tmp;
    HookConfig hooks;
    hooks.compile_command = make_hook(
        tmp, "compile.sh",
        "case \"$1\" in *Broken*) echo 'Main.java:3: error: unreachable code'; exit 1;; esac\n"
        "exit 0\n");
    hooks.launch_command.clear();

    auto outcomes = verify(fake_mutants(tmp, {"Broken-1", "Fine-1"}), hooks);
    REQUIRE(outcomes.size() == 2);
    CHECK(outcome_of(outcomes, "Broken-1").status == MutantStatus::Stillborn);
    CHECK(contains(outcome_of(outcomes, "Broken-1").evidence, "unreachable code"));
    CHECK(outcome_of(outcomes, "Fine-1").status == MutantStatus::Live);
}

TEST_CASE("launch crashes become trivial with the exception recorded") {
    TempDir tmp;
    HookConfig hooks;
    hooks.compile_command = make_hook(tmp, "compile.sh", "exit 0\n");
    hooks.launch_command = make_hook(
        tmp, "launch.sh",
        "case \"$1\" in *Crashy*) echo 'CRASH:java.lang.NullPointerException'; exit 0;; esac\n"
        "exit 0\n");

    auto outcomes = verify(fake_mutants(tmp, {"Crashy-1", "Calm-1"}), hooks);
    CHECK(outcome_of(outcomes, "Crashy-1").status == MutantStatus::Trivial);
    CHECK(contains(outcome_of(outcomes, "Crashy-1").evidence,
                   "java.lang.NullPointerException"));
    CHECK(outcome_of(outcomes, "Calm-1").status == MutantStatus::Live);
}

TEST_CASE("hook timeouts classify by phase") {
    TempDir tmp;
    HookConfig hooks;
    hooks.compile_timeout_s = 0.3;
    hooks.launch_timeout_s = 0.3;
    hooks.compile_command = make_hook(
        tmp, "compile.sh", "case \"$1\" in *SlowC*) sleep 3;; esac\nexit 0\n");
    hooks.launch_command = make_hook(
        tmp, "launch.sh", "case \"$1\" in *SlowL*) sleep 3;; esac\nexit 0\n");

    auto outcomes = verify(fake_mutants(tmp, {"SlowC-1", "SlowL-1", "Quick-1"}), hooks);
    CHECK(outcome_of(outcomes, "SlowC-1").status == MutantStatus::Stillborn);
    CHECK(outcome_of(outcomes, "SlowC-1").evidence == "timeout");
    CHECK(outcome_of(outcomes, "SlowL-1").status == MutantStatus::Trivial);
    CHECK(outcome_of(outcomes, "SlowL-1").evidence == "timeout");
    CHECK(outcome_of(outcomes, "Quick-1").status == MutantStatus::Live);
}

TEST_CASE("outcomes are ordered and independent of parallelism") {
    TempDir tmp;
    HookConfig hooks;
    hooks.compile_command = make_hook(
        tmp, "compile.sh", "case \"$1\" in *-3|*-7) exit 1;; esac\nexit 0\n");
    hooks.launch_command = make_hook(
        tmp, "launch.sh", "case \"$1\" in *-5) echo CRASH:x;; esac\nexit 0\n");

    std::vector<std::string> ids;
    for (int i = 1; i <= 9; ++i) ids.push_back("M-" + std::to_string(i));

    hooks.max_parallel = 1;
    auto serial = verify(fake_mutants(tmp, ids), hooks);
    hooks.max_parallel = 4;
    auto parallel = verify(fake_mutants(tmp, ids), hooks);

    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].mutant_id == parallel[i].mutant_id);
        CHECK(serial[i].status == parallel[i].status);
        if (i > 0) CHECK(serial[i - 1].mutant_id < serial[i].mutant_id);
    }
}

TEST_CASE("a launch hook that fails without a crash marker skips the mutant") {
    TempDir tmp;
    HookConfig hooks;
    hooks.compile_command = make_hook(tmp, "compile.sh", "exit 0\n");
    hooks.launch_command = make_hook(tmp, "launch.sh", "echo device offline; exit 3\n");
    auto outcomes = verify(fake_mutants(tmp, {"M-1"}), hooks);
    CHECK(outcomes[0].status == MutantStatus::Skipped);
    CHECK(contains(outcomes[0].evidence, "device offline"));
}

TEST_CASE("unexecutable hooks abort the run") {
    TempDir tmp;
    HookConfig hooks;
    hooks.compile_command = "/nonexistent/compiler {mutant_dir}";
    CHECK_THROWS_AS(verify(fake_mutants(tmp, {"M-1"}), hooks), HookNotExecutable);
    HookConfig empty;
    empty.compile_command.clear();
    CHECK_THROWS_AS(verify(fake_mutants(tmp, {"M-1"}), empty), HookNotExecutable);
}

TEST_CASE("invalid hook configuration is rejected") {
    TempDir tmp;
    HookConfig hooks;
    hooks.compile_command = "true";
    hooks.max_parallel = 0;
    CHECK_THROWS_AS(verify(fake_mutants(tmp, {"M-1"}), hooks), Error);
    hooks.max_parallel = 1;
    hooks.compile_timeout_s = 0;
    CHECK_THROWS_AS(verify(fake_mutants(tmp, {"M-1"}), hooks), Error);
}

TEST_CASE("test results refine live mutants into killed and survived") {
    std::vector<MutantOutcome> outcomes = {
        {"A-1", MutantStatus::Live, "", 0.1},
        {"A-2", MutantStatus::Live, "", 0.1},
        {"A-3", MutantStatus::Stillborn, "err", 0.1},
    };
    auto updated = classify_with_tests(outcomes, {{"A-1", true}, {"A-2", false}});
    CHECK(outcome_of(updated, "A-1").status == MutantStatus::Killed);
    CHECK(outcome_of(updated, "A-2").status == MutantStatus::Survived);
    CHECK(outcome_of(updated, "A-3").status == MutantStatus::Stillborn);

    CHECK_THROWS_AS(classify_with_tests(outcomes, {{"A-3", true}}), UnknownMutantId);
    CHECK_THROWS_AS(classify_with_tests(outcomes, {{"Nope-1", true}}), UnknownMutantId);
}

TEST_CASE("evidence is capped at 64 lines") {
    TempDir tmp;
    HookConfig hooks;
    hooks.compile_command = make_hook(
        tmp, "compile.sh", "i=0; while [ $i -lt 200 ]; do echo line$i; i=$((i+1)); done\nexit 1\n");
    hooks.launch_command.clear();
    auto outcomes = verify(fake_mutants(tmp, {"M-1"}), hooks);
    REQUIRE(outcomes[0].status == MutantStatus::Stillborn);
    std::size_t lines = 1;
    for (char c : outcomes[0].evidence)
        if (c == '\n') ++lines;
    CHECK(lines <= 64);
    CHECK(contains(outcomes[0].evidence, "line0"));
    CHECK(contains(outcomes[0].evidence, "line63"));
    CHECK(!contains(outcomes[0].evidence, "line64"));
}
