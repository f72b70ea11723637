#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "droidmut/core.hpp"
#include "droidmut/rng.hpp"
#include "droidmut/unified_diff.hpp"
#include "test_util.hpp"

using namespace droidmut;
using droidmut::contains;
using testutil::TempDir;

namespace {

bool patch_available() {
    return std::system("command -v patch >/dev/null 2>&1") == 0;
}

// apply via the external patch utility and return the patched bytes
std::string external_apply(const std::string& rel, const std::string& old_content,
                           const std::string& diff) {
    TempDir tmp;
    testutil::write_file(tmp.path() / rel, old_content);
    testutil::write_file(tmp.path() / "change.patch", diff);
    std::string cmd = "cd " + tmp.path().string() + " && patch -p1 -s < change.patch";
    REQUIRE(std::system(cmd.c_str()) == 0);
    return testutil::read_file(tmp.path() / rel);
}

} // namespace

TEST_CASE("identical contents produce an empty diff") {
    CHECK(unified_file_diff("a.txt", "same\n", "same\n").empty());
}

TEST_CASE("simple replacement produces an applicable hunk") {
    std::string old_c = "one\ntwo\nthree\nfour\nfive\n";
    std::string new_c = "one\ntwo\nTHREE\nfour\nfive\n";
    std::string diff = unified_file_diff("f.txt", old_c, new_c);
    CHECK(contains(diff, "--- a/f.txt"));
    CHECK(contains(diff, "+++ b/f.txt"));
    CHECK(contains(diff, "-three"));
    CHECK(contains(diff, "+THREE"));
    if (patch_available()) CHECK(external_apply("f.txt", old_c, diff) == new_c);
}

TEST_CASE("missing trailing newline is marked") {
    std::string old_c = "alpha\nbeta";
    std::string new_c = "alpha\ngamma";
    std::string diff = unified_file_diff("f.txt", old_c, new_c);
    CHECK(contains(diff, "\\ No newline at end of file"));
    if (patch_available()) CHECK(external_apply("f.txt", old_c, diff) == new_c);
}

TEST_CASE("insertions and deletions at the edges apply cleanly") {
    if (!patch_available()) {
        WARN("patch utility unavailable; skipping");
        return;
    }
    std::string base = "l1\nl2\nl3\n";
    CHECK(external_apply("f.txt", base, unified_file_diff("f.txt", base, "l0\n" + base)) ==
          "l0\n" + base);
    CHECK(external_apply("f.txt", base, unified_file_diff("f.txt", base, "l2\nl3\n")) ==
          "l2\nl3\n");
    CHECK(external_apply("f.txt", base, unified_file_diff("f.txt", base, base + "l4\n")) ==
          base + "l4\n");
    CHECK(external_apply("f.txt", "", unified_file_diff("f.txt", "", "fresh\n")) == "fresh\n");
}

TEST_CASE("random line edits round-trip through the external patch utility") {
    if (!patch_available()) {
        WARN("patch utility unavailable; skipping");
        return;
    }
    SeededRng rng(771199);
    for (int round = 0; round < 20; ++round) {
        std::size_t n = 4 + rng.below(40);
        std::string old_c;
        std::vector<std::string> lines;
        for (std::size_t i = 0; i < n; ++i)
            lines.push_back("line-" + std::to_string(i) + "-" + std::to_string(rng.below(5)));

        std::vector<std::string> edited = lines;
        std::size_t edits = 1 + rng.below(4);
        for (std::size_t e = 0; e < edits && !edited.empty(); ++e) {
            std::size_t at = rng.below(edited.size());
            switch (rng.below(3)) {
                case 0: edited[at] = "changed-" + std::to_string(rng.below(1000)); break;
                case 1: edited.erase(edited.begin() + static_cast<long>(at)); break;
                default:
                    edited.insert(edited.begin() + static_cast<long>(at),
                                  "inserted-" + std::to_string(rng.below(1000)));
            }
        }
        auto join = [](const std::vector<std::string>& ls) {
            std::string out;
            for (const auto& l : ls) out += l + "\n";
            return out;
        };
        std::string old_text = join(lines);
        std::string new_text = join(edited);
        std::string diff = unified_file_diff("f.txt", old_text, new_text);
        if (old_text == new_text) {
            CHECK(diff.empty());
            continue;
        }
        CHECK(external_apply("f.txt", old_text, diff) == new_text);
    }
}
