#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "droidmut/pfp.hpp"
#include "droidmut/rng.hpp"
#include "test_util.hpp"

using namespace droidmut;
using testutil::TempDir;

namespace {

SourceModel scan_fixture(const char* name, DiagnosticList& diags) {
    return scan_project((testutil::fixtures_root() / name).string(), {}, diags);
}

std::vector<PfpEntry> extract(const SourceModel& model,
                              std::vector<std::string> ops = all_operator_ids(),
                              PfpConfig config = {}) {
    DiagnosticList diags;
    return extract_pfp(model, ops, config, diags);
}

std::multiset<std::string> id_multiset(const std::vector<PfpEntry>& entries) {
    std::multiset<std::string> out;
    for (const auto& e : entries) out.insert(e.operator_id);
    return out;
}

} // namespace

TEST_CASE("omni fixture yields one entry for every operator") {
    DiagnosticList diags;
    SourceModel model = scan_fixture("omni", diags);
    REQUIRE(diags.empty());
    auto entries = extract(model);
    REQUIRE(entries.size() == 35);

    std::multiset<std::string> expected;
    for (const auto& op : catalog()) expected.insert(op.id);
    CHECK(id_multiset(entries) == expected);
}

TEST_CASE("one deletion entry per manifest activity element") {
    TempDir tmp;
    testutil::write_file(tmp.path() / "AndroidManifest.xml",
                         "<manifest package=\"p\"><application>"
                         "<activity android:name=\".One\"></activity>"
                         "<activity android:name=\".Two\"></activity>"
                         "<activity android:name=\".Three\"></activity>"
                         "</application></manifest>");
    DiagnosticList diags;
    SourceModel model = scan_project(tmp.path().string(), {}, diags);
    auto entries = extract(model, {"ActivityNotDefined"});
    CHECK(entries.size() == 3);
}

TEST_CASE("one entry per string resource") {
    TempDir tmp;
    std::string strings = "<resources>";
    for (int i = 0; i < 7; ++i)
        strings += "<string name=\"s" + std::to_string(i) + "\">v" + std::to_string(i) +
                   "</string>";
    strings += "</resources>";
    testutil::write_file(tmp.path() / "AndroidManifest.xml",
                         "<manifest package=\"p\"><application/></manifest>");
    testutil::write_file(tmp.path() / "res" / "values" / "strings.xml", strings);
    DiagnosticList diags;
    SourceModel model = scan_project(tmp.path().string(), {}, diags);
    auto entries = extract(model, {"WrongStringResource"});
    CHECK(entries.size() == 7);
}

TEST_CASE("activity replacement needs at least two declared activities") {
    DiagnosticList diags;
    SourceModel model = scan_fixture("solo", diags);
    auto entries = extract(model, {"DifferentActivityIntentDefinition", "WrongMainActivity"});
    CHECK(entries.empty());
}

TEST_CASE("extraction is deterministic including stable keys") {
    DiagnosticList diags;
    SourceModel model = scan_fixture("omni", diags);
    auto a = extract(model);
    auto b = extract(model);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].stable_key == b[i].stable_key);
        CHECK(a[i].operator_id == b[i].operator_id);
        CHECK(a[i].target == b[i].target);
        CHECK(a[i].aux == b[i].aux);
    }
    std::set<std::string> keys;
    for (const auto& e : a) CHECK(keys.insert(e.stable_key).second);
}

TEST_CASE("extraction over a union equals the merge of the parts") {
    DiagnosticList diags;
    SourceModel model = scan_fixture("omni", diags);
    auto all_ids = all_operator_ids();
    SeededRng rng(20240817);

    for (int round = 0; round < 12; ++round) {
        std::vector<std::string> part_a, part_b;
        for (const auto& id : all_ids)
            (rng.below(2) == 0 ? part_a : part_b).push_back(id);

        auto merged = extract(model, part_a);
        auto more = extract(model, part_b);
        merged.insert(merged.end(), more.begin(), more.end());
        std::sort(merged.begin(), merged.end(), [](const PfpEntry& x, const PfpEntry& y) {
            if (x.file != y.file) return x.file < y.file;
            if (x.target.start != y.target.start) return x.target.start < y.target.start;
            return x.operator_id < y.operator_id;
        });

        auto whole = extract(model, all_ids);
        REQUIRE(merged.size() == whole.size());
        for (std::size_t i = 0; i < whole.size(); ++i)
            CHECK(merged[i].stable_key == whole[i].stable_key);
    }
}

TEST_CASE("entries are ordered by file, offset, operator") {
    DiagnosticList diags;
    SourceModel model = scan_fixture("omni", diags);
    auto entries = extract(model);
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const auto& p = entries[i - 1];
        const auto& q = entries[i];
        bool ordered = p.file < q.file ||
                       (p.file == q.file && p.target.start < q.target.start) ||
                       (p.file == q.file && p.target.start == q.target.start &&
                        p.operator_id < q.operator_id);
        CHECK(ordered);
    }
}

TEST_CASE("detections never target comments or plain string contents") {
    TempDir tmp;
    testutil::write_file(tmp.path() / "AndroidManifest.xml",
                         "<manifest package=\"p\"><application/></manifest>");
    testutil::write_file(tmp.path() / "src" / "Trap.java",
                         "class Trap {\n"
                         "    // Cursor c = db.rawQuery(\"SELECT 1\", null); c.close();\n"
                         "    /* new Intent(this, Foo.class); adapter.isEnabled(); */\n"
                         "    String decoy = \"new Date() rawQuery( close( putExtra(\";\n"
                         "}\n");
    DiagnosticList diags;
    SourceModel model = scan_project(tmp.path().string(), {}, diags);
    REQUIRE(diags.empty());
    auto entries = extract(model);
    CHECK(entries.empty());
}

TEST_CASE("final cursors are suppressed at detection time") {
    TempDir tmp;
    testutil::write_file(tmp.path() / "AndroidManifest.xml",
                         "<manifest package=\"p\"><application/></manifest>");
    testutil::write_file(tmp.path() / "src" / "Db.java",
                         "class Db { void m(Holder h) {\n"
                         "    final Cursor fixed = h.cursor();\n"
                         "    fixed.close();\n"
                         "} }\n");
    DiagnosticList diags;
    SourceModel model = scan_project(tmp.path().string(), {}, diags);
    CHECK(extract(model, {"ClosingNullCursor"}).empty());

    testutil::write_file(tmp.path() / "src" / "Db.java",
                         "class Db { void m(Holder h) {\n"
                         "    Cursor open = h.cursor();\n"
                         "    open.close();\n"
                         "} }\n");
    DiagnosticList diags2;
    SourceModel model2 = scan_project(tmp.path().string(), {}, diags2);
    auto entries = extract(model2, {"ClosingNullCursor"});
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].aux.at("var") == "open");
}

TEST_CASE("main-activity exclusion suppresses A/I and GUI code entries") {
    DiagnosticList diags;
    SourceModel model = scan_fixture("omni", diags);

    PfpConfig excl;
    excl.exclude_main_activity = true;
    auto entries = extract(model, all_operator_ids(), excl);

    std::set<std::string> ids;
    for (const auto& e : entries) ids.insert(e.operator_id);
    // code-level A/I and GUI detections live in MainActivity and disappear
    for (const char* gone :
         {"NullIntent", "DifferentActivityIntentDefinition", "InvalidKeyIntentPutExtra",
          "NullValueIntentPutExtra", "FindViewByIdReturnsNull", "ViewComponentNotVisible",
          "InvalidIDFindView"})
        CHECK(ids.count(gone) == 0);
    // manifest text operators and non-A/I, non-GUI code operators survive
    for (const char* kept : {"ActivityNotDefined", "WrongMainActivity", "InvalidColor",
                             "LengthyGUICreation", "ClosingNullCursor"})
        CHECK(ids.count(kept) == 1);
    CHECK(entries.size() == 28);
}

TEST_CASE("unknown operators are rejected") {
    DiagnosticList diags;
    SourceModel model = scan_fixture("mini", diags);
    DiagnosticList d2;
    CHECK_THROWS_AS(extract_pfp(model, {"NullIntent", "Bogus"}, {}, d2),
                    UnknownOperatorError);
    CHECK_THROWS_AS(extract_pfp(model, {"InvalidViewFocus"}, {}, d2), UnknownOperatorError);
}

TEST_CASE("aux metadata carries what the transformations need") {
    DiagnosticList diags;
    SourceModel model = scan_fixture("omni", diags);
    auto entries = extract(model);
    std::map<std::string, const PfpEntry*> by_op;
    for (const auto& e : entries) by_op[e.operator_id] = &e;

    CHECK(by_op.at("InvalidIDFindView")->aux.at("replacement") == "label2");
    CHECK(by_op.at("DifferentActivityIntentDefinition")->aux.at("replacement") ==
          "com.omni.fixture.MainActivity.class");
    CHECK(by_op.at("WrongMainActivity")->aux.at("to") == "com.omni.fixture.SecondActivity");
    CHECK(by_op.at("ClosingNullCursor")->aux.at("var") == "recent");
    CHECK(by_op.at("NullBackEndServiceReturn")->aux.at("var") == "reply");
    CHECK(by_op.at("BuggyGUIListener")->aux.at("return") == "void");
    CHECK(by_op.at("NullGPSLocation")->aux.at("param") == "location");
}
