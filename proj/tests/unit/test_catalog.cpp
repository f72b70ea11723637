#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "droidmut/operator_catalog.hpp"

using namespace droidmut;

TEST_CASE("the catalog holds exactly the 35 implemented operators in order") {
    const auto& ops = catalog();
    REQUIRE(ops.size() == 35);

    static const std::vector<std::string> expected_order = {
        "ActivityNotDefined", "DifferentActivityIntentDefinition", "InvalidActivityName",
        "InvalidKeyIntentPutExtra", "InvalidLabel", "NullIntent", "NullValueIntentPutExtra",
        "WrongMainActivity",
        "MissingPermissionManifest", "NotParcelable", "NullGPSLocation", "SDKVersion",
        "WrongStringResource",
        "NullBackEndServiceReturn",
        "BluetoothAdapterAlwaysEnabled", "NullBluetoothAdapter",
        "InvalidURI",
        "ClosingNullCursor", "InvalidIndexQueryParameter", "InvalidSQLQuery",
        "InvalidDate", "NotSerializable",
        "BuggyGUIListener", "FindViewByIdReturnsNull", "InvalidColor", "InvalidIDFindView",
        "ViewComponentNotVisible",
        "InvalidFilePath", "NullInputStream", "NullOutputStream",
        "LengthyBackEndService", "LengthyGUICreation", "LengthyGUIListener",
        "LongConnectionTimeOut", "OOMLargeImage"};
    std::vector<std::string> actual;
    for (const auto& op : ops) actual.push_back(op.id);
    CHECK(actual == expected_order);
}

TEST_CASE("category counts match the operator table") {
    std::map<std::string, int> counts;
    for (const auto& op : catalog()) ++counts[to_string(op.category)];
    CHECK(counts["A/I"] == 8);
    CHECK(counts["AP"] == 5);
    CHECK(counts["BES"] == 1);
    CHECK(counts["C"] == 2);
    CHECK(counts["D"] == 1);
    CHECK(counts["DB"] == 3);
    CHECK(counts["GP"] == 2);
    CHECK(counts["GUI"] == 5);
    CHECK(counts["I/O"] == 3);
    CHECK(counts["NFR"] == 5);
}

TEST_CASE("detection kinds follow the operator table") {
    std::set<std::string> text_ops;
    for (const auto& op : catalog())
        if (op.detection == DetectionKind::Text) text_ops.insert(op.id);
    CHECK(text_ops == std::set<std::string>{
                          "ActivityNotDefined", "InvalidActivityName", "InvalidColor",
                          "InvalidLabel", "MissingPermissionManifest", "SDKVersion",
                          "WrongMainActivity", "WrongStringResource"});
}

TEST_CASE("specific entries") {
    const OperatorSpec& null_intent = operator_by_id("NullIntent");
    CHECK(null_intent.detection == DetectionKind::AST);
    CHECK(null_intent.category == OperatorCategory::AI);

    const OperatorSpec& and_op = operator_by_id("ActivityNotDefined");
    CHECK(and_op.detection == DetectionKind::Text);
    CHECK(and_op.category == OperatorCategory::AI);
}

TEST_CASE("ids are unique") {
    std::set<std::string> ids;
    for (const auto& op : catalog()) CHECK(ids.insert(op.id).second);
}

TEST_CASE("known-but-unimplemented operators are rejected with a reason") {
    for (const char* id : {"InvalidMethodCallArgument", "NullMethodCallArgument",
                           "InvalidViewFocus"}) {
        try {
            operator_by_id(id);
            FAIL("expected OperatorNotFoundError for " << id);
        } catch (const OperatorNotFoundError& e) {
            CHECK(contains(e.what(), "not implemented"));
        }
    }
    CHECK_THROWS_AS(operator_by_id("Bogus"), OperatorNotFoundError);
}
