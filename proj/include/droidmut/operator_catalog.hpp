#ifndef DROIDMUT_OPERATOR_CATALOG_HPP
#define DROIDMUT_OPERATOR_CATALOG_HPP

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "droidmut/core.hpp"

namespace droidmut {

enum class OperatorCategory { AI, AP, BES, C, D, DB, GP, GUI, IO, NFR };
enum class DetectionKind { AST, Text };

inline const char* to_string(OperatorCategory c) {
    switch (c) {
        case OperatorCategory::AI: return "A/I";
        case OperatorCategory::AP: return "AP";
        case OperatorCategory::BES: return "BES";
        case OperatorCategory::C: return "C";
        case OperatorCategory::D: return "D";
        case OperatorCategory::DB: return "DB";
        case OperatorCategory::GP: return "GP";
        case OperatorCategory::GUI: return "GUI";
        case OperatorCategory::IO: return "I/O";
        case OperatorCategory::NFR: return "NFR";
    }
    return "?";
}

inline const char* to_string(DetectionKind d) {
    return d == DetectionKind::AST ? "AST" : "Text";
}

// Transformation constants shared by detection and mutation. Every value a
// detector or transformer needs beyond the source location lives here, so
// the exported catalog stays in sync with the code by construction.
namespace op_params {

inline constexpr std::string_view mutation_suffix = "_mutant";
inline constexpr std::size_t random_label_length = 8;
inline constexpr int sdk_version_min = 1;
inline constexpr int sdk_version_max = 35;
inline constexpr std::string_view null_put_extra_value = "new android.os.Parcelable[0]";
inline constexpr std::string_view invalid_path_prefix = "/invalid_path/";
inline constexpr int sleep_millis = 5000;
inline constexpr std::string_view sleep_statement =
    "try { Thread.sleep(5000); } catch (InterruptedException e) { }";
inline constexpr long timeout_multiplier = 100;
inline constexpr long timeout_fallback = 1000000;
inline constexpr int large_bitmap_dimension = 10000;
inline constexpr std::string_view gone_call_suffix =
    ".setVisibility(android.view.View.GONE);";

inline const std::vector<std::string>& gui_listener_methods() {
    static const std::vector<std::string> v = {"onClick", "onLongClick", "onItemClick",
                                               "onTouch", "onKey"};
    return v;
}

inline const std::vector<std::string>& backend_call_methods() {
    static const std::vector<std::string> v = {"execute", "openConnection", "getInputStream",
                                               "getResponse", "send"};
    return v;
}

inline const std::vector<std::string>& backend_receiver_markers() {
    static const std::vector<std::string> v = {"Http", "Url", "URL", "Client"};
    return v;
}

inline const std::vector<std::string>& file_open_constructors() {
    static const std::vector<std::string> v = {"File",       "FileInputStream",
                                               "FileOutputStream", "FileReader",
                                               "FileWriter", "RandomAccessFile"};
    return v;
}

inline const std::vector<std::string>& file_open_calls() {
    static const std::vector<std::string> v = {"openFileInput", "openFileOutput"};
    return v;
}

inline const std::vector<std::string>& sql_call_methods() {
    static const std::vector<std::string> v = {"rawQuery", "execSQL"};
    return v;
}

inline const std::vector<std::string>& sdk_version_attributes() {
    static const std::vector<std::string> v = {"android:minSdkVersion",
                                               "android:targetSdkVersion",
                                               "android:maxSdkVersion"};
    return v;
}

inline const std::vector<std::string>& bitmap_factory_methods() {
    static const std::vector<std::string> v = {"createBitmap", "createScaledBitmap"};
    return v;
}

inline std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ",";
        out += s;
    }
    return out;
}

} // namespace op_params

struct OperatorSpec {
    std::string id;
    OperatorCategory category;
    DetectionKind detection;
    std::string description;
    std::map<std::string, std::string> params;
};

namespace catalog_detail {

inline std::vector<OperatorSpec> build_catalog() {
    namespace p = op_params;
    std::vector<OperatorSpec> ops;
    auto add = [&](std::string id, OperatorCategory cat, DetectionKind det,
                   std::string description,
                   std::map<std::string, std::string> params = {}) {
        ops.push_back(OperatorSpec{std::move(id), cat, det, std::move(description),
                                   std::move(params)});
    };

    // Activities and Intents
    add("ActivityNotDefined", OperatorCategory::AI, DetectionKind::Text,
        "Deletes one <activity> element from the manifest");
    add("DifferentActivityIntentDefinition", OperatorCategory::AI, DetectionKind::AST,
        "Replaces the Activity.class argument of an Intent instantiation with another "
        "declared activity",
        {{"requires_activities", "2"}});
    add("InvalidActivityName", OperatorCategory::AI, DetectionKind::Text,
        "Swaps two adjacent characters of an activity path declared in the manifest");
    add("InvalidKeyIntentPutExtra", OperatorCategory::AI, DetectionKind::AST,
        "Appends a suffix to a literal key of an Intent.putExtra call",
        {{"suffix", std::string(p::mutation_suffix)}});
    add("InvalidLabel", OperatorCategory::AI, DetectionKind::Text,
        "Replaces an android:label manifest attribute with a random string",
        {{"length", std::to_string(p::random_label_length)}});
    add("NullIntent", OperatorCategory::AI, DetectionKind::AST,
        "Replaces an Intent instantiation with null");
    add("NullValueIntentPutExtra", OperatorCategory::AI, DetectionKind::AST,
        "Replaces the value argument of an Intent.putExtra call with an empty Parcelable "
        "array",
        {{"replacement", std::string(p::null_put_extra_value)}});
    add("WrongMainActivity", OperatorCategory::AI, DetectionKind::Text,
        "Moves the MAIN/LAUNCHER intent-filter to the next declared activity",
        {{"requires_activities", "2"}});

    // Android Programming
    add("MissingPermissionManifest", OperatorCategory::AP, DetectionKind::Text,
        "Deletes one <uses-permission> element from the manifest");
    add("NotParcelable", OperatorCategory::AP, DetectionKind::AST,
        "Removes 'implements Parcelable' and the @Override annotations on Parcelable "
        "methods");
    add("NullGPSLocation", OperatorCategory::AP, DetectionKind::AST,
        "Nulls the location parameter at the start of onLocationChanged");
    add("SDKVersion", OperatorCategory::AP, DetectionKind::Text,
        "Replaces an SdkVersion integer attribute with a different value",
        {{"min", std::to_string(p::sdk_version_min)},
         {"max", std::to_string(p::sdk_version_max)},
         {"attributes", p::join(p::sdk_version_attributes())}});
    add("WrongStringResource", OperatorCategory::AP, DetectionKind::Text,
        "Mutates the value of a <string> entry in res/values/strings.xml",
        {{"fallback_suffix", std::string(p::mutation_suffix)}});

    // Back-End Services
    add("NullBackEndServiceReturn", OperatorCategory::BES, DetectionKind::AST,
        "Nulls a variable holding a back-end service response",
        {{"methods", p::join(p::backend_call_methods())},
         {"receiver_markers", p::join(p::backend_receiver_markers())}});

    // Connectivity
    add("BluetoothAdapterAlwaysEnabled", OperatorCategory::C, DetectionKind::AST,
        "Replaces a BluetoothAdapter.isEnabled() call with true");
    add("NullBluetoothAdapter", OperatorCategory::C, DetectionKind::AST,
        "Nulls a BluetoothAdapter variable after its initialization");

    // Data
    add("InvalidURI", OperatorCategory::D, DetectionKind::AST,
        "Prefixes the literal argument of Uri.parse with an invalid path",
        {{"prefix", std::string(p::invalid_path_prefix)}});

    // Database
    add("ClosingNullCursor", OperatorCategory::DB, DetectionKind::AST,
        "Nulls a cursor variable right before it is closed",
        {{"skips_final", "true"}});
    add("InvalidIndexQueryParameter", OperatorCategory::DB, DetectionKind::AST,
        "Swaps the first two arguments of a query call");
    add("InvalidSQLQuery", OperatorCategory::DB, DetectionKind::AST,
        "Deletes the last character of a SQL query literal",
        {{"methods", p::join(p::sql_call_methods())}});

    // General Programming
    add("InvalidDate", OperatorCategory::GP, DetectionKind::AST,
        "Replaces a Date instantiation with new Date(0)");
    add("NotSerializable", OperatorCategory::GP, DetectionKind::AST,
        "Removes 'implements Serializable' from a class declaration");

    // GUI
    add("BuggyGUIListener", OperatorCategory::GUI, DetectionKind::AST,
        "Empties the body of a GUI listener method",
        {{"methods", p::join(p::gui_listener_methods())}});
    add("FindViewByIdReturnsNull", OperatorCategory::GUI, DetectionKind::AST,
        "Nulls a variable assigned from findViewById");
    add("InvalidColor", OperatorCategory::GUI, DetectionKind::Text,
        "Complements every hex digit of a color value in layout or color resources");
    add("InvalidIDFindView", OperatorCategory::GUI, DetectionKind::AST,
        "Replaces the R.id argument of a findViewById call with another referenced id",
        {{"requires_ids", "2"}});
    add("ViewComponentNotVisible", OperatorCategory::GUI, DetectionKind::AST,
        "Hides a view obtained from findViewById by setting its visibility to GONE");

    // I/O
    add("InvalidFilePath", OperatorCategory::IO, DetectionKind::AST,
        "Prefixes a literal file path with an invalid directory",
        {{"prefix", std::string(p::invalid_path_prefix)},
         {"constructors", p::join(p::file_open_constructors())},
         {"calls", p::join(p::file_open_calls())}});
    add("NullInputStream", OperatorCategory::IO, DetectionKind::AST,
        "Nulls an input stream or reader variable right before it is closed");
    add("NullOutputStream", OperatorCategory::IO, DetectionKind::AST,
        "Nulls an output stream or writer variable right before it is closed");

    // Non-Functional Requirements
    add("LengthyBackEndService", OperatorCategory::NFR, DetectionKind::AST,
        "Inserts a long delay right after a back-end service call",
        {{"sleep_ms", std::to_string(p::sleep_millis)}});
    add("LengthyGUICreation", OperatorCategory::NFR, DetectionKind::AST,
        "Inserts a long delay at the start of onCreate",
        {{"sleep_ms", std::to_string(p::sleep_millis)}});
    add("LengthyGUIListener", OperatorCategory::NFR, DetectionKind::AST,
        "Inserts a long delay at the start of a GUI listener method",
        {{"sleep_ms", std::to_string(p::sleep_millis)},
         {"methods", p::join(p::gui_listener_methods())}});
    add("LongConnectionTimeOut", OperatorCategory::NFR, DetectionKind::AST,
        "Multiplies the integer argument of setConnectTimeout",
        {{"multiplier", std::to_string(p::timeout_multiplier)},
         {"fallback", std::to_string(p::timeout_fallback)}});
    add("OOMLargeImage", OperatorCategory::NFR, DetectionKind::AST,
        "Replaces bitmap dimension arguments with a very large value",
        {{"dimension", std::to_string(p::large_bitmap_dimension)},
         {"methods", p::join(p::bitmap_factory_methods())}});

    return ops;
}

} // namespace catalog_detail

// The 35 implemented operators, in catalog order (grouped by category).
inline const std::vector<OperatorSpec>& catalog() {
    static const std::vector<OperatorSpec> ops = catalog_detail::build_catalog();
    return ops;
}

// Operators that are known but deliberately not implemented.
inline const std::vector<std::string>& unimplemented_operator_ids() {
    static const std::vector<std::string> ids = {"InvalidMethodCallArgument",
                                                 "NullMethodCallArgument",
                                                 "InvalidViewFocus"};
    return ids;
}

inline const OperatorSpec* find_operator(std::string_view id) {
    for (const auto& op : catalog())
        if (op.id == id) return &op;
    return nullptr;
}

// Lookup by id; throws OperatorNotFoundError for unknown ids and for the
// known-but-not-implemented ones (with a message saying so).
inline const OperatorSpec& operator_by_id(std::string_view id) {
    if (const OperatorSpec* op = find_operator(id)) return *op;
    for (const auto& starred : unimplemented_operator_ids())
        if (starred == id)
            throw OperatorNotFoundError("operator '" + std::string(id) +
                                        "' is recognized but not implemented");
    throw OperatorNotFoundError("unknown operator id: " + std::string(id));
}

} // namespace droidmut

#endif // DROIDMUT_OPERATOR_CATALOG_HPP
