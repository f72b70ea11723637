#ifndef DROIDMUT_REPORT_HPP
#define DROIDMUT_REPORT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "droidmut/core.hpp"
#include "droidmut/verify.hpp"

namespace droidmut {

struct OperatorRow {
    std::string operator_id;
    long generated = 0;
    long stillborn = 0;
    long trivial = 0;

    friend bool operator==(const OperatorRow& a, const OperatorRow& b) {
        return a.operator_id == b.operator_id && a.generated == b.generated &&
               a.stillborn == b.stillborn && a.trivial == b.trivial;
    }
};

// Per-operator GM/SM/TM table plus totals and rates. Rates are absent (not
// zero) when nothing was generated; kill data is present only when test
// results were ingested.
struct MutationReport {
    std::vector<OperatorRow> per_operator; // sorted by GM desc, then operator_id
    long tngm = 0;
    long sm = 0;
    long tm = 0;
    std::optional<double> sm_rate;
    std::optional<double> tm_rate;
    std::optional<long> killed;
    std::optional<long> survived;
    std::optional<double> mutation_score;

    friend bool operator==(const MutationReport& a, const MutationReport& b) {
        return a.per_operator == b.per_operator && a.tngm == b.tngm && a.sm == b.sm &&
               a.tm == b.tm && a.sm_rate == b.sm_rate && a.tm_rate == b.tm_rate &&
               a.killed == b.killed && a.survived == b.survived &&
               a.mutation_score == b.mutation_score;
    }
};

enum class ReportFormat { Plain, Json, Csv };

// Minimal manifest record the aggregation needs.
struct ManifestRecord {
    std::string mutant_id;
    std::string operator_id;
};

inline MutationReport build_report(const std::vector<MutantOutcome>& outcomes,
                                   const std::vector<ManifestRecord>& manifest) {
    std::map<std::string, std::string> op_of; // mutant_id -> operator_id
    for (const auto& rec : manifest) {
        if (!op_of.emplace(rec.mutant_id, rec.operator_id).second)
            throw InconsistentManifest("duplicate mutant id in manifest: " + rec.mutant_id);
    }

    std::map<std::string, OperatorRow> rows;
    for (const auto& rec : manifest) {
        OperatorRow& row = rows[rec.operator_id];
        row.operator_id = rec.operator_id;
        ++row.generated;
    }

    long killed = 0, survived = 0;
    bool has_kill_data = false;
    std::map<std::string, bool> seen_outcome;
    for (const auto& o : outcomes) {
        auto it = op_of.find(o.mutant_id);
        if (it == op_of.end())
            throw InconsistentManifest("outcome for unknown mutant: " + o.mutant_id);
        if (!seen_outcome.emplace(o.mutant_id, true).second)
            throw InconsistentManifest("duplicate outcome for mutant: " + o.mutant_id);
        OperatorRow& row = rows[it->second];
        switch (o.status) {
            case MutantStatus::Stillborn: ++row.stillborn; break;
            case MutantStatus::Trivial: ++row.trivial; break;
            case MutantStatus::Killed:
                ++killed;
                has_kill_data = true;
                break;
            case MutantStatus::Survived:
                ++survived;
                has_kill_data = true;
                break;
            default: break;
        }
    }

    MutationReport report;
    for (auto& [id, row] : rows) report.per_operator.push_back(row);
    std::sort(report.per_operator.begin(), report.per_operator.end(),
              [](const OperatorRow& a, const OperatorRow& b) {
                  if (a.generated != b.generated) return a.generated > b.generated;
                  return a.operator_id < b.operator_id;
              });
    for (const auto& row : report.per_operator) {
        report.tngm += row.generated;
        report.sm += row.stillborn;
        report.tm += row.trivial;
    }
    if (report.tngm > 0) {
        report.sm_rate = static_cast<double>(report.sm) / static_cast<double>(report.tngm);
        report.tm_rate = static_cast<double>(report.tm) / static_cast<double>(report.tngm);
    }
    if (has_kill_data) {
        report.killed = killed;
        report.survived = survived;
        if (killed + survived > 0)
            report.mutation_score =
                static_cast<double>(killed) / static_cast<double>(killed + survived);
    }
    return report;
}

namespace report_detail {

inline std::string pad_right(std::string s, std::size_t w) {
    while (s.size() < w) s += ' ';
    return s;
}

inline std::string pad_left(std::string s, std::size_t w) {
    while (s.size() < w) s.insert(s.begin(), ' ');
    return s;
}

inline std::string format_rate(double r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", r);
    return buf;
}

} // namespace report_detail

inline nlohmann::json report_to_json(const MutationReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.per_operator)
        rows.push_back({{"operator", row.operator_id},
                        {"generated", row.generated},
                        {"stillborn", row.stillborn},
                        {"trivial", row.trivial}});
    nlohmann::json j = {
        {"format_version", 1},
        {"per_operator", rows},
        {"totals", {{"tngm", r.tngm}, {"sm", r.sm}, {"tm", r.tm}}},
    };
    if (r.sm_rate) j["rates"]["sm_rate"] = *r.sm_rate;
    if (r.tm_rate) j["rates"]["tm_rate"] = *r.tm_rate;
    if (r.killed) j["kills"]["killed"] = *r.killed;
    if (r.survived) j["kills"]["survived"] = *r.survived;
    if (r.mutation_score) j["kills"]["mutation_score"] = *r.mutation_score;
    return j;
}

inline MutationReport report_from_json(const nlohmann::json& j) {
    MutationReport r;
    for (const auto& row : j.at("per_operator"))
        r.per_operator.push_back(OperatorRow{row.at("operator").get<std::string>(),
                                             row.at("generated").get<long>(),
                                             row.at("stillborn").get<long>(),
                                             row.at("trivial").get<long>()});
    r.tngm = j.at("totals").at("tngm").get<long>();
    r.sm = j.at("totals").at("sm").get<long>();
    r.tm = j.at("totals").at("tm").get<long>();
    if (j.contains("rates")) {
        if (j["rates"].contains("sm_rate")) r.sm_rate = j["rates"]["sm_rate"].get<double>();
        if (j["rates"].contains("tm_rate")) r.tm_rate = j["rates"]["tm_rate"].get<double>();
    }
    if (j.contains("kills")) {
        if (j["kills"].contains("killed")) r.killed = j["kills"]["killed"].get<long>();
        if (j["kills"].contains("survived")) r.survived = j["kills"]["survived"].get<long>();
        if (j["kills"].contains("mutation_score"))
            r.mutation_score = j["kills"]["mutation_score"].get<double>();
    }
    return r;
}

inline std::string render(const MutationReport& r, ReportFormat format) {
    using namespace report_detail;
    if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";

    if (format == ReportFormat::Csv) {
        std::string out = "operator,generated,stillborn,trivial\n";
        for (const auto& row : r.per_operator)
            out += row.operator_id + "," + std::to_string(row.generated) + "," +
                   std::to_string(row.stillborn) + "," + std::to_string(row.trivial) + "\n";
        return out;
    }

    // plain table
    std::size_t name_w = std::string("Operator").size();
    for (const auto& row : r.per_operator) name_w = std::max(name_w, row.operator_id.size());
    std::string out;
    out += pad_right("Operator", name_w) + "  " + pad_left("GM", 6) + "  " + pad_left("SM", 6) +
           "  " + pad_left("TM", 6) + "\n";
    for (const auto& row : r.per_operator)
        out += pad_right(row.operator_id, name_w) + "  " +
               pad_left(std::to_string(row.generated), 6) + "  " +
               pad_left(std::to_string(row.stillborn), 6) + "  " +
               pad_left(std::to_string(row.trivial), 6) + "\n";
    out += pad_right("Total", name_w) + "  " + pad_left(std::to_string(r.tngm), 6) + "  " +
           pad_left(std::to_string(r.sm), 6) + "  " + pad_left(std::to_string(r.tm), 6) + "\n";
    if (r.sm_rate) out += "stillborn rate: " + format_rate(*r.sm_rate) + "\n";
    if (r.tm_rate) out += "trivial rate:   " + format_rate(*r.tm_rate) + "\n";
    if (r.killed) out += "killed:   " + std::to_string(*r.killed) + "\n";
    if (r.survived) out += "survived: " + std::to_string(*r.survived) + "\n";
    if (r.mutation_score) out += "mutation score: " + format_rate(*r.mutation_score) + "\n";
    return out;
}

// Parse back what render() produced for the machine formats.
inline MutationReport parse_report(std::string_view text, ReportFormat format) {
    if (format == ReportFormat::Json)
        return report_from_json(nlohmann::json::parse(text));
    if (format != ReportFormat::Csv) throw Error("plain reports are not parseable");

    MutationReport r;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (line.empty()) continue;
        if (header) {
            if (line != "operator,generated,stillborn,trivial")
                throw Error("unexpected csv header: " + std::string(line));
            header = false;
            continue;
        }
        OperatorRow row;
        std::size_t c = 0;
        std::vector<std::string> cells;
        for (;;) {
            auto comma = line.find(',', c);
            if (comma == std::string_view::npos) {
                cells.emplace_back(line.substr(c));
                break;
            }
            cells.emplace_back(line.substr(c, comma - c));
            c = comma + 1;
        }
        if (cells.size() != 4) throw Error("malformed csv row: " + std::string(line));
        row.operator_id = cells[0];
        row.generated = std::stol(cells[1]);
        row.stillborn = std::stol(cells[2]);
        row.trivial = std::stol(cells[3]);
        r.per_operator.push_back(std::move(row));
    }
    for (const auto& row : r.per_operator) {
        r.tngm += row.generated;
        r.sm += row.stillborn;
        r.tm += row.trivial;
    }
    if (r.tngm > 0) {
        r.sm_rate = static_cast<double>(r.sm) / static_cast<double>(r.tngm);
        r.tm_rate = static_cast<double>(r.tm) / static_cast<double>(r.tngm);
    }
    return r;
}

// Cross-app aggregation: the corpus figures are means of per-app rates, not
// pooled ratios.
struct AppReport {
    std::string app;
    MutationReport report;
};

struct CorpusSummary {
    std::size_t app_count = 0;
    std::optional<double> mean_sm_rate;
    std::optional<double> mean_tm_rate;
};

inline CorpusSummary summarize_corpus(const std::vector<AppReport>& apps) {
    CorpusSummary s;
    s.app_count = apps.size();
    double sm_sum = 0, tm_sum = 0;
    std::size_t sm_n = 0, tm_n = 0;
    for (const auto& a : apps) {
        if (a.report.sm_rate) {
            sm_sum += *a.report.sm_rate;
            ++sm_n;
        }
        if (a.report.tm_rate) {
            tm_sum += *a.report.tm_rate;
            ++tm_n;
        }
    }
    if (sm_n) s.mean_sm_rate = sm_sum / static_cast<double>(sm_n);
    if (tm_n) s.mean_tm_rate = tm_sum / static_cast<double>(tm_n);
    return s;
}

} // namespace droidmut

#endif // DROIDMUT_REPORT_HPP
