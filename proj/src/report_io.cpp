#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sentibench/errors.hpp"
#include "sentibench/experiments.hpp"

namespace sentibench {

// Reports are ordered JSON with a schema tag. nlohmann emits doubles in
// shortest-round-trip form, so identical runs produce identical bytes.

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json wilcoxon_to_json(const WilcoxonResult& r) {
    return ordered_json{{"n_effective", r.n_effective},
                        {"w", r.w_statistic},
                        {"p_two_sided", r.p_two_sided},
                        {"method", to_string(r.method)}};
}

WilcoxonResult wilcoxon_from_json(const ordered_json& j) {
    WilcoxonResult r;
    r.n_effective = j.at("n_effective").get<int>();
    r.w_statistic = j.at("w").get<double>();
    r.p_two_sided = j.at("p_two_sided").get<double>();
    r.method = j.at("method").get<std::string>() == "exact" ? WilcoxonMethod::Exact
                                                            : WilcoxonMethod::NormalApprox;
    return r;
}

ordered_json significance_to_json(const std::vector<SignificanceEntry>& entries) {
    ordered_json arr = ordered_json::array();
    for (const SignificanceEntry& e : entries) {
        arr.push_back(ordered_json{{"system_a", e.system_a},
                                   {"system_b", e.system_b},
                                   {"by_fold", wilcoxon_to_json(e.by_fold)},
                                   {"by_instance", wilcoxon_to_json(e.by_instance)}});
    }
    return arr;
}

std::vector<SignificanceEntry> significance_from_json(const ordered_json& arr) {
    std::vector<SignificanceEntry> entries;
    for (const auto& j : arr) {
        SignificanceEntry e;
        e.system_a = j.at("system_a").get<std::string>();
        e.system_b = j.at("system_b").get<std::string>();
        e.by_fold = wilcoxon_from_json(j.at("by_fold"));
        e.by_instance = wilcoxon_from_json(j.at("by_instance"));
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace

std::string report_to_json(const ExperimentReport& report) {
    ordered_json j;
    j["schema"] = "sentibench-report-v1";
    j["experiment"] = report.experiment_name;
    j["config"] = ordered_json(report.config);
    j["per_fold_accuracy"] = report.per_fold_accuracy;
    j["mean_accuracy"] = report.mean_accuracy;
    j["significance"] = significance_to_json(report.significance);
    ordered_json table = ordered_json::array();
    for (const auto& [doc_id, record] : report.per_instance) {
        table.push_back(
            ordered_json::array({doc_id, to_string(record.gold), to_string(record.predicted)}));
    }
    j["per_instance"] = std::move(table);
    return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: invalid JSON: ") + e.what());
    }
    try {
        if (j.at("schema").get<std::string>() != "sentibench-report-v1") {
            throw ParseError("report: unknown schema '" + j.at("schema").get<std::string>() + "'");
        }
        ExperimentReport report;
        report.experiment_name = j.at("experiment").get<std::string>();
        for (const auto& [key, value] : j.at("config").items()) {
            report.config[key] = value.get<std::string>();
        }
        report.per_fold_accuracy = j.at("per_fold_accuracy").get<std::vector<double>>();
        report.mean_accuracy = j.at("mean_accuracy").get<double>();
        report.significance = significance_from_json(j.at("significance"));
        for (const auto& row : j.at("per_instance")) {
            int doc_id = row.at(0).get<int>();
            PredictionRecord record{polarity_from_string(row.at(1).get<std::string>()),
                                    polarity_from_string(row.at(2).get<std::string>())};
            if (!report.per_instance.emplace(doc_id, record).second) {
                throw ParseError("report: duplicate doc_id " + std::to_string(doc_id));
            }
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: malformed: ") + e.what());
    }
}

void write_report(const ExperimentReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write report: " + path.string());
    out << report_to_json(report);
    if (!out) throw DataError("failed writing report: " + path.string());
}

ExperimentReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open report: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return report_from_json(buffer.str());
}

std::string sweep_to_json(const SweepReport& report) {
    ordered_json j;
    j["schema"] = "sentibench-sweep-v1";
    j["experiment"] = report.experiment_name;
    j["config"] = ordered_json(report.config);
    ordered_json runs = ordered_json::array();
    for (const SweepRun& run : report.runs) {
        runs.push_back(ordered_json{{"max_features", run.max_features},
                                    {"per_fold_accuracy", run.per_fold_accuracy},
                                    {"mean_accuracy", run.mean_accuracy}});
    }
    j["runs"] = std::move(runs);
    j["significance"] = significance_to_json(report.significance);
    return j.dump(2) + "\n";
}

void write_sweep(const SweepReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write sweep report: " + path.string());
    out << sweep_to_json(report);
    if (!out) throw DataError("failed writing sweep report: " + path.string());
}

} // namespace sentibench
