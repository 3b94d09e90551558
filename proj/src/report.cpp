#include "rmrun/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace rmrun {

using nlohmann::json;

json to_json(const ExperimentReport& rep) {
    return json{
        {"m", rep.m},
        {"ell", rep.ell},
        {"k", rep.k},
        {"seed", rep.seed},
        {"selection", rep.selection},
        {"trials", rep.trials},
        {"successes", rep.successes},
        {"step1_errors", rep.step1_errors},
        {"step2_errors", rep.step2_errors},
        {"channel_uses", rep.channel_uses},
        {"mean_abs_dev", rep.mean_abs_dev},
        {"wall_ms", rep.wall_ms},
    };
}

json to_json(const ConditionReport& rep) {
    json margins = json::array();
    for (const auto& m : rep.margins) {
        json w{{"x", m.witness.x}};
        if (!m.witness.y.empty()) w["y"] = m.witness.y;
        margins.push_back(json{
            {"name", m.name},
            {"margin", m.margin.to_string()},
            {"margin_float", m.margin.to_float().first},
            {"required", m.required},
            {"pass", m.pass},
            {"witness", w},
        });
    }
    return json{
        {"m", rep.m},
        {"sampled", rep.sampled},
        {"pairs_checked", rep.pairs_checked},
        {"outside_paper_guarantee", rep.outside_paper_guarantee},
        {"margins", margins},
        {"all_pass", rep.all_pass},
    };
}

json to_json(const Table1Report& rep) {
    json diffs = json::array();
    for (const auto& d : rep.mismatches) {
        diffs.push_back(json{{"codeword", d.codeword},
                             {"field", d.field},
                             {"expected", d.expected},
                             {"actual", d.actual}});
    }
    std::ostringstream summary;
    summary << (rep.values_checked - rep.mismatches.size()) << "/" << rep.values_checked
            << " exact";
    return json{{"pass", rep.pass},
                {"values_checked", rep.values_checked},
                {"summary", summary.str()},
                {"mismatches", diffs}};
}

json make_envelope(const std::string& command, std::optional<std::uint64_t> seed,
                   json payload) {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&tt));
    json env{{"tool_version", kToolVersion},
             {"command", command},
             {"timestamp", buf},
             {"payload", std::move(payload)}};
    if (seed) env["seed"] = *seed;
    return env;
}

std::string experiment_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "trial,outcome\n";
    for (std::size_t t = 0; t < rep.trial_outcomes.size(); ++t) {
        const char* label = rep.trial_outcomes[t] == 0   ? "success"
                            : rep.trial_outcomes[t] == 1 ? "step1_error"
                                                         : "step2_error";
        out << t << "," << label << "\n";
    }
    return out.str();
}

std::string condition_csv(const ConditionReport& rep) {
    std::ostringstream out;
    out << "condition,margin,required,pass,witness_x,witness_y\n";
    for (const auto& m : rep.margins) {
        out << m.name << "," << m.margin.to_string() << "," << m.required << ","
            << (m.pass ? 1 : 0) << "," << m.witness.x << "," << m.witness.y << "\n";
    }
    return out.str();
}

}  // namespace rmrun
