#include "tau/report.hpp"

#include <json.hpp>

namespace tau {

std::string to_json_line(const BoundReport& r) {
    nlohmann::json j{{"label", r.label},
                     {"lhs_log10", r.lhs_log10},
                     {"rhs_log10", r.rhs_log10},
                     {"holds", r.holds},
                     {"slack_log10", r.slack_log10}};
    return j.dump();
}

std::string csv_header_reports() { return "label,lhs_log10,rhs_log10,holds,slack_log10"; }

static std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string to_csv_line(const BoundReport& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%s,%.10g", r.lhs_log10, r.rhs_log10,
                  r.holds ? "true" : "false", r.slack_log10);
    return csv_quote(r.label) + buf;
}

std::string to_text_line(const BoundReport& r) {
    char buf[160];
    if (!r.applicable) return r.label;
    std::snprintf(buf, sizeof buf, "%-72s lhs=%.6g rhs=%.6g slack=%.6g  %s", r.label.c_str(),
                  r.lhs_log10, r.rhs_log10, r.slack_log10, r.holds ? "holds" : "FAILS");
    return std::string(buf);
}

bool all_asserted_hold(const std::vector<BoundReport>& reports) {
    for (const auto& r : reports)
        if (!r.report_only && !r.holds) return false;
    return true;
}

}  // namespace tau
