#pragma once

#include <string>
#include <vector>

#include "tau/bigint.hpp"

namespace tau {

// One audited inequality instance. lhs/rhs are carried on the scale named by
// the label (base-10 log of a magnitude unless the label says otherwise);
// slack is lhs - rhs on that scale. `report_only` marks conjectural or
// empirical-premise claims that are recorded but never asserted; it is also
// reflected as a "[report-only]" suffix in the label. `applicable` is false
// when the check degenerates (for example a rational input ending a
// continued-fraction expansion).
struct BoundReport {
    std::string label;
    double lhs_log10 = 0.0;
    double rhs_log10 = 0.0;
    bool holds = false;
    double slack_log10 = 0.0;
    bool report_only = false;
    bool applicable = true;

    static BoundReport make(std::string label, double lhs, double rhs, bool holds,
                            bool report_only = false) {
        BoundReport r;
        r.label = std::move(label);
        if (report_only) r.label += " [report-only]";
        r.lhs_log10 = lhs;
        r.rhs_log10 = rhs;
        r.holds = holds;
        r.slack_log10 = lhs - rhs;
        r.report_only = report_only;
        return r;
    }

    static BoundReport not_applicable(std::string label) {
        BoundReport r;
        r.label = std::move(label) + " [n/a]";
        r.holds = true;
        r.applicable = false;
        r.report_only = true;
        return r;
    }
};

// Wire format: label, lhs_log10, rhs_log10, holds, slack_log10.
std::string to_json_line(const BoundReport& r);
std::string csv_header_reports();
std::string to_csv_line(const BoundReport& r);
std::string to_text_line(const BoundReport& r);

// True when every non-report-only report holds.
bool all_asserted_hold(const std::vector<BoundReport>& reports);

}  // namespace tau
