#ifndef CYCLICITY_REPORT_HPP
#define CYCLICITY_REPORT_HPP

#include <optional>
#include <string>

#include "cyclicity/dynamics.hpp"
#include "cyclicity/iif.hpp"
#include "cyclicity/jsonw.hpp"
#include "cyclicity/parse.hpp"

namespace cyc {

struct AnalyzeOptions {
    std::string chart; // "", "polar", "genpolar", "direct"
};

// Full analyze pipeline: classify -> lift -> dynamics -> (iif path) ->
// verdict.  The report is schema-stable: fixed field order, floats at 17
// significant digits; identical inputs serialize byte-identically.
struct AnalysisOutcome {
    Json report = Json::object();
    int exit_code = 0; // 0 ok, 2 abstained
    std::optional<PoincareData> profile;
};

AnalysisOutcome analyze_system(const ParsedSystem& sys, const std::optional<IIFCandidate>& v0,
                               const AnalyzeOptions& opts = {});

// Structured error object with the same envelope as regular reports.
Json error_report(const std::string& kind, const std::string& message, long offset = -1);

} // namespace cyc

#endif
