#include <doctest.h>

#include "cyclicity/presets.hpp"
#include "cyclicity/report.hpp"

using namespace cyc;

namespace {
AnalysisOutcome analyze_preset(const char* name) {
    const Preset& p = preset(name);
    ParsedSystem sys = parse_system(p.system_text, p.params);
    std::optional<IIFCandidate> v0;
    if (!p.v0_text.empty()) v0 = IIFCandidate::from_text(p.v0_text, p.params);
    return analyze_system(sys, v0);
}
} // namespace

TEST_CASE("ejbh end-to-end report") {
    AnalysisOutcome out = analyze_preset("ejbh");
    CHECK(out.exit_code == 0);
    std::string text = out.report.dump();
    CHECK(text.find("\"kind\": \"focus\"") == std::string::npos); // compact dump has no spaces
    CHECK(text.find("\"kind\":\"focus\"") != std::string::npos);
    CHECK(text.find("\"m\":3") != std::string::npos);
    CHECK(text.find("\"exact\":true") != std::string::npos);
}

TEST_CASE("identical inputs serialize byte-identically") {
    AnalysisOutcome a = analyze_preset("ejfd");
    AnalysisOutcome b = analyze_preset("ejfd");
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.report.dump(2) == b.report.dump(2));
}

TEST_CASE("ex5 at the center parameter value reports center-like") {
    const Preset& p = preset("ex5");
    Bindings params{{"nu1", Rational(1, 10)}, {"nu2", Rational(3, 10)}};
    ParsedSystem sys = parse_system(p.system_text, params);
    IIFCandidate v0 = IIFCandidate::from_text(p.v0_text, params);
    AnalysisOutcome out = analyze_system(sys, v0);
    CHECK(out.exit_code == 0);
    CHECK(out.report.dump().find("\"kind\":\"center-like\"") != std::string::npos);
}

TEST_CASE("non-monodromic inputs abstain with exit hint 2") {
    ParsedSystem sys = parse_system("x' = x; y' = -y", {});
    AnalysisOutcome out = analyze_system(sys, std::nullopt);
    CHECK(out.exit_code == 2);
    CHECK(out.report.dump().find("abstained") != std::string::npos);
}

TEST_CASE("error reports carry structured fields") {
    Json e = error_report("parse", "syntax error", 3);
    std::string text = e.dump();
    CHECK(text.find("\"kind\":\"parse\"") != std::string::npos);
    CHECK(text.find("\"offset\":3") != std::string::npos);
}

TEST_CASE("floats print with 17 significant digits") {
    Json j = Json::object();
    j.set("pi", 3.141592653589793);
    CHECK(j.dump() == "{\"pi\":3.1415926535897931}");
}

TEST_CASE("nilpotent systems outside the direct hypothesis use the normalized route") {
    // P2 carries a weight-2 term, so the quasihomogeneous orders mismatch at
    // n = 3 and the chart must come from the normal form
    ParsedSystem sys =
        parse_system("x' = y + x^2; y' = -2*x^3 - 2*x*y - x^5 + x^4*y", {});
    AnalysisOutcome out = analyze_system(sys, std::nullopt);
    std::string text = out.report.dump();
    CHECK(text.find("\"note\":\"normalized route\"") != std::string::npos);
    CHECK(text.find("\"m_hat\":3") != std::string::npos);
    CHECK(text.find("\"n\":3") != std::string::npos);

    // dropping the y-dissipation term leaves a disguised Hamiltonian center
    ParsedSystem cen = parse_system("x' = y + x^2; y' = -2*x^3 - 2*x*y - x^5", {});
    AnalysisOutcome outc = analyze_system(cen, std::nullopt);
    CHECK(outc.report.dump().find("\"center_like\":true") != std::string::npos);
}
