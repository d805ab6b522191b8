// Command-line front end: analyze, bifurcate, selftest.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cyclicity/bifurcation.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/iif.hpp"
#include "cyclicity/jsonw.hpp"
#include "cyclicity/presets.hpp"
#include "cyclicity/report.hpp"
#include "cyclicity/selftest.hpp"
#include "cyclicity/version.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cyc::Error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    std::string s = os.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

cyc::Bindings parse_param_flags(const std::vector<std::string>& kvs) {
    cyc::Bindings out;
    for (auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw cyc::Error("expected name=value in --param");
        out[kv.substr(0, eq)] = cyc::Rational::from_string(kv.substr(eq + 1));
    }
    return out;
}

void emit(const cyc::Json& j, const std::string& path) {
    std::string text = j.dump(2);
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(path);
        out << text;
    }
}

std::vector<double> parse_eps_grid(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"monodromic singular points: charts, inverse integrating factors, "
                 "cyclicity bounds"};
    app.set_version_flag("--version", std::string(cyc::kToolVersion));
    app.require_subcommand(1);

    // analyze
    auto* an = app.add_subcommand("analyze", "classify a system, lift it, and report verdicts");
    std::string an_file, an_preset, an_iif_file, an_chart, an_json, an_csv;
    std::vector<std::string> an_params;
    bool an_no_iif = false, an_assume_nonneg = false;
    an->add_option("system", an_file, "system file (x' = ...; y' = ...)");
    an->add_option("--preset", an_preset, "named preset (ejbh, ejfd, ex1..ex5)");
    an->add_option("--iif", an_iif_file, "inverse-integrating-factor candidate file");
    an->add_flag("--no-iif", an_no_iif, "ignore the preset's bundled candidate");
    an->add_flag("--assume-nonneg", an_assume_nonneg,
                 "assert that rational-power bases in the candidate are nonnegative");
    an->add_option("--chart", an_chart, "chart override: polar | genpolar | direct");
    an->add_option("--param", an_params, "parameter binding name=value (rational)");
    an->add_option("--json", an_json, "write the JSON report to this file ('-' = stdout)");
    an->add_option("--csv", an_csv, "write the displacement profile CSV to this file");

    // bifurcate
    auto* bf = app.add_subcommand("bifurcate", "perturbation families and cycle counting");
    std::string bf_file, bf_preset, bf_family = "degp1", bf_eps, bf_csv;
    std::vector<std::string> bf_params;
    int bf_m = 0;
    double bf_rmax = 0.5;
    bf->add_option("system", bf_file, "system file");
    bf->add_option("--preset", bf_preset, "named preset base");
    bf->add_option("--family", bf_family, "degp1 | degp2 | nilp1 | nilp2 | preset-ex3")
        ->required();
    bf->add_option("--eps", bf_eps, "comma-separated epsilon grid")->required();
    bf->add_option("--m", bf_m, "vanishing multiplicity of the base (from analyze)");
    bf->add_option("--param", bf_params, "parameter binding name=value");
    bf->add_option("--rmax", bf_rmax, "search radius for cycles");
    bool bf_search = false;
    bf->add_flag("--search-coeffs", bf_search,
                 "search sign patterns and magnitudes for the demonstration coefficients");
    bf->add_option("--csv", bf_csv, "write the sweep CSV to this file");

    // selftest
    auto* st = app.add_subcommand("selftest", "run the full acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (an->parsed()) {
            cyc::Bindings params = parse_param_flags(an_params);
            std::string text;
            std::string v0_text;
            if (!an_preset.empty()) {
                const cyc::Preset& p = cyc::preset(an_preset);
                text = p.system_text;
                for (auto& [k, v] : p.params)
                    if (!params.count(k)) params[k] = v;
                if (!an_no_iif) v0_text = p.v0_text;
            } else if (!an_file.empty()) {
                text = slurp(an_file);
            } else {
                throw cyc::Error("need a system file or --preset");
            }
            if (!an_iif_file.empty()) v0_text = slurp(an_iif_file);

            cyc::ParsedSystem sys = cyc::parse_system(text, params);
            std::optional<cyc::IIFCandidate> v0;
            if (!v0_text.empty())
                v0 = cyc::IIFCandidate::from_text(v0_text, params, an_assume_nonneg);

            cyc::AnalyzeOptions opts;
            opts.chart = an_chart;
            cyc::AnalysisOutcome out = cyc::analyze_system(sys, v0, opts);
            emit(out.report, an_json);
            if (!an_csv.empty() && out.profile) {
                std::ofstream os(an_csv);
                cyc::write_profile_csv(*out.profile, os);
            }
            return out.exit_code;
        }

        if (bf->parsed()) {
            cyc::Bindings params = parse_param_flags(bf_params);
            std::string text;
            if (!bf_preset.empty()) {
                const cyc::Preset& p = cyc::preset(bf_preset);
                text = p.system_text;
                for (auto& [k, v] : p.params)
                    if (!params.count(k)) params[k] = v;
            } else if (!bf_file.empty()) {
                text = slurp(bf_file);
            } else {
                throw cyc::Error("need a system file or --preset");
            }
            std::vector<double> eps = parse_eps_grid(bf_eps);
            if (eps.empty()) throw cyc::Error("empty epsilon grid");

            cyc::ParsedSystem sys = cyc::parse_system(text, params);
            cyc::PerturbationFamily fam = [&] {
                if (bf_family == "preset-ex3")
                    return cyc::build_family(cyc::FamilyTag::PresetEx3, sys, std::max(bf_m, 1));
                if (bf_family == "degp1")
                    return cyc::build_family(cyc::FamilyTag::DegP1, sys, bf_m);
                if (bf_family == "degp2")
                    return cyc::build_family(cyc::FamilyTag::DegP2, sys, bf_m);
                if (bf_family == "nilp1" || bf_family == "nilp2") {
                    cyc::SingularityClass cls = cyc::classify_singularity(sys);
                    if (cls.tag != cyc::SingularityClass::Tag::Nilpotent)
                        throw cyc::Error("nilpotent family on a non-nilpotent base");
                    cyc::NormalizedSystem ns = cyc::normalize_nilpotent(sys, *cls.andreev);
                    return cyc::build_family_nilpotent(bf_family == "nilp1"
                                                           ? cyc::FamilyTag::NilP1
                                                           : cyc::FamilyTag::NilP2,
                                                       ns, bf_m);
                }
                throw cyc::Error("unknown family '" + bf_family + "'");
            }();

            if (bf_search) fam = cyc::search_coefficients(fam, eps.front(), bf_rmax);
            auto rows = cyc::sweep(fam, eps, bf_rmax);
            cyc::Json summary = cyc::Json::object();
            summary.set("family", bf_family);
            summary.set("m", fam.m);
            summary.set("terms", fam.k_or_L);
            cyc::Json jc = cyc::Json::array();
            for (double c : fam.coeffs) jc.push(c);
            summary.set("coefficients", std::move(jc));
            cyc::Json jrows = cyc::Json::array();
            for (auto& row : rows) {
                cyc::Json r = cyc::Json::object();
                r.set("eps", row.eps);
                r.set("count", row.count);
                cyc::Json radii = cyc::Json::array();
                for (double x : row.radii) radii.push(x);
                r.set("radii", std::move(radii));
                r.set("exceeded_bound", row.exceeded_bound);
                r.set("note", row.note);
                jrows.push(std::move(r));
            }
            summary.set("rows", std::move(jrows));
            emit(summary, "");
            if (!bf_csv.empty()) {
                std::ofstream os(bf_csv);
                cyc::write_sweep_csv(rows, os);
            }
            return 0;
        }

        if (st->parsed()) {
            return cyc::print_acceptance(std::cout) ? 0 : 1;
        }
    } catch (const cyc::Undecided& e) {
        emit(cyc::error_report("undecided", e.what()), "");
        return 2;
    } catch (const cyc::ParseError& e) {
        emit(cyc::error_report("parse", e.what(), e.offset), "");
        return 1;
    } catch (const cyc::Error& e) {
        emit(cyc::error_report("error", e.what()), "");
        return 1;
    } catch (const std::exception& e) {
        emit(cyc::error_report("internal", e.what()), "");
        return 1;
    }
    return 0;
}
