// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: every subcommand becomes a JSON config run through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "helegeo/helegeo.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Common {
    std::string scenario = "standard";
    std::string out = "helegeo_out";
    std::string export_file;
    std::vector<std::string> formats;
    int threads = 0;
    json grids = json::object();
};

void add_common(CLI::App* app, Common& c, bool with_scenario) {
    if (with_scenario)
        app->add_option("--scenario", c.scenario, "standard, diffeo:<identity|rotation|radial|shear|angular> or tangency");
    app->add_option("--export", c.export_file, "write only the stage's main output to this file (.csv/.json/.svg)");
    app->add_option("--out", c.out, "output directory");
    app->add_option("--formats", c.formats, "subset of csv json svg")->delimiter(',');
    app->add_option("--threads", c.threads, "worker threads (sets HELEGEO_THREADS)");
}

void add_grid_options(CLI::App* app, json& g) {
    auto int_opt = [&](const char* flag, const char* key, const char* help) {
        app->add_option_function<int>(flag, [&g, key](int v) { g[key] = v; }, help);
    };
    auto num_opt = [&](const char* flag, const char* key, const char* help) {
        app->add_option_function<double>(flag, [&g, key](double v) { g[key] = v; }, help);
    };
    int_opt("--modes", "N", "Fourier modes per family curve");
    int_opt("--grid-size", "grid_size", "nodes per side of envelope and export grids");
    int_opt("--t-samples", "t_samples", "family rows");
    num_opt("--s-max", "s_max", "largest s on the ray");
    int_opt("--s-samples", "s_samples", "ray s-samples");
    int_opt("--ray-size", "ray_size", "ray z-grid points per side");
    num_opt("--window", "window", "half-width of the ray z-grid");
    num_opt("--dt", "dt", "spacing of the envelope t-grid");
}

json scenario_json(const std::string& name, const json& tangency_params) {
    if (name == "standard") return {{"kind", "standard"}};
    if (name == "tangency") return {{"kind", "tangency"}, {"params", tangency_params}};
    if (name == "diffeo") return {{"kind", "diffeo"}};
    if (name.rfind("diffeo:", 0) == 0) return {{"kind", "diffeo"}, {"params", {{"map", name.substr(7)}}}};
    throw CLI::ValidationError("--scenario", "unknown scenario '" + name + "'");
}

int report(int status, char* report_json, bool print_checks) {
    if (status == HELEGEO_OK || status == HELEGEO_CHECKS_FAILED) {
        json r = json::parse(report_json);
        helegeo_free_string(report_json);
        for (const auto& line : r["summary"]) std::cout << line.get<std::string>() << "\n";
        if (print_checks)
            for (const auto& c : r["checks"]) {
                char buf[512];
                std::snprintf(buf, sizeof buf, "%s  [%2d] %-14s %-22s %s: %.6g (bound %.6g)",
                              c["pass"].get<bool>() ? "PASS" : "FAIL", c["criterion"].get<int>(),
                              c["suite"].get<std::string>().c_str(), c["scenario"].get<std::string>().c_str(),
                              c["name"].get<std::string>().c_str(),
                              c["value"].is_number() ? c["value"].get<double>() : NAN,
                              c["bound"].is_number() ? c["bound"].get<double>() : NAN);
                std::cout << buf << "\n";
            }
        for (const auto& f : r["files"]) std::cout << "wrote " << f.get<std::string>() << "\n";
        return status;
    }
    const char* kind = status == HELEGEO_E_SCHEMA ? "schema" : status == HELEGEO_E_NUMERIC ? "numeric"
                                                             : status == HELEGEO_E_IO        ? "io"
                                                                                              : "internal";
    std::cerr << "helegeo: " << kind << " error: " << helegeo_last_error() << "\n";
    return status;
}

int run_config(const std::string& text, const std::string& export_file, bool verify_all, bool print_checks) {
    char* rep = nullptr;
    int st = helegeo_run(text.c_str(), export_file.empty() ? nullptr : export_file.c_str(), verify_all ? 1 : 0, &rep);
    return report(st, rep, print_checks);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"helegeo: Hele-Shaw flows on the Riemann sphere and their geodesic rays"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(helegeo_version()));

    Common c;
    json tangency = json::object();
    bool all = false;
    std::string config_path;

    auto* run = app.add_subcommand("run", "run a JSON config");
    run->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);
    run->add_option("--export", c.export_file, "write only the main output of the single stage to this file");
    run->add_option("--threads", c.threads, "worker threads (sets HELEGEO_THREADS)");
    run->add_flag("--quick", "skip the slow verification suites");

    const std::vector<std::pair<std::string, std::string>> stages{
        {"synthesize", "extract kappa and the designer potential"},
        {"envelope", "closed-form and obstacle envelopes psi_t"},
        {"geodesic", "the geodesic ray Phi~ on a z-grid"},
        {"singularity", "exit-time derivative defects of a tangency flow"},
        {"simulate", "evolve the flow under the extracted kappa"},
        {"verify", "invariant suites"}};
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : stages) {
        auto* s = app.add_subcommand(name, help);
        add_common(s, c, name != "singularity");
        add_grid_options(s, c.grids);
        subs[name] = s;
    }
    subs["verify"]->add_flag("--all", all, "also run the 512^2 envelope comparison and loop closure");
    auto* sing = subs["singularity"];
    sing->add_option_function<std::vector<std::string>>(
        "--pinch", [&](const std::vector<std::string>& v) { tangency["pinches"] = v; },
        "pinch point(s), e.g. 1+0i (two points must be antipodal)");
    sing->add_option_function<double>("--arc", [&](double v) { tangency["arc_half_length"] = v; }, "pinch arc half-length");
    sing->add_option_function<double>("--T", [&](double v) { tangency["T"] = v; }, "tangency time");

    CLI11_PARSE(app, argc, argv);
    auto* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (c.threads > 0) setenv("HELEGEO_THREADS", std::to_string(c.threads).c_str(), 1);

    if (name == "run") {
        std::ifstream is(config_path);
        std::stringstream ss;
        ss << is.rdbuf();
        return run_config(ss.str(), c.export_file, run->count("--quick") == 0, true);
    }

    json cfg;
    try {
        cfg["scenario"] = name == "singularity" ? scenario_json("tangency", tangency) : scenario_json(c.scenario, tangency);
    } catch (const CLI::Error& e) {
        std::cerr << "helegeo: schema error: " << e.what() << "\n";
        return HELEGEO_E_SCHEMA;
    }
    if (!c.grids.empty()) cfg["grids"] = c.grids;
    cfg["stages"] = {name};
    cfg["export"] = {{"dir", c.out}};
    if (!c.formats.empty()) cfg["export"]["formats"] = c.formats;
    return run_config(cfg.dump(2), c.export_file, name != "verify" || all, name == "verify");
}
