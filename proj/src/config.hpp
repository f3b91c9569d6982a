// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "scenarios.hpp"

namespace helegeo {

struct ScenarioConfig {
    enum class Kind { Standard, Diffeo, Tangency };
    Kind kind = Kind::Standard;
    DiffeoSpec diffeo;
    TangencySpec tangency;
    // "standard", "diffeo:<map>" or "tangency".
    std::string name() const;
};

struct GridsConfig {
    int N = 64;             // Fourier modes per family curve (tangency templates keep 256)
    int grid_size = 128;    // nodes per side of envelope grids
    int t_samples = 200;    // family rows
    double s_max = 8.0;
    int s_samples = 200;
    double t_lo = 0.02, t_hi = 0.98;  // family range
    double dt = 0.005;      // spacing of the envelope t-grid
    int ray_size = 12;      // ray points per side of the z-grid
    double window = 1.5;    // half-width of the ray z-grid
};

struct ExportConfig {
    std::string dir = "helegeo_out";
    std::vector<std::string> formats{"csv", "json", "svg"};
    bool wants(const std::string& f) const;
};

enum class Stage { Synthesize, Envelope, Geodesic, Singularity, Simulate, Verify };

struct Config {
    ScenarioConfig scenario;
    GridsConfig grids;
    std::vector<Stage> stages;
    ExportConfig output;
    bool verify_all = false;  // verify runs every suite, not only those of the requested stages
};

const char* stage_name(Stage s);
Stage stage_from_name(const std::string& s);

// Parses and validates a JSON config. Violations throw Schema errors whose message starts
// with "config:<line>:" pointing at the offending key (line 0 when it cannot be located).
Config parse_config(const std::string& text);
// Canonical JSON form of a config (sorted keys), as written next to the outputs.
std::string config_to_json(const Config& c);

// "standard", "tangency", "diffeo:<map>" (map defaults to shear).
ScenarioConfig scenario_from_name(const std::string& s);
// Complex literal such as "1+0i", "-0.5i", "2", "0.3-1.2i".
cplx parse_complex(const std::string& s);

}  // namespace helegeo
