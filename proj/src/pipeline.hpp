// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "verify.hpp"

namespace helegeo {

struct Artifact {
    std::string name;     // file name, extension gives the format
    std::string content;
    bool primary = false; // the stage's main output in this format
};

struct RunOptions {
    // When set, only the primary artifact of the single requested stage is written, to this
    // path, in the format given by its extension.
    std::string export_file;
    bool verify_all = true;  // false: skip the 512^2 envelope comparison and loop closure
    VerifyOptions verify;
};

struct RunReport {
    std::vector<Check> checks;
    std::vector<std::string> files;    // written paths, in write order
    std::vector<std::string> summary;  // one human-readable line per stage result
    bool passed() const;
};

// Builds the scenario, runs the stages in order and writes their artifacts. Throws Error on
// schema, scenario or numeric failures; failed checks are reported, not thrown.
RunReport run(const Config& config, const RunOptions& opt = {});

// Artifacts of the individual stages (exposed for tests and the C API).
std::vector<Artifact> synthesize_artifacts(const Scenario& s, RunReport& rep);
std::vector<Artifact> envelope_artifacts(const Scenario& s, RunReport& rep);
std::vector<Artifact> geodesic_artifacts(const Scenario& s, RunReport& rep);
std::vector<Artifact> singularity_artifacts(const Scenario& s, RunReport& rep);
std::vector<Artifact> simulate_artifacts(const Scenario& s, RunReport& rep);
std::vector<Artifact> verify_artifacts(const Scenario& s, RunReport& rep, const RunOptions& opt);

std::string checks_to_json(const std::vector<Check>& checks);

}  // namespace helegeo
