// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "config.hpp"
#include "duality.hpp"
#include "forward_sim.hpp"
#include "singularity.hpp"

namespace helegeo {

// A built scenario: family, extracted kappa and, for flows reaching near 0 and infinity,
// the designer potential and flow-based envelopes on the t-grid k * dt. Tangency scenarios
// leave kappa unset until ensure_kappa (the Symm fallback rows are slow).
struct Scenario {
    ScenarioConfig config;
    GridsConfig grids;
    std::shared_ptr<const DomainFamily> family;
    std::shared_ptr<const PermeabilityField> field;
    std::shared_ptr<const DesignerPotential> phi;     // null for tangency
    std::shared_ptr<const EnvelopeSource> envelopes;  // null for tangency
    std::optional<TangencyFamily> tangency;
    std::string name() const { return config.name(); }
    bool smooth() const { return !tangency.has_value(); }
};

Scenario build_scenario(const ScenarioConfig& sc, const GridsConfig& g);
void ensure_kappa(Scenario& s);

struct Check {
    int criterion = 0;  // acceptance criterion, 0 for other invariants
    std::string suite;
    std::string name;
    std::string scenario;
    double value = NAN;
    double bound = NAN;
    bool pass = false;
    std::string detail;
};

// value <= bound (NaN never passes).
Check make_check(int criterion, std::string suite, std::string name, const Scenario& s, double value,
                 double bound, std::string detail = {});

struct VerifyOptions {
    unsigned seed = 20260101;
    int kappa_points = 100;
    int phi_points = 50;
    std::vector<double> area_ts{0.1, 0.3, 0.5, 0.7};
    int area_grid = 256;
    int gap_grid = 512;
    double gap_t = 0.4;
    int exit_points = 100;
    int disc_taus = 64;
    std::vector<double> disc_ts{0.2, 0.35, 0.5, 0.65, 0.8};
    std::vector<double> moment_ts{0.2, 0.5, 0.8};
    int moment_kmax = 4;
    std::vector<double> checkpoints{0.2, 0.4, 0.6, 0.8, 0.95};
};

// Each suite returns its checks; suites that do not apply to a scenario return none.
std::vector<Check> check_kappa(const Scenario& s, const VerifyOptions& o = {});
std::vector<Check> check_potential(const Scenario& s, const VerifyOptions& o = {});
std::vector<Check> check_moments(const Scenario& s, const VerifyOptions& o = {});
std::vector<Check> check_area_law(const Scenario& s, const VerifyOptions& o = {});
std::vector<Check> check_envelope_gap(const Scenario& s, const VerifyOptions& o = {});
// Round trip, convexity and slopes of the ray on the ray_size^2 z-grid, exit time and discs.
std::vector<Check> check_ray(const Scenario& s, const GeodesicRay& ray, const VerifyOptions& o = {});
GeodesicRay grid_ray(const Scenario& s);
std::vector<Check> check_loop_closure(const Scenario& s, const VerifyOptions& o = {});
// Tangency: one defect per pinch point with slopes (-1, +1). Smooth flows: no defects.
std::vector<Check> check_singularity(const Scenario& s, const VerifyOptions& o = {});

// Every suite that applies to the scenario.
std::vector<Check> verify_all(const Scenario& s, const VerifyOptions& o = {});

}  // namespace helegeo
