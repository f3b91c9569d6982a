// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "forward_sim.hpp"
#include "scenarios.hpp"

using namespace helegeo;

namespace {

double max_radius_error(const BoundaryCurve& c, double R) {
    double e = 0.0;
    for (cplx z : c.samples()) e = std::max(e, std::abs(std::abs(z) - R));
    return e;
}

const PermeabilityField& shear_field() {
    static const PermeabilityField f = extract_kappa(
        std::make_shared<DomainFamily>(diffeo_family(DiffeoSpec{}, FamilyGrid{0.02, 0.98, 200, 64})));
    return f;
}

}  // namespace

TEST_CASE("one step of the standard flow") {
    auto field = PermeabilityField::standard();
    const double t = 0.3, R = standard_radius(t);
    BoundaryCurve c = standard_flow(t, 32);
    const double rate = 1.0 / (2.0 * R * (1.0 - t) * (1.0 - t));  // dR/dt
    for (double dt : {1e-3, 5e-4}) {
        BoundaryCurve c1 = step(c, field, dt);
        double moved = std::abs(c1.samples()[5]) - R;
        CHECK(std::abs(moved - dt * standard_kappa(R) / (kTwoPi * R)) < 10 * dt * dt);
        CHECK(max_radius_error(c1, standard_radius(t + dt)) < 10 * dt * dt * dt);
        CHECK(std::abs(moved / dt - rate) < 20 * dt);
    }
    // Scaling kappa is a change of clock.
    BoundaryCurve a = step(c, field.scaled(2.0), 1e-3), b = step(c, field, 2e-3);
    double worst = 0.0;
    for (int j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a.samples()[j] - b.samples()[j]));
    CHECK(worst < 1e-12);
    CHECK_THROWS_AS(step(c, field, 0.0), Error);
}

TEST_CASE("standard flow from B(0.05) to B(0.5)") {
    auto field = PermeabilityField::standard();
    BoundaryCurve c = standard_flow(0.05, 16);
    double t = 0.05;
    const double dt = 1e-4;
    while (t < 0.5 - 1e-12) {
        double h = std::min(dt, 0.5 - t);
        c = step(c, field, h);
        t += h;
    }
    CHECK(max_radius_error(c, 1.0) < 1e-6);
}

TEST_CASE("loop closure on the shear flow") {
    const auto& field = shear_field();
    const auto& fam = field.family();
    EvolveController ctl;
    ctl.store_dt = 0.05;
    ctl.checkpoints = {0.2, 0.4, 0.6, 0.8, 0.95};
    Evolution ev = evolve(fam.curve_at(0.05), field, 0.05, 0.95, ctl);
    const auto& labels = ev.family.t_grid();
    for (int i = 0; i < ev.family.size(); ++i) {
        BoundaryCurve ref = fam.curve_at(labels[i]);
        CHECK(hausdorff_distance(ev.family.curve(i), ref) < 1e-3 * 2.0 * ref.max_radius());
        // d(weighted area)/dt = 1.
        if (i > 0) {
            double rate = (labels[i] - labels[i - 1]) / (ev.times[i] - ev.times[i - 1]);
            CHECK(std::abs(rate - 1.0) < 1e-4);
        }
    }
    CHECK(ev.times.back() == doctest::Approx(0.95));

    // Moments of the evolved domains: z^k integrals grow as t delta_k0.
    for (int i : {4, 10, 17}) {
        auto m = area_moments(ev.family.curve(i), [&](cplx z) { return 1.0 / field.evaluate(z); }, 3,
                              AreaOptions{256, 1e-6});
        CHECK(std::abs(m[0] - labels[i]) < 1e-4);
        for (int k = 1; k <= 3; ++k) CHECK(std::abs(m[k]) < 1e-4 * std::pow(ev.family.curve(i).max_radius(), k));
    }
}

TEST_CASE("Richardson's inequality") {
    const auto& field = shear_field();
    const auto& fam = field.family();
    using K = TestFunction::Kind;
    CHECK(std::abs(richardson_check(fam, field, 0.2, 0.6, TestFunction{K::One})) < 1e-5);
    for (int k = 1; k <= 3; ++k) {
        CHECK(std::abs(richardson_check(fam, field, 0.2, 0.6, TestFunction{K::Power, k})) < 1e-5);
        CHECK(std::abs(richardson_check(fam, field, 0.2, 0.6, TestFunction{K::RePower, k})) < 1e-5);
    }
    // |z - a|^2 with a outside Omega_t: Delta h = 4 > 0 gives a strict margin.
    double margin = richardson_check(fam, field, 0.2, 0.5, TestFunction{K::DistancePower, 1, cplx(3.0, 1.0), 2.0});
    CHECK(margin > 1e-3);
    double m1 = richardson_check(fam, field, 0.2, 0.5, TestFunction{K::DistancePower, 1, cplx(0.5, 0.0), 4.0});
    CHECK(m1 > 0.0);

    // Rotation-symmetric flow: Re z integrates to 0.
    auto std_fam = standard_family(FamilyGrid{0.02, 0.98, 200, 32});
    auto std_field = PermeabilityField::standard();
    CHECK(std::abs(richardson_check(std_fam, std_field, 0.1, 0.7, TestFunction{K::RePower, 1})) < 1e-8);
    CHECK_THROWS_AS(richardson_check(std_fam, std_field, 0.7, 0.1, TestFunction{}), Error);
}
