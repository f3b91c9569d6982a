// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "permeability.hpp"
#include "scenarios.hpp"

using namespace helegeo;

namespace {

FamilyGrid small_grid() { return {0.02, 0.98, 200, 64}; }

const PermeabilityField& shear_field() {
    static const PermeabilityField f = [] {
        DiffeoSpec a;
        a.kind = DiffeoSpec::Kind::Shear;
        return extract_kappa(std::make_shared<DomainFamily>(diffeo_family(a, small_grid())));
    }();
    return f;
}

}  // namespace

TEST_CASE("extracted kappa of the standard flow is pi (1+|z|^2)^2") {
    auto fam = std::make_shared<DomainFamily>(standard_family(small_grid()));
    PermeabilityField f = extract_kappa(fam);
    CHECK(f.has_inner_patch());
    CHECK(f.has_outer_patch());
    CHECK(f.stitch_error() < 1e-8);
    // On the unit circle kappa = 4 pi exactly.
    CHECK(std::abs(f.evaluate(cplx(0.6, 0.8)) / (4 * kPi) - 1.0) < 1e-8);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ut(0.05, 0.95), uth(0.0, kTwoPi);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        cplx z = std::polar(standard_radius(ut(rng)), uth(rng));
        worst = std::max(worst, std::abs(f.evaluate(z) / standard_kappa(z) - 1.0));
    }
    CHECK(worst < 1e-6);
    // Patches near 0 and infinity, and the blend zone.
    CHECK(f.evaluate(0.0) == doctest::Approx(kPi));
    CHECK(std::abs(f.evaluate(cplx(0.0, 20.0)) / standard_kappa(cplx(0.0, 20.0)) - 1.0) < 1e-14);
    cplx zb = std::polar(f.rho_in() + 0.5 * f.blend_in(), 1.0);
    CHECK(std::abs(f.evaluate(zb) / standard_kappa(zb) - 1.0) < 1e-8);
}

TEST_CASE("rotated flow gives the same kappa") {
    DiffeoSpec a;
    a.kind = DiffeoSpec::Kind::Rotation;
    a.theta0 = 0.7;
    PermeabilityField f = extract_kappa(std::make_shared<DomainFamily>(diffeo_family(a, small_grid())));
    double worst = 0.0;
    for (int k = 0; k < 40; ++k) {
        cplx z = std::polar(0.3 + 0.05 * k, 0.37 * k);
        worst = std::max(worst, std::abs(f.evaluate(z) / standard_kappa(z) - 1.0));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("kappa and Darcy's law agree between grid rows") {
    const auto& f = shear_field();
    CHECK(f.stitch_error() < 1e-8);
    const auto& fam = f.family();
    for (double t : {0.1234, 0.3333, 0.6071}) {
        ConformalMap map = ConformalMap::solve(fam.curve_at(t));
        double worst = 0.0;
        for (int j = 0; j < 16; ++j) {
            double th = kTwoPi * (j + 0.3) / 16;
            double v = fam.normal_velocity(t, th).value;
            double dpdn = boundary_normal_derivative(map, map.preimage_angle(th));
            worst = std::max(worst, std::abs(f.table_value(t, th) * dpdn / v - 1.0));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("moments of dA/kappa are t for k = 0 and vanish otherwise") {
    auto fam = std::make_shared<DomainFamily>(standard_family(small_grid()));
    PermeabilityField fs = extract_kappa(fam);
    for (const PermeabilityField* f : {static_cast<const PermeabilityField*>(&fs), &shear_field()}) {
        for (double t : {0.2, 0.5}) {
            auto m = verify_moments(*f, t, 4);
            CHECK(std::abs(m[0] - t) < 1e-5);
            for (int k = 1; k <= 4; ++k) CHECK(std::abs(m[k]) < 1e-5);
        }
    }
}

TEST_CASE("closed-form fields and rescaling") {
    auto f = PermeabilityField::standard();
    CHECK_FALSE(f.has_table());
    CHECK(f.evaluate(cplx(1.0, 0.0)) == doctest::Approx(4 * kPi));
    CHECK(f.scaled(2.5).evaluate(cplx(1.0, 0.0)) == doctest::Approx(10 * kPi));
    CHECK_THROWS_AS(f.scaled(-1.0), Error);
    CHECK_THROWS_AS(verify_moments(f, 0.5, 2), Error);
}

TEST_CASE("tangency field stops at the cap and has no patches") {
    TangencySpec spec;
    spec.n_modes = 64;
    spec.n_t = 41;
    auto tf = tangency_flow(spec);
    ExtractOptions opt;
    opt.t_cap = tf.T - tf.delta;
    PermeabilityField f = extract_kappa(std::make_shared<DomainFamily>(tf.family), opt);
    CHECK(f.t_max() <= tf.T - tf.delta);
    CHECK_FALSE(f.has_inner_patch());
    CHECK_THROWS_AS(f.evaluate(0.0), Error);
    CHECK(f.symm_rows() > 0);
    double kmin = INFINITY;
    for (int i = 0; i < f.rows(); ++i)
        for (double k : f.row_kappa(i)) kmin = std::min(kmin, k);
    CHECK(kmin > 0.0);
}
