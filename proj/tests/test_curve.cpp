// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "scenarios.hpp"

using namespace helegeo;

TEST_CASE("standard flow radii") {
    CHECK(std::abs(standard_flow(0.5).eval(0.3) - std::polar(1.0, 0.3)) < 1e-14);
    CHECK(std::abs(standard_flow(0.2).eval(1.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(standard_flow(1.0), Error);
    CHECK_THROWS_AS(standard_flow(0.0), Error);
    double prev = 1.0;
    for (double t : {1e-2, 1e-4, 1e-6}) {
        double r = std::abs(standard_flow(t, 16).eval(0.0));
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("curve predicates") {
    auto c = BoundaryCurve::circle(2.0, 64);
    CHECK(c.enclosed_area() == doctest::Approx(4 * kPi).epsilon(1e-13));
    CHECK(c.winding_number(0.5) == doctest::Approx(1.0));
    CHECK(c.winding_number(3.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.locate(cplx(1.0, 1.0)) == Location::Inside);
    CHECK(c.locate(cplx(2.5, 0.0)) == Location::Outside);
    CHECK(c.locate(c.fine()[5]) == Location::Boundary);
    CHECK(c.transversal_crossings() == 0);
    // A figure-eight fails the simplicity/winding checks.
    CHECK_THROWS_AS(BoundaryCurve::from_function(
                        [](double th) { return cplx(std::sin(th), std::sin(2 * th)); }, 32),
                    Error);
    CHECK_THROWS_AS(BoundaryCurve::from_function(
                        [](double th) { return cplx(3.0 + std::cos(th), std::sin(th)); }, 32),
                    Error);
}

TEST_CASE("Fourier truncation converges for analytic scenarios") {
    DiffeoSpec a;
    for (auto kind : {DiffeoSpec::Kind::Shear, DiffeoSpec::Kind::Radial, DiffeoSpec::Kind::Angular}) {
        a.kind = kind;
        auto c1 = diffeo_flow(a, 0.3, 256), c2 = diffeo_flow(a, 0.3, 512);
        double d = 0.0;
        for (int j = 0; j < c1.size(); ++j) d = std::max(d, std::abs(c1.samples()[j] - c2.eval(c1.theta(j))));
        CHECK(d < 1e-10);
    }
}

TEST_CASE("normal velocity") {
    auto fam = standard_family();
    for (double th : {0.0, 1.0, 4.0}) {
        auto v = fam.normal_velocity(0.5, th);
        CHECK(v.value == doctest::Approx(2.0).epsilon(1e-8));
        CHECK_FALSE(v.one_sided);
    }
    // t = 0.3 lies between grid nodes.
    double r = standard_radius(0.3);
    CHECK(fam.normal_velocity(0.3, 2.0).value ==
          doctest::Approx(1.0 / (2 * r * 0.49)).epsilon(1e-8));
    CHECK(fam.normal_velocity(fam.t_min(), 0.0).one_sided);

    // Same curves, shifted theta-correspondence per t.
    DiffeoSpec a;
    auto base = diffeo_family(a, {0.02, 0.98, 200, 64});
    std::vector<BoundaryCurve> shifted;
    for (int i = 0; i < base.size(); ++i) shifted.push_back(base.curve(i).shifted(0.3 * base.t_grid()[i]));
    DomainFamily re(base.t_grid(), std::move(shifted));
    for (double t : {0.2, 0.45}) {
        auto c = base.curve_at(t);
        for (double th : {0.5, 2.0}) {
            double v0 = base.normal_velocity(t, th).value;
            double v1 = re.normal_velocity(t, th - 0.3 * t).value;
            CHECK(v1 == doctest::Approx(v0).epsilon(1e-5));
        }
    }
}

TEST_CASE("exit time") {
    auto fam = standard_family();
    CHECK(fam.exit_time(std::polar(1.0, 0.7)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fam.exit_time(cplx(0.0, 0.5)) == doctest::Approx(0.2).epsilon(1e-12));
    ExitFlag f;
    fam.exit_time(0.0, &f);
    CHECK(f == ExitFlag::InsideAll);
    fam.exit_time(100.0, &f);
    CHECK(f == ExitFlag::OutsideAll);
    double prev = 0.0;
    for (double r = 0.2; r < 6.0; r += 0.37) {
        double e = fam.exit_time(std::polar(r, r));
        CHECK(e >= prev);
        prev = e;
    }
    auto dfam = diffeo_family(DiffeoSpec{});
    for (double t : {0.15, 0.33, 0.5}) {
        cplx z = DiffeoSpec{}.apply(std::polar(standard_radius(t), 1.1));
        CHECK(dfam.exit_time(z) == doctest::Approx(t).epsilon(1e-9));
    }
}

TEST_CASE("diffeomorphism flows") {
    DiffeoSpec rot;
    rot.kind = DiffeoSpec::Kind::Rotation;
    rot.theta0 = 0.8;
    CHECK(hausdorff_distance(diffeo_flow(rot, 0.4, 64), standard_flow(0.4, 64)) < 1e-12);
    DiffeoSpec id;
    id.kind = DiffeoSpec::Kind::Identity;
    CHECK(hausdorff_distance(diffeo_flow(id, 0.4, 64), standard_flow(0.4, 64)) < 1e-14);
    DiffeoSpec sh;
    double prev = INFINITY;
    for (double t : {0.4, 0.2, 0.1, 0.05, 0.02}) {
        double d = hausdorff_distance(diffeo_flow(sh, t, 64), standard_flow(t, 64));
        CHECK(d <= prev);
        prev = d;
    }
    CHECK(prev < 1e-14);
    CHECK(sh.min_jacobian() > 0.0);
    DiffeoSpec bad;
    bad.eps = 30.0;
    CHECK_THROWS_AS(diffeo_family(bad, {0.02, 0.98, 40, 64}), Error);
}

TEST_CASE("tangency template") {
    TangencySpec spec;
    spec.n_modes = 256;
    // Gap across the pinch along the radial line through z0 = 1.
    for (double c : {0.01, 0.005}) {
        auto curve = tangency_curve(spec, spec.T - c);
        // The two tips are the samples at u = pi/2, 3pi/2.
        int m = curve.size();
        double gap = std::abs(curve.samples()[m / 4] - curve.samples()[3 * m / 4]);
        CHECK(gap == doctest::Approx(2 * c).epsilon(0.1));
    }
    auto touch = tangency_curve(spec, spec.T, false);
    CHECK(touch.transversal_crossings() == 0);
    auto contacts = touch.self_contacts(1e-6);
    REQUIRE(contacts.size() == 1);
    CHECK(std::abs(contacts[0].where - cplx(1.0, 0.0)) < 1e-3);
    CHECK_FALSE(contacts[0].transversal);

    TangencySpec two;
    two.pinches = {cplx(0, 1.2), cplx(0, -1.2)};
    auto t2 = tangency_curve(two, two.T, false);
    auto c2 = t2.self_contacts(1e-6);
    CHECK(c2.size() == 2);

    TangencySpec near;
    near.pinches = {cplx(0.1, 0)};
    CHECK_THROWS_AS(tangency_flow(near), Error);
    TangencySpec three;
    three.pinches = {1.0, -1.0, cplx(0, 1)};
    CHECK_THROWS_AS(tangency_flow(three), Error);
}
