// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "potential.hpp"
#include "scenarios.hpp"

using namespace helegeo;

namespace {

FamilyGrid grid64() { return {0.02, 0.98, 200, 64}; }

const PermeabilityField& standard_table() {
    static const PermeabilityField f =
        extract_kappa(std::make_shared<DomainFamily>(standard_family(grid64())));
    return f;
}

const PermeabilityField& shear_table() {
    static const PermeabilityField f = [] {
        DiffeoSpec a;
        return extract_kappa(std::make_shared<DomainFamily>(diffeo_family(a, grid64())));
    }();
    return f;
}

const DesignerPotential& shear_phi() {
    static const DesignerPotential p(shear_table(), 64, 256, true);
    return p;
}

// psi_t for the standard flow: phi = 0 outside B(t), and inside the C^{1,1} radial profile.
double standard_envelope(double t, cplx z) {
    double r2 = std::norm(z), R2 = t / (1.0 - t);
    if (r2 >= R2) return 0.0;
    return t * std::log(r2) - std::log1p(r2) - t * std::log(R2) + std::log1p(R2);
}

}  // namespace

TEST_CASE("log potential of a uniform disc") {
    // mu = 1 on |zeta| < 1: u = pi (|z|^2 - 1) inside, pi log|z|^2 outside.
    LogPotential u([](cplx) { return 1.0; }, 0.0, 1.0, 16, 32);
    CHECK(u.mass() == doctest::Approx(kPi).epsilon(1e-13));
    for (cplx z : {cplx(0.0), cplx(0.3, 0.1), cplx(-0.7, 0.5), cplx(2.0, 1.0)}) {
        double r2 = std::norm(z);
        double ref = r2 < 1.0 ? kPi * (r2 - 1.0) : kPi * std::log(r2);
        CHECK(std::abs(u(z) - ref) < 1e-11);
        CHECK(std::abs(u.interpolated(z) - ref) < 1e-9);
    }
}

TEST_CASE("log potential of an off-centre Gaussian matches direct quadrature") {
    cplx c(0.4, -0.2);
    auto mu = [c](cplx z) { return std::exp(-std::norm(z - c) / 0.05); };
    LogPotential u(mu, 0.0, 2.0, 48, 128);
    // Direct: polar rule around the target with exact-in-r treatment is not needed far away.
    cplx z(2.5, 1.0);
    double ref = 0.0;
    const int n = 400;
    double h = 2.0 / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx q = c + cplx(-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h);
            ref += std::log(std::norm(z - q)) * mu(q) * h * h;
        }
    CHECK(std::abs(u(z) - ref) < 1e-8);
    CHECK(std::abs(u.mass() - kPi * 0.05) < 1e-10);
}

TEST_CASE("designer potential of the standard permeability vanishes") {
    auto f = PermeabilityField::standard();
    DesignerPotential phi(f, 32, 64, true);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        cplx z(u(rng), u(rng));
        CHECK(std::abs(phi(z)) < 1e-8);
        if (k < 10) CHECK(std::abs(phi.raw(z)) < 1e-6);
    }
    CHECK(std::abs(synthesize_phi(standard_table(), cplx(0.4, 0.3))) < 1e-8);
}

TEST_CASE("designer potential: raw form and Laplacian") {
    const auto& phi = shear_phi();
    for (int k = 0; k < 10; ++k) {
        cplx z = std::polar(0.15 + 0.2 * k, 0.9 * k);
        CHECK(std::abs(phi(z) - phi.raw(z)) < 1e-6);
        CHECK(std::abs(phi(z) - phi.interpolated(z)) < 1e-9);
    }
    // (1/4 pi) Delta phi + b = 1/kappa, second order in h.
    cplx z(0.6, 0.3);
    double err[2];
    for (int q = 0; q < 2; ++q) {
        double h = q == 0 ? 0.02 : 0.01;
        double lap = (phi(z + h) + phi(z - h) + phi(z + cplx(0, h)) + phi(z - cplx(0, h)) - 4 * phi(z)) / (h * h);
        err[q] = std::abs(lap / (4 * kPi) + fs_density(z) - 1.0 / shear_table().evaluate(z));
    }
    CHECK(err[1] < 2e-5);
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("closed-form envelope of the standard flow") {
    const auto& f = standard_table();
    DesignerPotential phi(f, 32, 64);
    CHECK(envelope_closed(f, phi, 0.5, cplx(0.5, 0.0)) == doctest::Approx(-0.223144).epsilon(1e-6));
    for (cplx z : {cplx(0.3, 0.2), cplx(-0.05, 0.1), cplx(0.0, -0.9), cplx(1.2, 0.1), cplx(0.01, 0.0)})
        for (double t : {0.1, 0.5, 0.8})
            CHECK(std::abs(envelope_closed(f, phi, t, z) - standard_envelope(t, z)) < 1e-7);
    CHECK_THROWS_AS(envelope_closed(f, phi, 0.5, 0.0), Error);
    // Smooth part at 0: -t log R^2 + log(1 + R^2) - 0.
    double t = 0.3;
    CHECK(envelope_closed_smooth(f, phi, t, 0.0) ==
          doctest::Approx(-t * std::log(t / (1 - t)) + std::log(1.0 / (1 - t))).epsilon(1e-8));
}

TEST_CASE("closed-form envelope: outside points, ordering in t, locality") {
    const auto& f = shear_table();
    const auto& phi = shear_phi();
    cplx out(1.3, 0.4);
    CHECK(std::abs(envelope_closed(f, phi, 0.3, out) - phi(out)) < 1e-8);
    // Concave and non-increasing in t at fixed z.
    for (cplx z : {cplx(0.2, 0.1), cplx(-0.5, 0.4), cplx(0.1, -0.8)}) {
        std::vector<double> v;
        for (int k = 0; k <= 12; ++k) v.push_back(envelope_closed(f, phi, 0.05 + 0.05 * k, z));
        for (int k = 1; k <= 12; ++k) CHECK(v[k] <= v[k - 1] + 1e-10);
        for (int k = 1; k < 12; ++k) CHECK(v[k + 1] - 2 * v[k] + v[k - 1] <= 1e-8);
    }
    // Changing the flow (hence kappa) after t = 0.38 leaves phi - psi_t unchanged for t < 0.38.
    DiffeoSpec b;
    b.fall0 = 0.5;
    b.fall1 = 0.9;
    PermeabilityField g = extract_kappa(std::make_shared<DomainFamily>(diffeo_family(b, grid64())));
    DesignerPotential phig(g, 32, 128);
    for (cplx z : {cplx(0.2, 0.1), cplx(-0.3, 0.25)}) {
        double d1 = phi(z) - envelope_closed(f, phi, 0.3, z);
        double d2 = phig(z) - envelope_closed(g, phig, 0.3, z);
        CHECK(std::abs(d1 - d2) < 1e-10);
    }
}

TEST_CASE("obstacle envelope of the standard potential") {
    GridSpec g{1.5, 128};
    ScalarField phi(g, 0.0);
    auto r = envelope_obstacle(phi, 0.5);
    CHECK(r.residual < 1e-10);
    CHECK(subharmonicity_margin(r) >= -1e-10);
    auto mask = recover_domain(r.psi, phi);
    const double h = g.h();
    int bad = 0, bad_rec = 0;
    double top = -INFINITY;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double rr = std::abs(g.z(i, j));
            bool free = !r.contact[j * g.n + i];
            if ((free && rr > 1.0 + 2 * h) || (!free && rr < 1.0 - 2 * h)) ++bad;
            // The gap grows like d^2/2 at the free boundary, so the 5h^2 threshold trims ~3.2h.
            bool in = mask[j * g.n + i];
            if ((in && rr > 1.0 + 2 * h) || (!in && rr < 1.0 - 4 * h)) ++bad_rec;
            top = std::max(top, r.psi.value(i, j));
        }
    CHECK(top <= 1e-12);  // psi <= phi = 0
    CHECK(bad == 0);
    CHECK(bad_rec == 0);
    double area = recovered_area(mask, g, fs_density);
    CHECK(std::abs(area - 0.5) < std::max(1e-3, 10 * h));
    // Against the exact envelope away from 0.
    double err = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (std::abs(g.z(i, j)) > 3 * h) err = std::max(err, std::abs(r.psi.value(i, j) - standard_envelope(0.5, g.z(i, j))));
    CHECK(err < std::max(5 * h * h, 1e-4));
    CHECK_THROWS_AS(envelope_obstacle(phi, 1.5), Error);
}

TEST_CASE("obstacle and closed-form envelopes agree on a diffeo flow") {
    const auto& f = shear_table();
    const auto& phi = shear_phi();
    const double t = 0.4;
    GridSpec g{1.5 * f.family().curve_at(t).max_radius(), 96};
    ScalarField pg = phi.on_grid(g);
    auto ob = envelope_obstacle(pg, t);
    auto cl = envelope_closed_grid(f, phi, t, g);
    double gap = 0.0, h = g.h();
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (std::abs(g.z(i, j)) > 3 * h) gap = std::max(gap, std::abs(ob.psi.at(i, j) - cl.at(i, j)));
    CHECK(gap < std::max(5 * h * h, 1e-4));
    auto mask = recover_domain(ob.psi, pg);
    double area = recovered_area(mask, g, [&](cplx z) { return 1.0 / f.evaluate(z); });
    CHECK(std::abs(area - t) < std::max(1e-3, 10 * h));
}
