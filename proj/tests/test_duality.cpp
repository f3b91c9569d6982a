// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "duality.hpp"
#include "scenarios.hpp"

using namespace helegeo;

namespace {

FamilyGrid grid64() { return {0.02, 0.98, 200, 64}; }

struct Scenario {
    std::shared_ptr<const PermeabilityField> field;
    std::shared_ptr<const DesignerPotential> phi;
    std::shared_ptr<const EnvelopeSource> source;
};

Scenario make(DomainFamily fam) {
    Scenario s;
    s.field = std::make_shared<PermeabilityField>(extract_kappa(std::make_shared<DomainFamily>(std::move(fam))));
    s.phi = std::make_shared<DesignerPotential>(*s.field);
    s.source = closed_envelopes(s.field, s.phi, uniform_t_grid(0.005, s.field->t_max()));
    return s;
}

const Scenario& standard_scn() {
    static const Scenario s = make(standard_family(grid64()));
    return s;
}

const Scenario& shear_scn() {
    static const Scenario s = make(diffeo_family(DiffeoSpec{}, grid64()));
    return s;
}

std::vector<cplx> grid_points(int n, double L) {
    std::vector<cplx> pts;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) pts.emplace_back(-L + 2 * L * i / (n - 1), -L + 2 * L * j / (n - 1));
    return pts;
}

double standard_envelope(double t, cplx z) {
    double r2 = std::norm(z), R2 = t / (1.0 - t);
    if (r2 >= R2) return 0.0;
    return t * std::log(r2) - std::log1p(r2) - t * std::log(R2) + std::log1p(R2);
}

// Phi~ for the standard flow by brute-force maximization over a dense grid of t in [0, t_hi].
double standard_tilde_oracle(cplx z, double s, double t_hi) {
    double best = -INFINITY;
    for (int k = 0; k <= 200000; ++k) {
        double t = t_hi * k / 200000.0;
        best = std::max(best, (t == 0.0 ? 0.0 : standard_envelope(t, z)) - (1.0 - t) * s);
    }
    return best;
}

void check_round_trip(const GeodesicRay& ray) {
    const auto& ts = ray.t_grid();
    double worst = 0.0;
    int checked = 0;
    for (int p = 0; p < ray.point_count(); ++p)
        for (std::size_t k = 0; k < ts.size(); ++k) {
            if (ts[k] < ts.back() / 3 || ts[k] > 2 * ts.back() / 3) continue;
            auto r = inverse_legendre(ray, ts[k], ray.points()[p]);
            CHECK_FALSE(r.at_s_max);
            worst = std::max(worst, std::abs(r.value - ray.envelope(p)[k]));
            ++checked;
        }
    CHECK(checked > 1000);
    CHECK(worst < 1e-6);
}

void check_convexity(const GeodesicRay& ray) {
    const auto& s = ray.s_grid();
    double worst_second = 0.0, lo = 0.0, hi = -1.0;
    for (int p = 0; p < ray.point_count(); ++p) {
        for (std::size_t q = 1; q < s.size(); ++q) {
            double d = (ray.value(p, q) - ray.value(p, q - 1)) / (s[q] - s[q - 1]);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            if (q + 1 < s.size()) {
                double d2 = (ray.value(p, q + 1) - ray.value(p, q)) / (s[q + 1] - s[q]);
                worst_second = std::min(worst_second, d2 - d);
            }
            CHECK(ray.maximizer(p, q) >= ray.maximizer(p, q - 1));
        }
    }
    CHECK(worst_second >= -1e-10);
    CHECK(lo >= -1.0 - 1e-12);
    CHECK(hi <= 1e-12);
}

}  // namespace

TEST_CASE("geometric s-grid") {
    auto s = geometric_s_grid(8.0, 200);
    CHECK(s.size() == 200);
    CHECK(s.front() == 0.0);
    CHECK(s.back() == 8.0);
    CHECK(s[1] == doctest::Approx(8.0 * std::expm1(std::log(1000.0) / 199) / 999.0).epsilon(1e-12));
    for (std::size_t q = 2; q < s.size(); ++q) CHECK(s[q] - s[q - 1] > s[q - 1] - s[q - 2]);
}

TEST_CASE("standard ray: boundary slice, maximizers and brute-force oracle") {
    const auto& sc = standard_scn();
    std::vector<cplx> pts{{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.0}, {0.3, -1.2}, {2.0, 1.0}};
    GeodesicRay ray = build_ray(sc.source, pts, geometric_s_grid());
    const auto& s = ray.s_grid();
    for (int p = 0; p < ray.point_count(); ++p) {
        CHECK(std::abs(ray.value(p, 0)) < 1e-7);  // phi = 0
        for (std::size_t q = 0; q < s.size(); q += 17)
            for (std::size_t k = 0; k < ray.t_grid().size(); ++k)
                CHECK(ray.value(p, q) >= ray.envelope(p)[k] - (1.0 - ray.t_grid()[k]) * s[q]);
    }
    // |z| = 1 exits at 1/2; for s > 0 the maximizer solves log(t/(1-t)) = s.
    CHECK(ray.maximizer(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    Hamiltonian h = hamiltonian(ray);
    CHECK(h.argmax_at(0, 0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(h.fd_at(0, 0) + 0.5) < 0.005);
    for (std::size_t q = 1; q < s.size(); ++q) {
        if (s[q] > 3.5) break;
        double tex = std::exp(s[q]) / (1.0 + std::exp(s[q]));
        CHECK(std::abs(ray.maximizer(0, q) - tex) <= 0.005);
    }
    // Phi~ against a dense one-dimensional maximization.
    for (int p = 0; p < ray.point_count(); ++p)
        for (std::size_t q = 0; q < s.size(); q += 23)
            CHECK(std::abs(ray.value(p, q) - standard_tilde_oracle(pts[p], s[q], ray.t_grid().back())) < 5e-5);
}

TEST_CASE("standard ray: inverse Legendre, convexity and Hamiltonian") {
    const auto& sc = standard_scn();
    GeodesicRay ray = build_ray(sc.source, grid_points(12, 1.5), geometric_s_grid());
    check_round_trip(ray);
    check_convexity(ray);

    auto r = inverse_legendre(ray, 0.5, cplx(0.5, 0.0));
    CHECK(std::abs(r.value - (-0.223144)) < 1e-5);
    CHECK(std::abs(r.value - standard_envelope(0.5, 0.5)) < 1e-8);
    CHECK(r.value <= ray.evaluate(0.5, 0.0) + 1e-15);
    // A point not in the ray's list.
    auto r2 = inverse_legendre(ray, 0.4, cplx(0.2, 0.6));
    CHECK(std::abs(r2.value - standard_envelope(0.4, cplx(0.2, 0.6))) < 1e-8);
    CHECK_THROWS_AS(inverse_legendre(ray, 1.0, cplx(0.5, 0.0)), Error);

    Hamiltonian h = hamiltonian(ray);
    const double dt = 0.005;
    for (int p = 0; p < ray.point_count(); ++p) {
        double ex = std::min(0.975, standard_time(std::abs(ray.points()[p])));
        CHECK(std::abs(h.argmax_at(p, 0) + 1.0 - ex) <= dt);
        CHECK(std::abs(h.fd_at(p, 0) - h.argmax_at(p, 0)) <= dt);
        for (int q = 0; q < h.s_samples; ++q) {
            CHECK(h.argmax_at(p, q) >= -1.0);
            CHECK(h.argmax_at(p, q) <= 0.0);
        }
    }
}

TEST_CASE("standard ray: Phi from Phi~, circle invariance, harmonic discs") {
    const auto& sc = standard_scn();
    GeodesicRay ray = build_ray(sc.source, {cplx(1.0, 0.0)}, geometric_s_grid());
    // |tau| = 1 gives phi(tau z) = 0.
    CHECK(std::abs(phi_from_tilde(ray, cplx(0.7, 0.2), std::polar(1.0, 0.3))) < 1e-7);
    // Phi(z, tau) against the brute-force ray at three points, s = 1.
    const double m = std::exp(-0.5);
    for (cplx z : {cplx(1.0, 0.0), cplx(0.4, 0.9), cplx(-1.6, 0.3)}) {
        cplx w = m * z;
        double oracle = standard_tilde_oracle(w, 1.0, ray.t_grid().back()) + std::log1p(std::norm(w)) + 1.0 - std::log1p(std::norm(z));
        double v = phi_from_tilde(ray, z, m);
        CHECK(std::abs(v - oracle) < 5e-5);
        // Only |tau| matters once z is rotated along (radial data).
        for (int k = 1; k < 8; ++k) CHECK(std::abs(phi_from_tilde(ray, z, std::polar(m, kTwoPi * k / 8)) - v) < 1e-8);
    }
    CHECK_THROWS_AS(phi_from_tilde(ray, 1.0, 0.0), Error);

    for (double t : {0.2, 0.5, 0.7}) {
        ConformalMap map = ConformalMap::solve(standard_flow(t, 64));
        std::vector<cplx> taus;
        for (int j = 0; j < 64; ++j) taus.push_back(std::polar(0.05 + 0.95 * (j % 8 + 1) / 8.0, kTwoPi * j / 64));
        CHECK(harmonic_disc_residual(ray, map, t, taus) < 1e-5);
        CHECK_THROWS_AS(harmonic_disc_residual(ray, map, t, {cplx(1.5, 0.0)}), Error);
    }
}

TEST_CASE("shear ray: round trip, convexity, exit time, harmonic discs") {
    const auto& sc = shear_scn();
    GeodesicRay ray = build_ray(sc.source, grid_points(12, 1.5), geometric_s_grid());
    check_round_trip(ray);
    check_convexity(ray);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<cplx> pts;
    while (pts.size() < 100) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) > 0.05) pts.push_back(z);
    }
    GeodesicRay r2 = build_ray(sc.source, pts, geometric_s_grid());
    Hamiltonian h = hamiltonian(r2);
    for (int p = 0; p < r2.point_count(); ++p) {
        double ex = sc.field->family().exit_time(pts[p]);
        if (!std::isfinite(ex)) ex = standard_time(std::abs(pts[p]));
        CHECK(std::abs(h.argmax_at(p, 0) + 1.0 - ex) <= std::max(0.005, 1e-4));
    }

    ConformalMap map = ConformalMap::solve(sc.field->family().curve_at(0.5));
    std::vector<cplx> taus;
    for (int j = 0; j < 64; ++j) taus.push_back(std::polar(0.1 + 0.9 * (j % 8 + 1) / 8.0, kTwoPi * j / 64));
    CHECK(harmonic_disc_residual(ray, map, 0.5, taus) < 1e-3);
}

TEST_CASE("non-concave envelopes are rejected") {
    GridSpec g{2.0, 16};
    ScalarField phi(g, 0.0);
    std::vector<ScalarField> psi;
    // A dip at t = 1/2 between two equal levels.
    for (double t : {0.25, 0.5, 0.75}) {
        ScalarField f(g, t == 0.5 ? -2.0 : -0.5);
        f.lelong = t;
        psi.push_back(f);
    }
    auto src = grid_envelopes(phi, psi);
    CHECK_THROWS_AS(build_ray(src, {cplx(0.5, 0.5)}, geometric_s_grid()), Error);
    try {
        build_ray(src, {cplx(0.5, 0.5)}, geometric_s_grid());
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Data);
    }
}
