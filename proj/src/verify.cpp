// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "verify.hpp"

#include <algorithm>
#include <random>

namespace helegeo {

Scenario build_scenario(const ScenarioConfig& sc, const GridsConfig& g) {
    Scenario s;
    s.config = sc;
    s.grids = g;
    const FamilyGrid fg{g.t_lo, g.t_hi, g.t_samples, g.N};
    ExtractOptions opt;
    switch (sc.kind) {
        case ScenarioConfig::Kind::Standard:
            s.family = std::make_shared<DomainFamily>(standard_family(fg));
            break;
        case ScenarioConfig::Kind::Diffeo:
            s.family = std::make_shared<DomainFamily>(diffeo_family(sc.diffeo, fg));
            break;
        case ScenarioConfig::Kind::Tangency:
            s.tangency = tangency_flow(sc.tangency);
            s.family = std::make_shared<DomainFamily>(s.tangency->family);
            opt.t_cap = s.tangency->T - s.tangency->delta;
            break;
    }
    if (!s.smooth()) return s;
    s.field = std::make_shared<PermeabilityField>(extract_kappa(s.family, opt));
    {
        s.phi = std::make_shared<DesignerPotential>(*s.field);
        s.envelopes = closed_envelopes(s.field, s.phi, uniform_t_grid(g.dt, s.field->t_max()));
    }
    return s;
}

void ensure_kappa(Scenario& s) {
    if (s.field) return;
    ExtractOptions opt;
    if (s.tangency) opt.t_cap = s.tangency->T - s.tangency->delta;
    s.field = std::make_shared<PermeabilityField>(extract_kappa(s.family, opt));
}

Check make_check(int criterion, std::string suite, std::string name, const Scenario& s, double value,
                 double bound, std::string detail) {
    Check c;
    c.criterion = criterion;
    c.suite = std::move(suite);
    c.name = std::move(name);
    c.scenario = s.name();
    c.value = value;
    c.bound = bound;
    c.pass = value <= bound;
    c.detail = std::move(detail);
    return c;
}

namespace {

std::string fmt(const char* f, double x) {
    char b[64];
    std::snprintf(b, sizeof b, f, x);
    return b;
}

double diameter(const BoundaryCurve& c) {
    double d = 0.0;
    const auto& z = c.samples();
    for (std::size_t a = 0; a < z.size(); ++a)
        for (std::size_t b = a + 1; b < z.size(); ++b) d = std::max(d, std::abs(z[a] - z[b]));
    return d;
}

}  // namespace

std::vector<Check> check_kappa(const Scenario& s, const VerifyOptions& o) {
    std::vector<Check> out;
    if (!s.field) fail(ErrorKind::Domain, "check_kappa", "kappa has not been extracted");
    const auto& f = *s.field;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> uth(0.0, kTwoPi);
    if (s.config.kind == ScenarioConfig::Kind::Standard) {
        std::uniform_real_distribution<double> ut(0.05, 0.95);
        double worst = 0.0;
        for (int k = 0; k < o.kappa_points; ++k) {
            cplx z = std::polar(standard_radius(ut(rng)), uth(rng));
            worst = std::max(worst, std::abs(f.evaluate(z) / standard_kappa(z) - 1.0));
        }
        out.push_back(make_check(1, "permeability", "kappa = pi (1+|z|^2)^2, relative error", s, worst, 1e-6,
                                 std::to_string(o.kappa_points) + " points, t in [0.05, 0.95]"));
    }
    double kmin = INFINITY;
    for (int i = 0; i < f.rows(); ++i)
        for (double k : f.row_kappa(i)) kmin = std::min(kmin, k);
    out.push_back(make_check(0, "permeability", "kappa > 0 on every row", s, -kmin, 0.0, fmt("min %.6g", kmin)));
    if (s.smooth()) {
        // Darcy's law between grid rows, with an independent conformal solve.
        const auto& fam = *s.family;
        std::uniform_real_distribution<double> ut(0.1, 0.9);
        double worst = 0.0;
        for (int r = 0; r < 3; ++r) {
            double t = ut(rng);
            ConformalMap map = ConformalMap::solve(fam.curve_at(t));
            for (int j = 0; j < 16; ++j) {
                double th = kTwoPi * (j + 0.3) / 16;
                double v = fam.normal_velocity(t, th).value;
                double dpdn = boundary_normal_derivative(map, map.preimage_angle(th));
                worst = std::max(worst, std::abs(f.table_value(t, th) * dpdn / v - 1.0));
            }
        }
        out.push_back(make_check(0, "permeability", "Darcy law V = kappa |dp/dn| between rows", s, worst, 1e-6));
    }
    return out;
}

std::vector<Check> check_potential(const Scenario& s, const VerifyOptions& o) {
    std::vector<Check> out;
    if (!s.smooth()) return out;
    std::mt19937_64 rng(o.seed + 1);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    if (s.config.kind == ScenarioConfig::Kind::Standard) {
        auto f = PermeabilityField::standard();
        DesignerPotential phi(f, 32, 64, true);
        double worst = 0.0, worst_raw = 0.0, worst_table = 0.0;
        for (int k = 0; k < o.phi_points; ++k) {
            cplx z(u(rng), u(rng));
            worst = std::max(worst, std::abs(phi(z)));
            if (k < 10) {
                worst_raw = std::max(worst_raw, std::abs(phi.raw(z)));
                worst_table = std::max(worst_table, std::abs(synthesize_phi(*s.field, 0.5 * z)));
            }
        }
        out.push_back(make_check(2, "potential", "phi of the standard kappa vanishes", s, worst, 1e-8,
                                 std::to_string(o.phi_points) + " points"));
        out.push_back(make_check(2, "potential", "log-kernel identity (unsubtracted form)", s, worst_raw, 1e-6));
        out.push_back(make_check(2, "potential", "phi of the extracted standard table vanishes", s, worst_table, 1e-8));
        return out;
    }
    DesignerPotential phi(*s.field, 64, 256, true);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        cplx z = std::polar(0.15 + 0.2 * k, 0.9 * k);
        worst = std::max(worst, std::abs(phi(z) - phi.raw(z)));
    }
    out.push_back(make_check(0, "potential", "log-kernel identity (unsubtracted form)", s, worst, 1e-6));
    // (1/4 pi) Delta phi + b = 1/kappa by a 5-point Laplacian.
    const double h = 0.01;
    double worst_lap = 0.0;
    for (cplx z : {cplx(0.6, 0.3), cplx(-0.4, 0.7), cplx(0.2, -1.1)}) {
        double lap = (phi(z + h) + phi(z - h) + phi(z + cplx(0, h)) + phi(z - cplx(0, h)) - 4 * phi(z)) / (h * h);
        worst_lap = std::max(worst_lap, std::abs(lap / (4 * kPi) + fs_density(z) - 1.0 / s.field->evaluate(z)));
    }
    out.push_back(make_check(0, "potential", "(1/4 pi) Delta phi + b = 1/kappa, h = 0.01", s, worst_lap, 1e-4));
    return out;
}

std::vector<Check> check_moments(const Scenario& s, const VerifyOptions& o) {
    std::vector<Check> out;
    if (!s.smooth()) return out;
    for (double t : o.moment_ts) {
        auto m = verify_moments(*s.field, t, o.moment_kmax);
        double worst = 0.0;
        for (int k = 1; k <= o.moment_kmax; ++k) worst = std::max(worst, std::abs(m[k]));
        out.push_back(make_check(8, "permeability", fmt("moment k = 0 equals t = %g", t), s, std::abs(m[0] - t), 1e-5));
        out.push_back(make_check(8, "permeability", fmt("moments k = 1..4 vanish at t = %g", t), s, worst, 1e-5));
    }
    return out;
}

std::vector<Check> check_area_law(const Scenario& s, const VerifyOptions& o) {
    std::vector<Check> out;
    if (!s.smooth()) return out;
    for (double t : o.area_ts) {
        GridSpec g{1.5 * s.family->curve_at(t).max_radius(), o.area_grid};
        ScalarField pg = s.phi->on_grid(g);
        auto ob = envelope_obstacle(pg, t);
        auto mask = recover_domain(ob.psi, pg);
        double area = recovered_area(mask, g, [&](cplx z) { return 1.0 / s.field->evaluate(z); });
        out.push_back(make_check(3, "potential", fmt("area of recovered Omega_t equals t = %g", t), s,
                                 std::abs(area - t), std::max(1e-3, 10 * g.h()),
                                 fmt("grid h = %.4g", g.h())));
    }
    return out;
}

std::vector<Check> check_envelope_gap(const Scenario& s, const VerifyOptions& o) {
    std::vector<Check> out;
    if (!s.smooth()) return out;
    const double t = o.gap_t;
    GridSpec g{1.5 * s.family->curve_at(t).max_radius(), o.gap_grid};
    const double h = g.h();
    ScalarField pg = s.phi->on_grid(g);
    auto ob = envelope_obstacle(pg, t);
    auto cl = envelope_closed_grid(*s.field, *s.phi, t, g);
    double gap = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (std::abs(g.z(i, j)) > 3 * h) gap = std::max(gap, std::abs(ob.psi.at(i, j) - cl.at(i, j)));
    out.push_back(make_check(4, "potential", fmt("closed vs obstacle envelope gap at t = %g", t), s, gap,
                             std::max(5 * h * h, 1e-4),
                             std::to_string(g.n) + "^2 grid, " + std::to_string(ob.sweeps) + " sweeps"));
    out.push_back(make_check(0, "potential", "obstacle solve residual", s, ob.residual, 1e-9));
    return out;
}

GeodesicRay grid_ray(const Scenario& s) {
    if (!s.envelopes) fail(ErrorKind::Scenario, "geodesic", "the ray needs a flow reaching 0 and infinity");
    const int n = s.grids.ray_size;
    const double L = s.grids.window;
    std::vector<cplx> pts;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            cplx z(-L + 2 * L * i / (n - 1), -L + 2 * L * j / (n - 1));
            if (std::abs(z) > 1e-9) pts.push_back(z);
        }
    return build_ray(s.envelopes, pts, geometric_s_grid(s.grids.s_max, s.grids.s_samples));
}

std::vector<Check> check_ray(const Scenario& s, const GeodesicRay& ray, const VerifyOptions& o) {
    std::vector<Check> out;
    if (!s.smooth()) return out;
    const auto& ts = ray.t_grid();
    const auto& sg = ray.s_grid();

    // Legendre round trip.
    double worst = 0.0;
    int checked = 0, at_end = 0;
    for (int p = 0; p < ray.point_count(); ++p)
        for (std::size_t k = 0; k < ts.size(); ++k) {
            if (ts[k] < 1.0 / 3.0 || ts[k] > 2.0 / 3.0) continue;
            auto r = inverse_legendre(ray, ts[k], ray.points()[p]);
            if (r.at_s_max) ++at_end;
            worst = std::max(worst, std::abs(r.value - ray.envelope(p)[k]));
            ++checked;
        }
    out.push_back(make_check(5, "duality", "Legendre round trip psi_t -> Phi~ -> psi_t", s, worst, 1e-6,
                             std::to_string(checked) + " (z, t) pairs, t in [1/3, 2/3]"));
    out.push_back(make_check(5, "duality", "minimizers inside the s-range", s, at_end, 0.0));

    // Convexity and slopes in s.
    double worst_second = 0.0, lo = 0.0, hi = -1.0;
    for (int p = 0; p < ray.point_count(); ++p)
        for (std::size_t q = 1; q < sg.size(); ++q) {
            double d = (ray.value(p, q) - ray.value(p, q - 1)) / (sg[q] - sg[q - 1]);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            if (q + 1 < sg.size()) {
                double d2 = (ray.value(p, q + 1) - ray.value(p, q)) / (sg[q + 1] - sg[q]);
                worst_second = std::min(worst_second, d2 - d);
            }
        }
    out.push_back(make_check(11, "duality", "second differences of Phi~ in s >= -1e-10", s, -worst_second, 1e-10));
    out.push_back(make_check(11, "duality", "s-difference quotients in [-1, 0]", s, std::max({0.0, -1.0 - lo, hi}), 0.0,
                             fmt("min %.17g", lo) + fmt(", max %.17g", hi)));

    // Hamiltonian at s = 0+ against the exit time of points placed on known curves.
    std::mt19937_64 rng(o.seed + 2);
    std::uniform_real_distribution<double> ut(0.05, 0.95), uth(0.0, kTwoPi);
    std::vector<cplx> pts;
    std::vector<double> exit;
    for (int k = 0; k < o.exit_points; ++k) {
        double t = ut(rng);
        exit.push_back(t);
        pts.push_back(s.family->curve_at(t).eval(uth(rng)));
    }
    GeodesicRay r2 = build_ray(s.envelopes, pts, geometric_s_grid(s.grids.s_max, s.grids.s_samples));
    Hamiltonian H = hamiltonian(r2);
    double worst_h = 0.0;
    for (int p = 0; p < r2.point_count(); ++p) worst_h = std::max(worst_h, std::abs(H.argmax_at(p, 0) + 1.0 - exit[p]));
    const double dt = ts.size() > 1 ? ts[1] - ts[0] : 0.0;
    out.push_back(make_check(6, "duality", "H(z, 0+) + 1 equals the exit time", s, worst_h, std::max(dt, 1e-4),
                             std::to_string(o.exit_points) + " points"));

    // Harmonic discs.
    for (double target : o.disc_ts) {
        std::size_t k = 1;
        for (std::size_t i = 1; i < ts.size(); ++i)
            if (std::abs(ts[i] - target) < std::abs(ts[k] - target)) k = i;
        ConformalMap map = ConformalMap::solve(s.family->curve_at(ts[k]));
        std::vector<cplx> taus;
        for (int j = 0; j < o.disc_taus; ++j)
            taus.push_back(std::polar(0.1 + 0.9 * (j % 8 + 1) / 8.0, kTwoPi * j / o.disc_taus));
        out.push_back(make_check(7, "duality", fmt("harmonic-disc residual at t = %.4g", ts[k]), s,
                                 harmonic_disc_residual(ray, map, ts[k], taus), 1e-3,
                                 std::to_string(o.disc_taus) + " tau samples"));
    }
    return out;
}

std::vector<Check> check_loop_closure(const Scenario& s, const VerifyOptions& o) {
    std::vector<Check> out;
    if (!s.smooth()) return out;
    const double t0 = 0.05, t1 = o.checkpoints.empty() ? 0.95 : o.checkpoints.back();
    EvolveController ctl;
    ctl.store_dt = 0.05;
    ctl.checkpoints = o.checkpoints;
    Evolution ev = evolve(s.family->curve_at(t0), *s.field, t0, t1, ctl);
    for (double c : o.checkpoints) {
        int i = -1;
        for (int k = 0; k < ev.family.size(); ++k)
            if (std::abs(ev.times[k] - c) < 1e-12) i = k;
        if (i < 0) continue;
        BoundaryCurve ref = s.family->curve_at(c);
        double d = diameter(ref);
        out.push_back(make_check(9, "forward_sim", fmt("Hausdorff distance / diameter at t = %g", c), s,
                                 hausdorff_distance(ev.family.curve(i), ref) / d, 1e-3));
    }
    double drift = 0.0;
    for (int k = 0; k < ev.family.size(); ++k) drift = std::max(drift, std::abs(ev.family.t_grid()[k] - ev.times[k]));
    out.push_back(make_check(0, "forward_sim", "weighted area equals flow time", s, drift, 1e-4,
                             std::to_string(ev.steps) + " steps, " + std::to_string(ev.halvings) + " halvings"));
    return out;
}

std::vector<Check> check_singularity(const Scenario& s, const VerifyOptions&) {
    std::vector<Check> out;
    if (s.tangency) {
        DefectReport rep = c2_defect_report(*s.tangency);
        out.push_back(make_check(10, "singularity", "every sampled pinch site is a defect", s,
                                 static_cast<double>(rep.samples.size() - rep.defects()), 0.0,
                                 std::to_string(rep.defects()) + " of " + std::to_string(rep.samples.size())));
        double dp = 0.0, dm = 0.0, jump = 0.0;
        for (const auto& d : rep.samples) {
            dp = std::max(dp, std::abs(d.d_plus + 1.0));
            dm = std::max(dm, std::abs(d.d_minus - 1.0));
            jump = std::max(jump, std::abs(d.jump - 2.0));
        }
        out.push_back(make_check(10, "singularity", "one-sided derivative d+ = -1", s, dp, 0.1));
        out.push_back(make_check(10, "singularity", "one-sided derivative d- = +1", s, dm, 0.1));
        out.push_back(make_check(10, "singularity", "derivative jump = 2", s, jump, 0.2));
        return out;
    }
    ExitTimeEvaluator h(s.family, s.family->t_max(), 1e-3);
    BoundaryCurve mid = s.family->curve_at(0.45);
    std::vector<PinchSite> sites;
    for (int k = 0; k < 6; ++k) {
        cplx z = mid.eval(kTwoPi * k / 6);
        sites.push_back({z, z / std::abs(z), 1.0, 0.0});
    }
    cplx za = s.family->curve_at(0.3).eval(0.5);
    sites.push_back({za, za / std::abs(za), 1.0, 0.3});
    DefectReport rep = c2_defect_report(h, sites);
    out.push_back(make_check(10, "singularity", "smooth flow has no exit-time defects", s, rep.defects(), 0.0,
                             std::to_string(rep.samples.size()) + " probes"));
    return out;
}

std::vector<Check> verify_all(const Scenario& s, const VerifyOptions& o) {
    std::vector<Check> out;
    auto add = [&](std::vector<Check> c) { out.insert(out.end(), c.begin(), c.end()); };
    add(check_kappa(s, o));
    add(check_potential(s, o));
    add(check_moments(s, o));
    add(check_area_law(s, o));
    add(check_envelope_gap(s, o));
    if (s.smooth()) add(check_ray(s, grid_ray(s), o));
    add(check_loop_closure(s, o));
    add(check_singularity(s, o));
    return out;
}

}  // namespace helegeo
