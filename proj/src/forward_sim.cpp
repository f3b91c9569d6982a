// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "forward_sim.hpp"

#include <algorithm>

#include "fft.hpp"

namespace helegeo {

namespace {

// Displacement field dt * V n at the samples of c, with |dp/dn| given per sample.
std::vector<cplx> displacement(const BoundaryCurve& c, const std::vector<double>& flux,
                               const PermeabilityField& field, double dt) {
    const int m = c.size();
    std::vector<cplx> d(m);
    std::vector<std::string> err(m);
    parallel_for(m, [&](std::size_t j) {
        try {
            cplx t = c.derivative_samples()[j];
            cplx n = cplx(0.0, -1.0) * t / std::abs(t);
            d[j] = dt * field.evaluate(c.samples()[j]) * flux[j] * n;
        } catch (const Error& e) {
            err[j] = e.what();
        }
    });
    for (const auto& e : err)
        if (!e.empty()) fail(ErrorKind::Domain, "step", e);
    return d;
}

BoundaryCurve checked_curve(std::vector<cplx> s) {
    try {
        return BoundaryCurve::from_samples(std::move(s));
    } catch (const Error& e) {
        fail(ErrorKind::Numeric, "step", std::string("self-intersection after step: ") + e.what());
    }
}

}  // namespace

BoundaryCurve step(const BoundaryCurve& curve, const PermeabilityField& field, double dt,
                   const StepOptions& opt) {
    if (!(dt > 0.0)) fail(ErrorKind::Domain, "step", "dt must be positive");
    const int m = curve.size();
    BoundaryCurve c = curve;
    std::vector<double> flux(m);
    bool have_flux = false;
    if (opt.redistribute) {
        try {
            ConformalMap map = ConformalMap::solve(curve, opt.conformal);
            std::vector<cplx> s(m);
            for (int j = 0; j < m; ++j) {
                double sig = kTwoPi * j / m;
                s[j] = curve.eval(map.correspondence(sig));
                flux[j] = 1.0 / (kTwoPi * map.boundary_speed(sig));
            }
            c = BoundaryCurve::from_samples(std::move(s), false);
            have_flux = true;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Numeric) throw;
        }
    }
    if (!have_flux) flux = boundary_flux(c, opt.conformal);

    auto d1 = displacement(c, flux, field, dt);
    std::vector<cplx> p1(m);
    for (int j = 0; j < m; ++j) p1[j] = c.samples()[j] + d1[j];
    BoundaryCurve c1 = checked_curve(p1);
    auto d2 = displacement(c1, boundary_flux(c1, opt.conformal), field, dt);

    std::vector<cplx> p(m);
    for (int j = 0; j < m; ++j) p[j] = c.samples()[j] + 0.5 * (d1[j] + d2[j]);
    auto coef = dft_analyze(p);
    const double kmax = opt.keep_fraction * (m / 2);
    for (int k = 0; k < m; ++k)
        if (std::abs(wavenumber(k, m)) > kmax) coef[k] = 0.0;
    return checked_curve(dft_synthesize(coef));
}

Evolution evolve(const BoundaryCurve& initial, const PermeabilityField& field, double t0,
                 double t1, const EvolveController& ctl) {
    if (!(t0 > 0.0 && t1 > t0 && t1 < 1.0))
        fail(ErrorKind::Domain, "evolve", "need 0 < t0 < t1 < 1");
    if (!(ctl.dt > 0.0) || !(ctl.store_dt > 0.0) || !(ctl.dt_min > 0.0))
        fail(ErrorKind::Domain, "evolve", "controller steps must be positive");
    std::vector<double> stops;
    for (double s = t0 + ctl.store_dt; s < t1 - 1e-12; s += ctl.store_dt) stops.push_back(s);
    for (double s : ctl.checkpoints)
        if (s > t0 && s < t1) stops.push_back(s);
    stops.push_back(t1);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end(), [](double a, double b) { return b - a < 1e-12; }),
                stops.end());

    auto label = [&](const BoundaryCurve& c) {
        return area_wrt(c, [&](cplx z) { return 1.0 / field.evaluate(z); }, ctl.area);
    };
    std::vector<BoundaryCurve> curves{initial};
    std::vector<double> labels{label(initial)}, times{t0};
    Evolution ev;
    BoundaryCurve c = initial;
    double tau = t0;
    std::size_t next = 0;
    double h = ctl.dt;
    while (next < stops.size()) {
        double target = stops[next];
        double cap = ctl.shrink_near_one ? std::min(ctl.dt, 2.0 * ctl.dt * (1.0 - tau)) : ctl.dt;
        double dt = std::min({h, cap, target - tau});
        try {
            c = step(c, field, dt, ctl.step);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Numeric) throw;
            h = 0.5 * dt;
            ++ev.halvings;
            if (h < ctl.dt_min)
                fail(ErrorKind::Numeric, "evolve", "step size below dt_min at t = " + std::to_string(tau));
            continue;
        }
        tau += dt;
        ++ev.steps;
        h = std::min(ctl.dt, 2.0 * h);
        if (tau >= target - 1e-12) {
            tau = target;
            curves.push_back(c);
            labels.push_back(label(c));
            times.push_back(tau);
            ++next;
        }
    }
    ev.family = DomainFamily(labels, std::move(curves));
    ev.family.kind = "evolved";
    ev.times = std::move(times);
    return ev;
}

cplx TestFunction::operator()(cplx z) const {
    switch (kind) {
        case Kind::One:
            return 1.0;
        case Kind::RePower:
            return std::pow(z, k).real();
        case Kind::Power:
            return std::pow(z, k);
        case Kind::DistancePower:
            return std::pow(std::abs(z - a), p);
    }
    return NAN;
}

double richardson_check(const DomainFamily& family, const PermeabilityField& field, double t0,
                        double t, const TestFunction& h, const AreaOptions& area) {
    if (!(t0 >= family.t_min() && t > t0 && t <= family.t_max()))
        fail(ErrorKind::Domain, "richardson_check", "need t_min <= t0 < t <= t_max");
    if (h.kind == TestFunction::Kind::DistancePower && !(h.p > 0.0))
        fail(ErrorKind::Domain, "richardson_check", "|z - a|^p needs p > 0");
    auto w = [&](cplx z) { return h(z) / field.evaluate(z); };
    cplx inner = area_wrt_complex(family.curve_at(t0), w, area);
    cplx outer = area_wrt_complex(family.curve_at(t), w, area);
    cplx v = outer - inner - (t - t0) * h(0.0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        fail(ErrorKind::Numeric, "richardson_check", "quadrature failed");
    return h.holomorphic() ? std::abs(v) : v.real();
}

}  // namespace helegeo
