// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "scenarios.hpp"

#include <algorithm>

namespace helegeo {

BoundaryCurve standard_flow(double t, int n_modes) {
    if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::Domain, "standard_flow", "t must lie in (0,1)");
    return BoundaryCurve::circle(standard_radius(t), n_modes);
}

DomainFamily standard_family(const FamilyGrid& g) {
    auto t = chebyshev_grid(g.t_lo, g.t_hi, g.n_t);
    std::vector<BoundaryCurve> curves;
    curves.reserve(t.size());
    for (double ti : t) curves.push_back(standard_flow(ti, g.n_modes));
    DomainFamily f(t, std::move(curves));
    f.kind = "standard";
    f.std_below = 1.0;
    f.std_above = 0.0;
    int n = g.n_modes;
    f.generator = [n](double s) { return standard_flow(s, n); };
    return f;
}

double DiffeoSpec::bump(double r) const {
    double tau = standard_time(r);
    return smooth_step((tau - rise0) / (rise1 - rise0)) *
           (1.0 - smooth_step((tau - fall0) / (fall1 - fall0)));
}

cplx DiffeoSpec::apply(cplx z) const {
    switch (kind) {
        case Kind::Identity: return z;
        case Kind::Rotation: return std::polar(1.0, theta0) * z;
        case Kind::Radial: {
            if (z == 0.0) return z;
            return z * (1.0 + eps * bump(std::abs(z)) * std::cos(m * (std::arg(z) - theta0)));
        }
        case Kind::Shear: return z + eps * z * z * bump(std::abs(z));
        case Kind::Angular: return z * std::polar(1.0, eps * bump(std::abs(z)));
    }
    return z;
}

double DiffeoSpec::min_jacobian() const {
    double r0 = standard_radius(std::max(rise0, 1e-6)) * 0.9;
    double r1 = standard_radius(std::min(fall1, 1.0 - 1e-6)) * 1.1;
    double jmin = INFINITY;
    for (int a = 0; a <= 200; ++a) {
        double r = r0 + (r1 - r0) * a / 200.0;
        double h = 1e-6 * r;
        for (int b = 0; b < 256; ++b) {
            cplx z = std::polar(r, kTwoPi * b / 256.0);
            cplx ax = (apply(z + h) - apply(z - h)) / (2 * h);
            cplx ay = (apply(z + cplx(0, h)) - apply(z - cplx(0, h))) / (2 * h);
            jmin = std::min(jmin, ax.real() * ay.imag() - ax.imag() * ay.real());
        }
    }
    return jmin;
}

std::pair<double, double> DiffeoSpec::support() const {
    if (kind == Kind::Identity || kind == Kind::Rotation) return {NAN, NAN};
    return {rise0, fall1};
}

std::string DiffeoSpec::name() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::Rotation: return "rotation";
        case Kind::Radial: return "radial";
        case Kind::Shear: return "shear";
        case Kind::Angular: return "angular";
    }
    return "?";
}

DiffeoSpec::Kind diffeo_kind_from_name(const std::string& s) {
    if (s == "identity") return DiffeoSpec::Kind::Identity;
    if (s == "rotation") return DiffeoSpec::Kind::Rotation;
    if (s == "radial") return DiffeoSpec::Kind::Radial;
    if (s == "shear") return DiffeoSpec::Kind::Shear;
    if (s == "angular") return DiffeoSpec::Kind::Angular;
    fail(ErrorKind::Schema, "diffeo", "unknown diffeomorphism '" + s + "'");
}

BoundaryCurve diffeo_flow(const DiffeoSpec& a, double t, int n_modes) {
    if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::Domain, "diffeo_flow", "t must lie in (0,1)");
    double r = standard_radius(t);
    return BoundaryCurve::from_function([&](double th) { return a.apply(std::polar(r, th)); },
                                        n_modes);
}

DomainFamily diffeo_family(const DiffeoSpec& a, const FamilyGrid& g) {
    if (a.rise0 >= a.rise1 || a.rise1 > a.fall0 || a.fall0 >= a.fall1)
        fail(ErrorKind::Scenario, "diffeo_family", "bump breakpoints must increase");
    double j = a.min_jacobian();
    if (!(j > 0.0))
        fail(ErrorKind::Scenario, "diffeo_family",
             "map is not an orientation-preserving diffeomorphism (min Jacobian " +
                 std::to_string(j) + ")");
    auto t = chebyshev_grid(g.t_lo, g.t_hi, g.n_t);
    std::vector<BoundaryCurve> curves;
    curves.reserve(t.size());
    for (double ti : t) curves.push_back(diffeo_flow(a, ti, g.n_modes));
    DomainFamily f(t, std::move(curves));
    f.kind = "diffeo:" + a.name();
    auto sup = a.support();
    if (std::isnan(sup.first)) {
        f.std_below = 1.0;
        f.std_above = 0.0;
    } else {
        f.std_below = sup.first;
        f.std_above = sup.second;
    }
    int n = g.n_modes;
    f.generator = [a, n](double s) { return diffeo_flow(a, s, n); };
    return f;
}

namespace {

// Closing-horseshoe template with its pinch at Z: a tube of half-width w around the circle
// |z - Z/2| = |Z|/2, whose two ends approach each other across Z.
struct Horseshoe {
    cplx Z, e, center;
    double rm, w, L, a, ell;

    explicit Horseshoe(cplx pinch, double arc) : Z(pinch) {
        double rho = std::abs(Z);
        e = Z / rho;
        center = 0.5 * Z;
        rm = 0.5 * rho;
        w = 0.6 * rm;
        L = kTwoPi * rm;
        a = arc;
        ell = 0.25 * w;
    }
    double B(double y) const {
        double w2 = w * w;
        return w2 * std::tanh(y / w2) * std::tanh((L - y) / w2);
    }
    double q(double xi) const {
        double u = std::abs(xi) - a;
        if (a <= 0.0) return xi * xi;
        if (u <= 0.0) return 0.0;
        return u * u * smooth_step(u / ell);
    }
    double F(double xi, double y, double c) const { return B(y) - q(xi) - c; }
    cplx map(double xi, double y) const {
        return center + (rm + xi) * std::polar(1.0, y / rm) * e;
    }
    cplx boundary(double u, double c) const {
        double A = a + w;
        double cu = std::cos(u), su = std::sin(u);
        double lo = 0.0, hi = 1.5;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            if (F(mid * A * cu, 0.5 * L + mid * 0.5 * L * su, c) > 0.0) lo = mid;
            else hi = mid;
        }
        double r = 0.5 * (lo + hi);
        return map(r * A * cu, 0.5 * L + r * 0.5 * L * su);
    }
    double level(cplx z, double c) const {
        cplx v = (z - center) / e;
        double phi = wrap_angle(std::arg(v));
        return F(std::abs(v) - rm, rm * phi, c);
    }
};

}  // namespace

BoundaryCurve tangency_curve(const TangencySpec& spec, double t, bool check) {
    const int m = 2 * spec.n_modes;
    double c = spec.T - t;
    std::vector<cplx> s(m);
    if (spec.pinches.size() == 1) {
        Horseshoe h(spec.pinches[0], spec.arc_half_length);
        for (int j = 0; j < m; ++j) s[j] = h.boundary(kTwoPi * j / m, c);
    } else {
        cplx p = spec.pinches[0];
        Horseshoe h(p * p, 0.0);
        cplx prev = 0.0;
        for (int j = 0; j < m; ++j) {
            cplx b = std::sqrt(h.boundary(2.0 * kTwoPi * j / m, c));
            if (j == 0) b = std::abs(b - p) < std::abs(b + p) ? b : -b;
            else if (std::abs(b - prev) > std::abs(-b - prev)) b = -b;
            s[j] = prev = b;
        }
    }
    return BoundaryCurve::from_samples(std::move(s), check && t < spec.T);
}

TangencyFamily tangency_flow(const TangencySpec& spec) {
    const auto& P = spec.pinches;
    if (P.empty() || P.size() > 2)
        fail(ErrorKind::Scenario, "tangency_flow", "supported: one pinch point/arc or an antipodal pair");
    for (auto p : P)
        if (std::abs(p) < 0.3)
            fail(ErrorKind::Scenario, "tangency_flow", "pinch point too close to 0");
    if (P.size() == 2) {
        if (std::abs(P[0] + P[1]) > 1e-12 * std::abs(P[0]))
            fail(ErrorKind::Scenario, "tangency_flow", "two pinch points must be antipodal (z0, -z0)");
        if (spec.arc_half_length > 0.0)
            fail(ErrorKind::Scenario, "tangency_flow", "pinch arcs are supported for a single site");
    }
    double rho = P.size() == 1 ? std::abs(P[0]) : std::norm(P[0]);
    double rm = 0.5 * rho, w = 0.6 * rm;
    if (spec.arc_half_length + w > 0.95 * rm)
        fail(ErrorKind::Scenario, "tangency_flow", "pinch arc too long for the template");
    if (!(spec.span > 0.0 && spec.span < 0.8 * w * w))
        fail(ErrorKind::Scenario, "tangency_flow",
             "span must be below 0.8*w^2 = " + std::to_string(0.8 * w * w));
    if (!(spec.T - spec.span > 0.0 && spec.T < 1.0))
        fail(ErrorKind::Scenario, "tangency_flow", "T - span and T must lie in (0,1)");
    if ((2 * spec.n_modes) % 8)
        fail(ErrorKind::Scenario, "tangency_flow", "2*n_modes must be divisible by 8");

    std::vector<double> t(spec.n_t);
    std::vector<BoundaryCurve> curves;
    for (int i = 0; i < spec.n_t; ++i) {
        t[i] = spec.T - spec.span + spec.span * i / (spec.n_t - 1);
        curves.push_back(tangency_curve(spec, t[i]));
    }
    TangencyFamily tf{DomainFamily(t, std::move(curves), false, false), {}, spec.T,
                      1e-3 * spec.T, spec, {}};
    tf.family.kind = "tangency";
    for (int i = 0; i + 1 < tf.family.size(); ++i)
        for (double v : tf.family.velocity(i))
            if (!(v > 0.0))
                fail(ErrorKind::Scenario, "tangency_flow",
                     "normal velocity not positive before T at t=" + std::to_string(t[i]));
    TangencySpec sp = spec;
    tf.family.generator = [sp](double s) { return tangency_curve(sp, s, false); };

    if (P.size() == 1) {
        cplx e = P[0] / std::abs(P[0]);
        tf.sites.push_back({P[0], e, 1.0, spec.arc_half_length});
        Horseshoe h(P[0], spec.arc_half_length);
        tf.level = [h, T = spec.T](cplx z, double s) { return h.level(z, T - s); };
    } else {
        for (auto p : P) tf.sites.push_back({p, p / std::abs(p), 2.0 * std::abs(p), 0.0});
        Horseshoe h(P[0] * P[0], 0.0);
        tf.level = [h, T = spec.T](cplx z, double s) { return h.level(z * z, T - s); };
    }
    return tf;
}

}  // namespace helegeo
