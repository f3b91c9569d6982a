// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "family.hpp"

#include <algorithm>

#include "fft.hpp"

namespace helegeo {

DomainFamily::DomainFamily(std::vector<double> t_grid, std::vector<BoundaryCurve> curves,
                           bool check_velocity, bool check_nesting)
    : t_(std::move(t_grid)), curves_(std::move(curves)) {
    const int n = size();
    if (n < kStencil || static_cast<int>(curves_.size()) != n)
        fail(ErrorKind::Domain, "DomainFamily", "need at least 9 curves, one per t");
    for (int i = 1; i < n; ++i)
        if (!(t_[i] > t_[i - 1]))
            fail(ErrorKind::Domain, "DomainFamily", "t-grid must be strictly increasing");
    if (t_.front() <= 0.0 || t_.back() >= 1.0)
        fail(ErrorKind::Domain, "DomainFamily", "t-grid must lie in (0,1)");
    const int m = curves_.front().size();
    for (auto& c : curves_) {
        if (c.size() != m)
            fail(ErrorKind::Domain, "DomainFamily", "curves must share the sample count");
        if (!c.counterclockwise())
            fail(ErrorKind::Scenario, "DomainFamily", "curves must be counterclockwise");
    }

    vel_.assign(n, std::vector<double>(m));
    vel_coef_.resize(n);
    one_sided_.assign(n, false);
    for (int i = 0; i < n; ++i) {
        int lo = stencil_start(t_, t_[i], kStencil);
        one_sided_[i] = (lo != i - kStencil / 2);
        std::vector<double> nodes(t_.begin() + lo, t_.begin() + lo + kStencil);
        auto w = fd_weights(t_[i], nodes, 1);
        const auto& dg = curves_[i].derivative_samples();
        std::vector<cplx> row(m);
        for (int j = 0; j < m; ++j) {
            cplx gt = 0.0;
            for (int k = 0; k < kStencil; ++k) gt += w[k] * curves_[lo + k].samples()[j];
            cplx nrm = cplx(0.0, -1.0) * dg[j] / std::abs(dg[j]);
            vel_[i][j] = (gt * std::conj(nrm)).real();
            row[j] = vel_[i][j];
        }
        vel_coef_[i] = dft_analyze(row);
    }

    if (check_velocity) {
        for (int i = 0; i < n; ++i)
            for (double v : vel_[i])
                if (!(v > 0.0))
                    fail(ErrorKind::Scenario, "DomainFamily",
                         "normal velocity not positive at t=" + std::to_string(t_[i]));
    }
    if (check_nesting) {
        const int stride = std::max(1, m / 64);
        for (int i = 0; i + 1 < n; ++i)
            for (int j = 0; j < m; j += stride)
                if (curves_[i + 1].locate(curves_[i].samples()[j], 0.0) != Location::Inside)
                    fail(ErrorKind::Scenario, "DomainFamily",
                         "curves not strictly nested at t=" + std::to_string(t_[i]));
    }
}

VelocitySample DomainFamily::normal_velocity(double t, double theta) const {
    if (t < t_.front() || t > t_.back())
        fail(ErrorKind::Domain, "normal_velocity", "t outside the family range");
    int lo = stencil_start(t_, t, kStencil);
    double l[kStencil];
    lagrange_basis(t, &t_[lo], kStencil, l);
    const int m = samples();
    bool edge = false;
    double v = 0.0;
    cplx w = std::polar(1.0, theta);
    for (int k = 0; k < kStencil; ++k) {
        const auto& c = vel_coef_[lo + k];
        double acc = c[0].real();
        cplx wp = 1.0;
        for (int q = 1; q < m / 2; ++q) {
            wp *= w;
            acc += 2.0 * (c[q] * wp).real();
        }
        v += l[k] * acc;
        edge = edge || one_sided_[lo + k];
    }
    return {v, edge};
}

void DomainFamily::interpolate(double t, std::vector<cplx>* gamma, std::vector<cplx>* dgamma,
                               std::vector<double>* vel) const {
    int lo = stencil_start(t_, t, kStencil);
    double l[kStencil];
    lagrange_basis(t, &t_[lo], kStencil, l);
    const int m = samples();
    if (gamma) gamma->assign(m, 0.0);
    if (dgamma) dgamma->assign(m, 0.0);
    if (vel) vel->assign(m, 0.0);
    for (int k = 0; k < kStencil; ++k) {
        const auto& c = curves_[lo + k];
        for (int j = 0; j < m; ++j) {
            if (gamma) (*gamma)[j] += l[k] * c.samples()[j];
            if (dgamma) (*dgamma)[j] += l[k] * c.derivative_samples()[j];
            if (vel) (*vel)[j] += l[k] * vel_[lo + k][j];
        }
    }
}

BoundaryCurve DomainFamily::curve_at(double t) const {
    std::vector<cplx> g;
    interpolate(t, &g, nullptr, nullptr);
    return BoundaryCurve::from_samples(std::move(g), false);
}

void DomainFamily::eval_point(double s, double theta, cplx& g, cplx& g_theta, cplx& g_s) const {
    int lo = stencil_start(t_, s, kStencil);
    std::vector<double> nodes(t_.begin() + lo, t_.begin() + lo + kStencil);
    auto w0 = fd_weights(s, nodes, 0);
    auto w1 = fd_weights(s, nodes, 1);
    g = g_theta = g_s = 0.0;
    for (int k = 0; k < kStencil; ++k) {
        const auto& c = curves_[lo + k];
        cplx p = c.eval(theta), d = c.deriv(theta);
        g += w0[k] * p;
        g_theta += w0[k] * d;
        g_s += w1[k] * p;
    }
}

bool DomainFamily::locate_from(cplx z, double s0, double theta0, FlowPoint& out) const {
    double s = std::clamp(s0, t_.front(), t_.back()), th = theta0;
    const double tol = 1e-13 * (1.0 + std::abs(z));
    for (int it = 0; it < 40; ++it) {
        cplx g, gt, gs;
        eval_point(s, th, g, gt, gs);
        cplx f = g - z;
        if (std::abs(f) < tol) {
            out = {s, wrap_angle(th), ExitFlag::Ok};
            return true;
        }
        double det = gt.real() * gs.imag() - gt.imag() * gs.real();
        if (det == 0.0) return false;
        double dth = (f.real() * gs.imag() - f.imag() * gs.real()) / det;
        double ds = (gt.real() * f.imag() - gt.imag() * f.real()) / det;
        double scale = std::max({1.0, std::abs(dth) / 0.5, std::abs(ds) / 0.05});
        th -= dth / scale;
        s -= ds / scale;
        if (s < t_.front() - 1e-12 || s > t_.back() + 1e-12) return false;
        s = std::clamp(s, t_.front(), t_.back());
    }
    return false;
}

FlowPoint DomainFamily::locate(cplx z) const {
    FlowPoint fp;
    double s0 = standard_time(std::abs(z));
    if (s0 > t_.front() && s0 < t_.back() && locate_from(z, s0, std::arg(z), fp)) return fp;

    const int n = size();
    if (curves_.front().locate(z) == Location::Inside) return {t_.front(), 0.0, ExitFlag::InsideAll};
    if (curves_.back().locate(z) == Location::Outside) return {t_.back(), 0.0, ExitFlag::OutsideAll};
    int lo = 0, hi = n - 1;  // z not inside curve lo, z not outside curve hi
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        if (curves_[mid].locate(z) == Location::Inside) hi = mid;
        else lo = mid;
    }
    double dl = curves_[lo].signed_distance(z), dh = curves_[hi].signed_distance(z);
    double s = t_[lo] + (t_[hi] - t_[lo]) * (-dl) / (dh - dl);
    const auto& fine = curves_[lo].fine();
    int best = 0;
    for (int j = 1; j < static_cast<int>(fine.size()); ++j)
        if (std::abs(fine[j] - z) < std::abs(fine[best] - z)) best = j;
    double th = kTwoPi * best / fine.size();
    if (locate_from(z, s, th, fp)) return fp;
    // Slow path: bisection in continuous t on interpolated curves.
    double a = t_[lo], b = t_[hi];
    for (int it = 0; it < 50 && b - a > 1e-14; ++it) {
        double c = 0.5 * (a + b);
        if (curve_at(c).locate(z) == Location::Inside) b = c;
        else a = c;
    }
    return {0.5 * (a + b), th, ExitFlag::Ok};
}

double DomainFamily::exit_time(cplx z, ExitFlag* flag) const {
    FlowPoint fp = locate(z);
    if (flag) *flag = fp.flag;
    return fp.s;
}

}  // namespace helegeo
