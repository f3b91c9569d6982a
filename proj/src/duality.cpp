// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "duality.hpp"

#include <algorithm>

namespace helegeo {

namespace {

void check_t_grid(const std::vector<double>& ts, const char* where) {
    if (ts.size() < 3) fail(ErrorKind::Domain, where, "need at least 3 envelope levels");
    if (ts[0] != 0.0) fail(ErrorKind::Domain, where, "the t-grid must start at 0 (psi_0 = phi)");
    for (std::size_t k = 1; k < ts.size(); ++k)
        if (!(ts[k] > ts[k - 1]) || !(ts[k] < 1.0))
            fail(ErrorKind::Domain, where, "t-grid must increase within [0, 1)");
}

class ClosedSource final : public EnvelopeSource {
public:
    ClosedSource(std::shared_ptr<const PermeabilityField> f,
                 std::shared_ptr<const DesignerPotential> p, std::vector<double> ts)
        : field_(std::move(f)), phi_(std::move(p)) {
        ts_ = std::move(ts);
    }
    std::vector<double> series(cplx z) const override {
        return envelope_closed_series(*field_, *phi_, z, ts_);
    }

private:
    std::shared_ptr<const PermeabilityField> field_;
    std::shared_ptr<const DesignerPotential> phi_;
};

class GridSource final : public EnvelopeSource {
public:
    GridSource(ScalarField phi, std::vector<ScalarField> psi) : phi_(std::move(phi)), psi_(std::move(psi)) {
        ts_.push_back(0.0);
        for (const auto& f : psi_) ts_.push_back(f.lelong);
    }
    std::vector<double> series(cplx z) const override {
        if (z == 0.0) fail(ErrorKind::Domain, "envelope series", "z = 0 is the pole");
        const double lz = std::log(std::norm(z));
        std::vector<double> v(ts_.size());
        v[0] = sample_bilinear(phi_, z) + phi_.lelong * lz;
        for (std::size_t k = 0; k < psi_.size(); ++k)
            v[k + 1] = sample_bilinear(psi_[k], z) + psi_[k].lelong * lz;
        return v;
    }

private:
    ScalarField phi_;
    std::vector<ScalarField> psi_;
};

// sup_k psi_k - (1 - t_k) s, ties within flat_tol going to the largest t.
double conjugate(const std::vector<double>& ts, const std::vector<double>& psi, double s,
                 double flat_tol, double* tstar) {
    double best = -INFINITY;
    for (std::size_t k = 0; k < ts.size(); ++k) best = std::max(best, psi[k] - (1.0 - ts[k]) * s);
    if (tstar) {
        for (std::size_t k = ts.size(); k-- > 0;)
            if (psi[k] - (1.0 - ts[k]) * s >= best - flat_tol) {
                *tstar = ts[k];
                break;
            }
    }
    return best;
}

// Largest excess of a neighbour chord over the middle value.
double chord_excess(const std::vector<double>& ts, const std::vector<double>& psi) {
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
        double w = (ts[k + 1] - ts[k]) / (ts[k + 1] - ts[k - 1]);
        double chord = w * psi[k - 1] + (1.0 - w) * psi[k + 1];
        worst = std::max(worst, chord - psi[k]);
    }
    return worst;
}

}  // namespace

std::shared_ptr<const EnvelopeSource> closed_envelopes(std::shared_ptr<const PermeabilityField> field,
                                                       std::shared_ptr<const DesignerPotential> phi,
                                                       std::vector<double> ts) {
    if (!field || !phi) fail(ErrorKind::Domain, "closed_envelopes", "missing field or potential");
    check_t_grid(ts, "closed_envelopes");
    if (!field->has_table() || ts.back() > field->t_max() + 1e-12)
        fail(ErrorKind::Domain, "closed_envelopes", "t-grid beyond the extracted flow");
    return std::make_shared<ClosedSource>(std::move(field), std::move(phi), std::move(ts));
}

std::shared_ptr<const EnvelopeSource> grid_envelopes(ScalarField phi, std::vector<ScalarField> psi) {
    for (const auto& f : psi)
        if (f.grid.n != phi.grid.n || f.grid.L != phi.grid.L)
            fail(ErrorKind::Domain, "grid_envelopes", "envelope grids differ");
    auto src = std::make_shared<GridSource>(std::move(phi), std::move(psi));
    check_t_grid(src->t_grid(), "grid_envelopes");
    return src;
}

std::vector<double> uniform_t_grid(double dt, double t_hi) {
    if (!(dt > 0.0) || !(t_hi >= 2 * dt) || !(t_hi < 1.0))
        fail(ErrorKind::Domain, "uniform_t_grid", "need 0 < 2 dt <= t_hi < 1");
    std::vector<double> ts;
    for (int k = 0; k * dt <= t_hi; ++k) ts.push_back(k * dt);
    return ts;
}

std::vector<double> geometric_s_grid(double s_max, int n) {
    if (!(s_max > 0.0) || n < 3) fail(ErrorKind::Domain, "geometric_s_grid", "need s_max > 0, n >= 3");
    const double a = std::log(1000.0), den = std::expm1(a);
    std::vector<double> s(n);
    for (int k = 0; k < n; ++k) s[k] = s_max * std::expm1(a * k / (n - 1)) / den;
    s.back() = s_max;
    return s;
}

double GeodesicRay::evaluate(cplx z, double s, double* tstar) const {
    if (!(s >= 0.0)) fail(ErrorKind::Domain, "GeodesicRay::evaluate", "s must be >= 0");
    return conjugate(t_grid(), src_->series(z), s, opt_.flat_tol, tstar);
}

GeodesicRay build_ray(std::shared_ptr<const EnvelopeSource> envelopes, std::vector<cplx> points,
                      std::vector<double> s_grid, const RayOptions& opt) {
    if (!envelopes) fail(ErrorKind::Domain, "build_ray", "no envelopes");
    if (s_grid.size() < 3 || s_grid[0] != 0.0)
        fail(ErrorKind::Domain, "build_ray", "s-grid must start at 0 with at least 3 samples");
    for (std::size_t q = 1; q < s_grid.size(); ++q)
        if (!(s_grid[q] > s_grid[q - 1])) fail(ErrorKind::Domain, "build_ray", "s-grid must increase");

    GeodesicRay ray;
    ray.src_ = std::move(envelopes);
    ray.opt_ = opt;
    ray.pts_ = std::move(points);
    ray.s_ = std::move(s_grid);
    const auto& ts = ray.t_grid();
    const std::size_t np = ray.pts_.size(), ns = ray.s_.size();
    ray.psi_.resize(np);
    ray.val_.resize(np * ns);
    ray.tstar_.resize(np * ns);
    ray.defect_.resize(np);
    std::vector<std::string> errors(np);
    parallel_for(np, [&](std::size_t p) {
        try {
            auto psi = ray.src_->series(ray.pts_[p]);
            ray.defect_[p] = chord_excess(ts, psi);
            for (std::size_t q = 0; q < ns; ++q)
                ray.val_[p * ns + q] = conjugate(ts, psi, ray.s_[q], opt.flat_tol, &ray.tstar_[p * ns + q]);
            ray.psi_[p] = std::move(psi);
        } catch (const Error& e) {
            errors[p] = e.what();
        }
    });
    for (std::size_t p = 0; p < np; ++p) {
        if (!errors[p].empty()) fail(ErrorKind::Numeric, "build_ray", errors[p]);
        if (ray.defect_[p] > opt.concavity_tol) {
            cplx z = ray.pts_[p];
            fail(ErrorKind::Data, "build_ray",
                 "envelopes not concave in t at z = (" + std::to_string(z.real()) + ", " +
                     std::to_string(z.imag()) + ")",
                 ray.defect_[p]);
        }
    }
    return ray;
}

LegendreValue inverse_legendre(const GeodesicRay& ray, double t, cplx z) {
    if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::Domain, "inverse_legendre", "t must lie in (0, 1)");
    const auto& pts = ray.points();
    std::vector<double> psi;
    auto it = std::find(pts.begin(), pts.end(), z);
    if (it != pts.end()) psi = ray.envelope(static_cast<int>(it - pts.begin()));
    else psi = ray.source().series(z);
    const auto& ts = ray.t_grid();
    // Phi~(s) + (1 - t) s = max_k psi_k + (t_k - t) s: convex and piecewise linear in s.
    auto g = [&](double s) {
        double best = -INFINITY;
        for (std::size_t k = 0; k < ts.size(); ++k) best = std::max(best, psi[k] + (ts[k] - t) * s);
        return best;
    };
    const auto& sg = ray.s_grid();
    const int n = static_cast<int>(sg.size());
    int qb = 0;
    double gb = g(sg[0]);
    for (int q = 1; q < n; ++q) {
        double v = g(sg[q]);
        if (v < gb) {
            gb = v;
            qb = q;
        }
    }
    LegendreValue out;
    out.at_s_max = qb == n - 1;
    double a = sg[std::max(0, qb - 1)], b = sg[std::min(n - 1, qb + 1)];
    const double r = 0.5 * (3.0 - std::sqrt(5.0));
    double x1 = a + r * (b - a), x2 = b - r * (b - a), g1 = g(x1), g2 = g(x2);
    for (int it2 = 0; it2 < 200 && b - a > 1e-15 * (1.0 + b); ++it2) {
        if (g1 <= g2) {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = a + r * (b - a);
            g1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = b - r * (b - a);
            g2 = g(x2);
        }
    }
    out.s_star = g1 <= g2 ? x1 : x2;
    out.value = std::min(g1, g2);
    if (gb <= out.value) {
        out.value = gb;
        out.s_star = sg[qb];
    }
    return out;
}

double phi_from_tilde(const GeodesicRay& ray, cplx z, cplx tau) {
    const double m = std::abs(tau);
    if (m == 0.0) fail(ErrorKind::Domain, "phi_from_tilde", "tau = 0");
    if (m > 1.0 + 1e-12) fail(ErrorKind::Domain, "phi_from_tilde", "|tau| must be <= 1");
    const cplx w = tau * z;
    const double s = std::max(0.0, -std::log(m * m));
    return ray.evaluate(w, s) + std::log1p(std::norm(w)) + s - std::log1p(std::norm(z));
}

Hamiltonian hamiltonian(const GeodesicRay& ray) {
    Hamiltonian h;
    h.points = ray.point_count();
    const auto& s = ray.s_grid();
    const int ns = static_cast<int>(s.size());
    h.s_samples = ns;
    h.fd.resize(static_cast<std::size_t>(h.points) * ns);
    h.argmax.resize(h.fd.size());
    std::vector<std::vector<double>> w(ns);
    std::vector<int> first(ns);
    for (int q = 0; q < ns; ++q) {
        first[q] = q == 0 ? 0 : (q == ns - 1 ? ns - 3 : q - 1);
        w[q] = fd_weights(s[q], {s[first[q]], s[first[q] + 1], s[first[q] + 2]}, 1);
    }
    for (int p = 0; p < h.points; ++p)
        for (int q = 0; q < ns; ++q) {
            double d = 0.0;
            for (int k = 0; k < 3; ++k) d += w[q][k] * ray.value(p, first[q] + k);
            h.fd[static_cast<std::size_t>(p) * ns + q] = d;
            h.argmax[static_cast<std::size_t>(p) * ns + q] = ray.maximizer(p, q) - 1.0;
        }
    return h;
}

double harmonic_disc_residual(const GeodesicRay& ray, const ConformalMap& map_t, double t,
                              const std::vector<cplx>& taus) {
    const auto& ts = ray.t_grid();
    auto it = std::find_if(ts.begin(), ts.end(), [&](double x) { return std::abs(x - t) <= 1e-12; });
    if (it == ts.end() || t == 0.0)
        fail(ErrorKind::Domain, "harmonic_disc_residual", "t is not a positive node of the t-grid");
    const std::size_t k = it - ts.begin();
    for (cplx tau : taus) {
        double m = std::abs(tau);
        if (!(m > 0.0 && m <= 1.0 + 1e-12))
            fail(ErrorKind::Domain, "harmonic_disc_residual", "tau samples must satisfy 0 < |tau| <= 1");
    }
    std::vector<double> res(taus.size());
    parallel_for(taus.size(), [&](std::size_t j) {
        cplx w = map_t.f(taus[j]);
        double s = std::max(0.0, -std::log(std::norm(taus[j])));
        auto psi = ray.source().series(w);
        double tilde = conjugate(ts, psi, s, ray.options().flat_tol, nullptr);
        res[j] = std::abs(tilde - psi[k] + (1.0 - t) * s);
    });
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, r);
    return worst;
}

}  // namespace helegeo
