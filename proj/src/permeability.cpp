// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "permeability.hpp"

#include <algorithm>

#include "fft.hpp"

namespace helegeo {

namespace {

// Conformal angle and |f'| at the samples of one curve. Uses the Riemann map when its
// Newton iteration converges; crowded curves (long thin arms) fall back to the harmonic
// measure nu from Symm's equation, with sigma = 2 pi int nu + const and |f'| = |gamma'|/(2 pi nu).
void row_measure(const BoundaryCurve& c, const ConformalOptions& copt, std::vector<double>& sigma,
                 std::vector<double>& speed, char& used_symm) {
    const int m = c.size();
    try {
        ConformalMap map = ConformalMap::solve(c, copt);
        for (int j = 0; j < m; ++j) {
            sigma[j] = map.preimage_angle(c.theta(j));
            speed[j] = map.boundary_speed(sigma[j]);
        }
        used_symm = 0;
        return;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Numeric) throw;
    }
    used_symm = 1;
    auto nu = harmonic_measure_density(c);
    auto coef = dft_analyze(std::vector<cplx>(nu.begin(), nu.end()));
    cplx c1 = 0.0;
    for (int j = 0; j < m; ++j) {
        double th = c.theta(j), acc = coef[0].real() * th;
        for (int k = 1; k < m / 2; ++k)
            acc += 2.0 * (coef[k] * (std::polar(1.0, k * th) - 1.0) / cplx(0.0, k)).real();
        sigma[j] = kTwoPi * acc;
        speed[j] = std::abs(c.derivative_samples()[j]) / (kTwoPi * nu[j]);
        if (!(nu[j] > 0.0)) fail(ErrorKind::Numeric, "extract_kappa", "harmonic measure not positive");
        c1 += c.samples()[j] * std::polar(1.0, -sigma[j]) * nu[j];
    }
    // Rotate so that f'(0) > 0.
    double s0 = std::arg(c1);
    for (double& s : sigma) s = wrap_angle(s + s0);
}

}  // namespace

PermeabilityField PermeabilityField::analytic(std::function<double(cplx)> kappa, std::string name,
                                              double standard_outside) {
    PermeabilityField f;
    f.std_outside_ = standard_outside;
    f.analytic_ = std::move(kappa);
    f.name_ = std::move(name);
    return f;
}

PermeabilityField PermeabilityField::standard() {
    return analytic(standard_kappa, "standard");
}

double PermeabilityField::table_value(double t, double theta) const {
    if (!has_table()) fail(ErrorKind::Domain, "table_value", "field has no flow table");
    const auto& tg = family_->t_grid();
    const int n = rows();
    if (!(t >= tg[0] && t <= tg[n - 1]))
        fail(ErrorKind::Domain, "table_value", "t outside the extracted range");
    const int w = std::min(n, DomainFamily::kStencil);
    std::vector<double> nodes(tg.begin(), tg.begin() + n);
    int lo = stencil_start(nodes, t, w);
    double l[DomainFamily::kStencil];
    lagrange_basis(t, &nodes[lo], w, l);
    const int m = static_cast<int>(coef_[0].size());
    cplx e = std::polar(1.0, theta);
    double v = 0.0;
    for (int k = 0; k < w; ++k) {
        const auto& c = coef_[lo + k];
        double acc = c[0].real();
        cplx ep = 1.0;
        for (int q = 1; q < m / 2; ++q) {
            ep *= e;
            acc += 2.0 * (c[q] * ep).real();
        }
        v += l[k] * acc;
    }
    return v;
}

double PermeabilityField::evaluate(cplx z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail(ErrorKind::Domain, "evaluate_kappa", "z must be finite");
    if (analytic_) return scale_ * analytic_(z);
    const double r = std::abs(z);
    const double kstd = scale_ * standard_kappa(z);
    if (inner_ && r <= rho_in_) return kstd;
    if (outer_ && r >= rho_out_) return kstd;
    FlowPoint fp = family_->locate(z);
    if (fp.flag != ExitFlag::Ok || fp.s > t_max())
        fail(ErrorKind::Domain, "evaluate_kappa", "z outside the region where kappa is known");
    double v = scale_ * table_value(fp.s, fp.theta);
    if (inner_ && r < rho_in_ + w_in_) {
        double chi = smooth_step((r - rho_in_) / w_in_);
        v = chi * v + (1.0 - chi) * kstd;
    }
    if (outer_ && r > rho_out_ - w_out_) {
        double chi = smooth_step((rho_out_ - r) / w_out_);
        v = chi * v + (1.0 - chi) * kstd;
    }
    return v;
}

PermeabilityField PermeabilityField::scaled(double lambda) const {
    if (!(lambda > 0.0)) fail(ErrorKind::Domain, "scaled", "scale must be positive");
    PermeabilityField f = *this;
    f.scale_ *= lambda;
    for (auto& row : f.kappa_)
        for (double& k : row) k *= lambda;
    return f;
}

PermeabilityField extract_kappa(std::shared_ptr<const DomainFamily> family, const ExtractOptions& opt) {
    if (!family) fail(ErrorKind::Domain, "extract_kappa", "no family");
    const auto& tg = family->t_grid();
    int n = 0;
    while (n < family->size() && tg[n] <= opt.t_cap) ++n;
    if (n < DomainFamily::kStencil)
        fail(ErrorKind::Scenario, "extract_kappa", "fewer than 9 family rows below the cap");

    PermeabilityField f;
    f.name_ = family->kind;
    f.family_ = family;
    const int m = family->samples();
    f.kappa_.assign(n, std::vector<double>(m));
    f.speed_ = f.sigma_ = f.kappa_;
    f.coef_.resize(n);
    std::vector<std::string> errors(n);
    std::vector<char> symm(n, 0);
    parallel_for(n, [&](std::size_t i) {
        try {
            const BoundaryCurve& c = family->curve(i);
            const auto& vel = family->velocity(i);
            row_measure(c, opt.conformal, f.sigma_[i], f.speed_[i], symm[i]);
            std::vector<cplx> row(m);
            for (int j = 0; j < m; ++j) {
                if (!(f.speed_[i][j] > 0.0) || !(vel[j] > 0.0))
                    fail(ErrorKind::Numeric, "extract_kappa", "non-positive speed or velocity");
                f.kappa_[i][j] = kTwoPi * vel[j] * f.speed_[i][j];
                row[j] = f.kappa_[i][j];
            }
            f.coef_[i] = dft_analyze(row);
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    });
    for (int i = 0; i < n; ++i)
        if (!errors[i].empty())
            fail(ErrorKind::Numeric, "extract_kappa", "row t=" + std::to_string(tg[i]) + ": " + errors[i]);

    f.symm_rows_ = static_cast<int>(std::count(symm.begin(), symm.end(), 1));

    // Standard patches where the flow is known to be standard next to the table edges.
    const double lo = family->std_below, hi = family->std_above;
    if (std::isfinite(lo) && std::isfinite(hi)) {
        const double r0 = standard_radius(tg[0]);
        f.rho_in_ = r0;
        f.w_in_ = 0.1 * r0;
        f.inner_ = r0 + f.w_in_ <= standard_radius(std::min(lo, 0.999999));
        const double r1 = standard_radius(tg[n - 1]);
        f.rho_out_ = r1;
        f.w_out_ = 0.1 * r1;
        f.outer_ = r1 - f.w_out_ >= standard_radius(std::max(hi, 1e-12));
        if (!f.outer_) f.rho_out_ = INFINITY;
        if (!f.inner_) f.rho_in_ = 0.0;
        double err = 0.0;
        for (int side = 0; side < 2; ++side) {
            if (side == 0 ? !f.inner_ : !f.outer_) continue;
            double a = side == 0 ? f.rho_in_ : f.rho_out_ - f.w_out_;
            double w = side == 0 ? f.w_in_ : f.w_out_;
            for (int q = 0; q < 5; ++q) {
                double r = a + w * (q + 0.5) / 5.0;
                for (int b = 0; b < 32; ++b) {
                    cplx z = std::polar(r, kTwoPi * (b + 0.25) / 32.0);
                    FlowPoint fp = family->locate(z);
                    if (fp.flag != ExitFlag::Ok) continue;
                    double k = f.table_value(fp.s, fp.theta);
                    err = std::max(err, std::abs(k / standard_kappa(z) - 1.0));
                }
            }
        }
        f.stitch_error_ = err;
    }
    return f;
}

double evaluate_kappa(const PermeabilityField& field, cplx z) { return field.evaluate(z); }

std::vector<cplx> verify_moments(const PermeabilityField& field, double t, int kmax) {
    if (!field.has_table())
        fail(ErrorKind::Domain, "verify_moments", "field has no flow family");
    if (!(t >= field.t_min() && t <= field.t_max()))
        fail(ErrorKind::Domain, "verify_moments", "t outside the extracted range");
    if (kmax < 0) fail(ErrorKind::Domain, "verify_moments", "kmax must be >= 0");
    BoundaryCurve c = field.family().curve_at(t);
    // The diffeo bumps make 1/kappa only moderately smooth along rays: use a long radial rule.
    AreaOptions ao;
    ao.radial_nodes = 256;
    ao.tol = 1e-6;
    return area_moments(c, [&](cplx z) { return 1.0 / field.evaluate(z); }, kmax, ao);
}

}  // namespace helegeo
