// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "field.hpp"
#include "permeability.hpp"

namespace helegeo {

// Logarithmic potential u(z) = int log|z - zeta|^2 mu(zeta) dA of a density supported on the
// annulus a <= |zeta| <= b. mu is sampled on Gauss panels (uniform in tau = r^2/(1+r^2)) times
// equispaced angles; the angular integral is done exactly per Fourier mode, and the radial
// integral is split at |z| where the kernel has a kink.
class LogPotential {
public:
    LogPotential(const std::function<double(cplx)>& mu, double a, double b, int panels = 64,
                 int angles = 256);

    double operator()(cplx z) const;
    // Faster evaluation from tabulated radial mode profiles (used on grids).
    double interpolated(cplx z) const;
    double mass() const;  // int mu dA
    double inner() const { return a_; }
    double outer() const { return b_; }

private:
    static constexpr int kOrder = 8;
    double mode_sum(double rho, cplx e, int k_hi, const std::vector<double>& r,
                    const std::vector<double>& w, const std::vector<std::vector<cplx>>& g) const;
    void modes_at(double rho, std::vector<cplx>& out) const;

    double a_, b_;
    int K_ = 0;
    std::vector<double> edges_;  // panel boundaries in r
    std::vector<double> r_, w_;  // nodes and weights (w includes the factor r)
    std::vector<std::vector<cplx>> g_;  // g_[j][k]: angular coefficients at node j
    std::vector<std::vector<cplx>> table_;  // mode profiles at the nodes
    std::vector<cplx> in_, out_;  // moments for rho < a and rho > b
};

// phi(z) = int log|z - zeta|^2 (1/kappa - 1/(pi (1+|zeta|^2)^2)) dA over the region where kappa
// is not the closed-form standard permeability.
class DesignerPotential {
public:
    // with_raw also builds the unsubtracted potential used by raw().
    explicit DesignerPotential(const PermeabilityField& field, int panels = 64, int angles = 256,
                               bool with_raw = false);
    double operator()(cplx z) const { return pot_.has_value() ? (*pot_)(z) : 0.0; }
    double interpolated(cplx z) const { return pot_.has_value() ? pot_->interpolated(z) : 0.0; }
    // int_{C} log|z - zeta|^2 dA / kappa - log(1 + |z|^2), with the standard tail beyond the
    // support radius in closed form: must agree with operator().
    double raw(cplx z) const;
    double support_radius() const { return support_; }
    ScalarField on_grid(const GridSpec& g) const;

private:
    double support_ = 0.0;
    std::optional<LogPotential> pot_, raw_;
};

double synthesize_phi(const PermeabilityField& field, cplx z);

// psi_t(z) from the flow: phi - psi_t = 4 pi int_{exit(z)}^t p_s(z) ds, p_s the Green function
// of Omega_s with pole at 0. Returns the smooth part psi_t - t log|z|^2 (finite at z = 0).
double envelope_closed_smooth(const PermeabilityField& field, const DesignerPotential& phi,
                              double t, cplx z);
double envelope_closed(const PermeabilityField& field, const DesignerPotential& phi, double t,
                       cplx z);
// psi_t(z) for an increasing list of t in [0, t_max] (t = 0 gives phi), sharing the flow
// quadrature. Below t_min the standard closed form is used.
std::vector<double> envelope_closed_series(const PermeabilityField& field,
                                           const DesignerPotential& phi, cplx z,
                                           const std::vector<double>& ts);
ScalarField envelope_closed_grid(const PermeabilityField& field, const DesignerPotential& phi,
                                 double t, const GridSpec& g);

struct ObstacleOptions {
    double omega = 1.8;
    double tol = 1e-10;
    long max_sweeps = 100000;
    bool cascade = true;  // start from coarser solves
};

struct ObstacleResult {
    ScalarField psi;                 // smooth part v, lelong = t
    std::vector<unsigned char> contact;  // 1 where psi = phi
    long sweeps = 0;
    double residual = NAN;
};

// Largest grid function u <= phi with (1/4 pi) Delta_h u + b >= 0 off 0 and a log pole of
// weight t at 0, by projected SOR on the smooth part with Dirichlet data phi on the window edge.
ObstacleResult envelope_obstacle(const ScalarField& phi, double t, const ObstacleOptions& opt = {});

// min over interior nodes of pi h^2 ((1/4 pi) Delta_h v + b) for the smooth part v, i.e. the
// Gauss-Seidel update in the units of the solver residual (>= 0 when omega-subharmonic).
double subharmonicity_margin(const ObstacleResult& r);

// Bilinear interpolation of the smooth part.
double sample_bilinear(const ScalarField& f, cplx z);

// Cells where phi - psi exceeds the gap threshold (default 1e-8 + 5 h^2).
std::vector<unsigned char> recover_domain(const ScalarField& psi, const ScalarField& phi,
                                          double threshold = NAN);
// int over the recovered cells of w dA (midpoint rule).
double recovered_area(const std::vector<unsigned char>& mask, const GridSpec& g,
                      const std::function<double(cplx)>& w);

}  // namespace helegeo
