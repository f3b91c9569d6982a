// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "curve.hpp"

namespace helegeo {

struct ConformalOptions {
    int samples = 0;         // circle samples; 0 uses the curve's sample count
    double tol = 1e-10;      // residual target (relative to the curve's max radius)
    int max_iterations = 60;
};

// Riemann map f of the unit disc onto the interior of a curve, f(0) = 0, f'(0) > 0.
// The boundary correspondence S (f(e^{i sigma}) = gamma(S(sigma))) is found by a Newton
// iteration on the Riemann-Hilbert linearization of the boundary condition.
class ConformalMap {
public:
    static ConformalMap solve(const BoundaryCurve& curve, const ConformalOptions& opt = {});

    const BoundaryCurve& curve() const { return curve_; }
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }
    double derivative_at_zero() const { return taylor_[1].real(); }
    // Taylor coefficients a_k of f(w) = sum a_k w^k.
    const std::vector<cplx>& taylor() const { return taylor_; }

    cplx f(cplx w) const;
    cplx fprime(cplx w) const;

    // Native curve parameter S(sigma) (unwrapped: S(sigma + 2 pi) = S(sigma) + 2 pi).
    double correspondence(double sigma) const;
    double correspondence_derivative(double sigma) const;
    // Circle angle sigma with S(sigma) = theta (mod 2 pi).
    double preimage_angle(double theta) const;
    // |f'(e^{i sigma})| from the correspondence: |gamma'(S)| S'.
    double boundary_speed(double sigma) const;
    // |f'| at the preimage of native parameter theta.
    double speed_at_param(double theta) const;

    // g = f^{-1}(z) for z inside the curve (damped Newton from a polar seed table).
    cplx inverse(cplx z) const;

private:
    BoundaryCurve curve_;
    std::vector<double> s_;         // S(sigma_j) on the circle grid
    std::vector<cplx> s_coef_;      // coefficients of S(sigma) - sigma
    std::vector<cplx> taylor_;
    std::vector<cplx> seed_w_, seed_z_;
    double residual_ = NAN;
    int iterations_ = 0;
};

// Harmonic measure of the boundary seen from 0 per unit native parameter (sums to 1 over
// the period); equals |dp/dn| |gamma'|. Solved directly from Symm's integral equation.
std::vector<double> harmonic_measure_density(const BoundaryCurve& c);

// |dp/dn| at the curve samples from the Riemann map, or from Symm's equation when the map's
// Newton iteration does not converge.
std::vector<double> boundary_flux(const BoundaryCurve& c, const ConformalOptions& opt = {});

// Green's function with pole normalized so that dd^c p = -delta_0: p = -(1/4 pi) log|g(z)|^2.
double green_p(const ConformalMap& map, cplx z);
// |dp/dn| at f(e^{i sigma}) = 1 / (2 pi |f'(e^{i sigma})|).
double boundary_normal_derivative(const ConformalMap& map, double sigma);

struct AreaOptions {
    int radial_nodes = 48;
    double tol = 1e-8;  // bound on |full - half resolution| (relative to max(1, |value|))
};

// Integral of w over the interior of the curve. Rays from 0 when the curve is star-shaped
// about 0, otherwise the disc through the Riemann map.
double area_wrt(const BoundaryCurve& curve, const std::function<double(cplx)>& w,
                const AreaOptions& opt = {});
cplx area_wrt_complex(const BoundaryCurve& curve, const std::function<cplx(cplx)>& w,
                      const AreaOptions& opt = {});
// int zeta^k w(zeta) dA for k = 0..kmax, sharing the evaluations of w.
std::vector<cplx> area_moments(const BoundaryCurve& curve, const std::function<double(cplx)>& w,
                               int kmax, const AreaOptions& opt = {});

}  // namespace helegeo
