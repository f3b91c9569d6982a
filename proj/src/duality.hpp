// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "conformal.hpp"
#include "potential.hpp"

namespace helegeo {

// Envelopes psi_t(z) on an increasing t-grid whose first node is t = 0 (psi_0 = phi).
class EnvelopeSource {
public:
    virtual ~EnvelopeSource() = default;
    const std::vector<double>& t_grid() const { return ts_; }
    // psi_t(z) at every grid t, pole included.
    virtual std::vector<double> series(cplx z) const = 0;

protected:
    std::vector<double> ts_;
};

// Flow-based envelopes; ts must increase, start at 0 and stay within [0, field.t_max()].
std::shared_ptr<const EnvelopeSource> closed_envelopes(std::shared_ptr<const PermeabilityField> field,
                                                       std::shared_ptr<const DesignerPotential> phi,
                                                       std::vector<double> ts);
// Grid envelopes (bilinear): phi plus one field per t > 0, t read from each field's lelong.
std::shared_ptr<const EnvelopeSource> grid_envelopes(ScalarField phi, std::vector<ScalarField> psi);

// t_k = k dt for k = 0, 1, ... while t_k <= t_hi.
std::vector<double> uniform_t_grid(double dt, double t_hi);

// Geometric s-grid on [0, s_max]: s_k = s_max (e^{a k/(n-1)} - 1)/(e^a - 1), a = log 1000.
std::vector<double> geometric_s_grid(double s_max = 8.0, int n = 200);

struct RayOptions {
    double concavity_tol = 1e-6;  // allowed excess of a chord over psi_t (data error beyond)
    double flat_tol = 1e-10;      // ties in the max over t resolve to the largest t
};

// Phi~(z, s) = sup_t psi_t(z) - (1 - t) s, s = -ln|tau|^2, sampled at points x s-grid.
class GeodesicRay {
public:
    const std::vector<double>& s_grid() const { return s_; }
    const std::vector<double>& t_grid() const { return src_->t_grid(); }
    const std::vector<cplx>& points() const { return pts_; }
    int point_count() const { return static_cast<int>(pts_.size()); }
    const EnvelopeSource& source() const { return *src_; }
    const RayOptions& options() const { return opt_; }

    double value(int p, int q) const { return val_[idx(p, q)]; }
    // Maximizing t (a vertex of the concave hull of t -> psi_t(z)).
    double maximizer(int p, int q) const { return tstar_[idx(p, q)]; }
    const std::vector<double>& envelope(int p) const { return psi_[p]; }
    // Largest chord excess over psi found at point p (<= concavity_tol).
    double concavity_defect(int p) const { return defect_[p]; }

    // Phi~ at arbitrary (z, s >= 0) from the envelope data; optional maximizer.
    double evaluate(cplx z, double s, double* tstar = nullptr) const;

private:
    friend GeodesicRay build_ray(std::shared_ptr<const EnvelopeSource>, std::vector<cplx>,
                                 std::vector<double>, const RayOptions&);
    std::size_t idx(int p, int q) const { return static_cast<std::size_t>(p) * s_.size() + q; }

    std::shared_ptr<const EnvelopeSource> src_;
    RayOptions opt_;
    std::vector<cplx> pts_;
    std::vector<double> s_;
    std::vector<std::vector<double>> psi_;
    std::vector<double> val_, tstar_, defect_;
};

GeodesicRay build_ray(std::shared_ptr<const EnvelopeSource> envelopes, std::vector<cplx> points,
                      std::vector<double> s_grid, const RayOptions& opt = {});

struct LegendreValue {
    double value = NAN;
    double s_star = NAN;
    bool at_s_max = false;  // minimizer at the end of the s-range: range insufficient
};

// psi_t(z) = inf_s Phi~(z, s) + (1 - t) s over the ray's s-range.
LegendreValue inverse_legendre(const GeodesicRay& ray, double t, cplx z);

// Phi(z, tau) = Phi~(tau z, s) + ln(1 + |tau z|^2) - ln|tau|^2 - ln(1 + |z|^2), s = -ln|tau|^2.
double phi_from_tilde(const GeodesicRay& ray, cplx z, cplx tau);

// H = dPhi~/ds on the ray samples: finite differences (second-order one-sided at s = 0,
// centred elsewhere) and the maximizer shortcut t* - 1.
struct Hamiltonian {
    int points = 0, s_samples = 0;
    std::vector<double> fd, argmax;  // row-major [point][s]
    double fd_at(int p, int q) const { return fd[static_cast<std::size_t>(p) * s_samples + q]; }
    double argmax_at(int p, int q) const {
        return argmax[static_cast<std::size_t>(p) * s_samples + q];
    }
};
Hamiltonian hamiltonian(const GeodesicRay& ray);

// max over tau of |Phi~(f_t(tau), s) - psi_t(f_t(tau)) + (1 - t) s|, s = -ln|tau|^2, with
// f_t the Riemann map of Omega_t. t must be a node of the ray's t-grid.
double harmonic_disc_residual(const GeodesicRay& ray, const ConformalMap& map_t, double t,
                              const std::vector<cplx>& taus);

}  // namespace helegeo
