// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "conformal.hpp"
#include "family.hpp"

namespace helegeo {

struct ExtractOptions {
    // Rows with t > t_cap are not extracted (tangency families stop at T - delta).
    double t_cap = INFINITY;
    ConformalOptions conformal;
};

// Permeability kappa on the swept region, stored per family row (t_i, theta_j), with the
// closed-form standard patches pi (1 + |z|^2)^2 near 0 and near infinity where the flow is
// standard. Patches are blended into the table by a C-infinity partition of unity.
class PermeabilityField {
public:
    // Field given in closed form everywhere (no table); standard pi (1+|z|^2)^2 for
    // |z| >= standard_outside.
    static PermeabilityField analytic(std::function<double(cplx)> kappa, std::string name,
                                      double standard_outside = 10.0);
    static PermeabilityField standard();

    bool has_table() const { return family_ != nullptr; }
    const DomainFamily& family() const { return *family_; }
    std::shared_ptr<const DomainFamily> family_ptr() const { return family_; }
    const std::string& name() const { return name_; }

    int rows() const { return static_cast<int>(kappa_.size()); }
    double row_t(int i) const { return family_->t_grid()[i]; }
    const std::vector<double>& row_kappa(int i) const { return kappa_[i]; }
    // |f_t'| at each sample and the conformal angle of each sample.
    const std::vector<double>& row_speed(int i) const { return speed_[i]; }
    const std::vector<double>& row_sigma(int i) const { return sigma_[i]; }
    double t_min() const { return family_->t_min(); }
    double t_max() const { return row_t(rows() - 1); }

    // Table value at flow coordinates (9-point Lagrange in t, trigonometric in theta).
    double table_value(double t, double theta) const;
    double evaluate(cplx z) const;

    // kappa is the closed-form standard permeability for |z| >= this radius (and, for table
    // fields, for |z| <= rho_in()); infinite if unknown.
    double standard_outside() const {
        if (scale_ != 1.0) return INFINITY;
        return analytic_ ? std_outside_ : rho_out_;
    }

    bool has_inner_patch() const { return inner_; }
    bool has_outer_patch() const { return outer_; }
    double rho_in() const { return rho_in_; }
    double rho_out() const { return rho_out_; }
    double blend_in() const { return w_in_; }
    double blend_out() const { return w_out_; }
    // Largest relative table/patch mismatch found over the blend zones.
    double stitch_error() const { return stitch_error_; }
    // Rows whose |f'| came from the harmonic measure instead of the Riemann map.
    int symm_rows() const { return symm_rows_; }

    // Multiplies kappa by a constant (time reparameterization of the flow).
    PermeabilityField scaled(double lambda) const;

private:
    friend PermeabilityField extract_kappa(std::shared_ptr<const DomainFamily>, const ExtractOptions&);
    std::string name_;
    std::function<double(cplx)> analytic_;
    std::shared_ptr<const DomainFamily> family_;
    std::vector<std::vector<double>> kappa_, speed_, sigma_;
    std::vector<std::vector<cplx>> coef_;
    bool inner_ = false, outer_ = false;
    double rho_in_ = 0.0, rho_out_ = INFINITY, w_in_ = 0.0, w_out_ = 0.0;
    double stitch_error_ = 0.0;
    double scale_ = 1.0;
    double std_outside_ = INFINITY;
    int symm_rows_ = 0;
};

// kappa = V / |dp/dn| = 2 pi V |f_t'| on every family row.
PermeabilityField extract_kappa(std::shared_ptr<const DomainFamily> family,
                                const ExtractOptions& opt = {});
double evaluate_kappa(const PermeabilityField& field, cplx z);

// Moments m_k = int_{Omega_t} zeta^k dA / kappa for k = 0..kmax.
std::vector<cplx> verify_moments(const PermeabilityField& field, double t, int kmax);

}  // namespace helegeo
