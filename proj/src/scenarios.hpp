// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "family.hpp"

namespace helegeo {

struct FamilyGrid {
    double t_lo = 0.02;
    double t_hi = 0.98;
    int n_t = 200;
    int n_modes = 256;
};

BoundaryCurve standard_flow(double t, int n_modes = 256);
DomainFamily standard_family(const FamilyGrid& g = {});

// Built-in diffeomorphisms of P^1 fixing 0. The bump beta is a C-infinity plateau in
// the variable tau = |z|^2/(1+|z|^2): it rises on [rise0, rise1], falls on [fall0, fall1]
// and vanishes outside [rise0, fall1], so the map is the identity near 0 and near infinity.
struct DiffeoSpec {
    enum class Kind { Identity, Rotation, Radial, Shear, Angular };
    Kind kind = Kind::Shear;
    double eps = 0.1;
    int m = 3;            // angular frequency for Radial
    double theta0 = 0.0;  // phase for Radial, angle for Rotation
    double rise0 = 0.03, rise1 = 0.38, fall0 = 0.38, fall1 = 0.80;

    double bump(double r) const;
    cplx apply(cplx z) const;
    // Smallest Jacobian determinant over a polar sample of the support.
    double min_jacobian() const;
    // t-interval outside which the flow is standard; empty (NaN) when standard everywhere.
    std::pair<double, double> support() const;
    std::string name() const;
};

DiffeoSpec::Kind diffeo_kind_from_name(const std::string& s);

BoundaryCurve diffeo_flow(const DiffeoSpec& a, double t, int n_modes = 256);
DomainFamily diffeo_family(const DiffeoSpec& a, const FamilyGrid& g = {});

// Pinch site with its local frame: x along `direction`, y along i*direction, frame unit
// length 1/scale (a Euclidean offset d corresponds to frame offset scale*d).
struct PinchSite {
    cplx where;
    cplx direction;
    double scale = 1.0;
    double half_length = 0.0;  // > 0 for a pinch arc along the x-axis
};

struct TangencySpec {
    std::vector<cplx> pinches{cplx(1.0, 0.0)};
    double arc_half_length = 0.0;  // > 0 turns a single pinch point into a pinch arc
    double T = 0.5;
    double span = 0.04;  // the family covers [T - span, T]
    int n_t = 201;
    int n_modes = 256;
};

struct TangencyFamily {
    DomainFamily family;
    std::vector<PinchSite> sites;
    double T = 0.5;
    double delta = 5e-4;  // conformal/usage cap below T
    TangencySpec spec;
    // Implicit interior indicator of the template (positive inside), for diagnostics.
    std::function<double(cplx, double)> level;
};

TangencyFamily tangency_flow(const TangencySpec& spec);
// Curve of the template at any t in (T - span, T], including the touching curve at T.
BoundaryCurve tangency_curve(const TangencySpec& spec, double t, bool check = true);

}  // namespace helegeo
