// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "permeability.hpp"

namespace helegeo {

struct StepOptions {
    double keep_fraction = 2.0 / 3.0;  // Fourier modes above this fraction of N are zeroed
    bool redistribute = true;          // resample at equispaced conformal angles first
    ConformalOptions conformal;
};

// One Heun (RK2) step of the strong flow: each sample moves by dt kappa |dp/dn| along the
// outward normal. Throws a Numeric error if the result self-intersects (halve dt and retry).
BoundaryCurve step(const BoundaryCurve& curve, const PermeabilityField& field, double dt,
                   const StepOptions& opt = {});

struct EvolveController {
    double dt = 0.005;
    // Late in the flow the domain grows like (1 - t)^(-1/2): cap the step at 2 dt (1 - t).
    bool shrink_near_one = true;
    double dt_min = 1e-6;
    double store_dt = 0.02;            // spacing of stored curves in flow time
    std::vector<double> checkpoints;   // extra flow times at which curves are stored
    StepOptions step;
    AreaOptions area{256, 1e-6};       // for the weighted-area labels
};

struct Evolution {
    DomainFamily family;        // stored curves labelled by their weighted area
    std::vector<double> times;  // flow time of each stored curve
    int steps = 0, halvings = 0;
};

// Integrates from flow time t0 to t1 with the self-intersection controller. Labels are
// area_wrt(curve, 1/kappa), which the flow law makes equal to the flow time.
Evolution evolve(const BoundaryCurve& initial, const PermeabilityField& field, double t0,
                 double t1, const EvolveController& ctl = {});

struct TestFunction {
    enum class Kind { One, RePower, Power, DistancePower };
    Kind kind = Kind::One;
    int k = 1;          // exponent for RePower / Power
    cplx a = 0.0;       // centre for DistancePower
    double p = 2.0;     // exponent for DistancePower
    cplx operator()(cplx z) const;
    bool holomorphic() const { return kind == Kind::Power; }
};

// int_{Omega_t \ Omega_t0} h dA/kappa - (t - t0) h(0). Real test functions give the signed
// value (>= 0 when h is subharmonic); holomorphic z^k gives the modulus of the complex value.
double richardson_check(const DomainFamily& family, const PermeabilityField& field, double t0,
                        double t, const TestFunction& h, const AreaOptions& area = {256, 1e-6});

}  // namespace helegeo
