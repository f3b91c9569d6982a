// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "field.hpp"
#include "scenarios.hpp"

namespace helegeo {

enum class ExitStatus : unsigned char {
    Covered,       // from the family up to the cap
    Extrapolated,  // covered between the cap and the end time (linear in t)
    NeverCovered,  // not covered before the end time: value = end time
    BelowRange     // inside the first curve of the family: value = its t
};

// h(z) = sup{t : z not in Omega_t} from a family. Exit times up to t_end - delta come from
// the family itself; later ones are extrapolated linearly from the signed distances to the
// curves at t_end - 10 delta and t_end - delta.
class ExitTimeEvaluator {
public:
    ExitTimeEvaluator(std::shared_ptr<const DomainFamily> family, double t_end, double delta);
    explicit ExitTimeEvaluator(const TangencyFamily& tf);

    double operator()(cplx z, ExitStatus* status = nullptr) const;
    double t_end() const { return t_end_; }
    double cap() const { return t_end_ - delta_; }

private:
    std::shared_ptr<const DomainFamily> fam_;
    double t_end_, delta_;
    double t_a_ = NAN, t_b_ = NAN;
    BoundaryCurve a_, b_;
};

struct ExitWindow {
    int site = 0;
    double half_width = 0.05;  // in frame units
    int n = 81;
    double rotation = 0.0;  // extra rotation of the sampling frame
};

// Exit times on a square grid in the local frame (u, v) of a pinch site, with
// z = where + direction e^{i rotation} (u + i v) / scale.
struct ExitTimeField {
    ScalarField field;  // grid in frame coordinates
    std::vector<ExitStatus> status;
    PinchSite site;
    double rotation = 0.0;
    cplx to_plane(cplx frame) const;
};

ExitTimeField exit_time_field(const TangencyFamily& tf, const ExitWindow& window = {});

struct OneSided {
    double d_plus = NAN, d_minus = NAN;
};

// Second-order one-sided differences of f at point along +direction (d_plus) and backwards
// along -direction (d_minus), both as derivatives in the +direction coordinate. The grid
// version samples the field bilinearly with step h; the function version uses step `step`.
OneSided one_sided_derivatives(const ScalarField& f, cplx point, cplx direction);
OneSided one_sided_derivatives(const std::function<double(cplx)>& f, cplx point, cplx direction,
                               double step);

struct DefectOptions {
    double step = 0.005;        // difference step in frame units
    int directions = 90;        // normal search over [0, pi)
    int arc_samples = 16;
    double frame_rotation = 0.0;  // start angle of the normal search
};

struct Defect {
    int site = 0;
    cplx location;
    cplx normal;  // detected, unit, in the plane
    double d_plus = NAN, d_minus = NAN, jump = NAN;
    bool defect = false;  // false: inconclusive
    std::string verdict() const { return defect ? "defect" : "inconclusive"; }
};

struct DefectReport {
    std::vector<Defect> samples;
    double noise_floor = NAN;  // 10 * step
    int defects() const;
};

// Jump of the exit-time derivative across each pinch point (or >= arc_samples points along a
// pinch arc). A sign-opposed pair d_plus < 0 < d_minus with jump above the noise floor means
// H(., 1) = h - 1 is not differentiable there, so Phi~ and Phi are not twice differentiable
// at (z, 1) and along its circle orbit (z / tau, tau), |tau| = 1.
DefectReport c2_defect_report(const TangencyFamily& tf, const DefectOptions& opt = {});
// Same detector on any family at the given sites (smooth controls).
DefectReport c2_defect_report(const ExitTimeEvaluator& h, const std::vector<PinchSite>& sites,
                              const DefectOptions& opt = {});

}  // namespace helegeo
