// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>

#include "curve.hpp"

namespace helegeo {

struct VelocitySample {
    double value;
    bool one_sided;  // stencil could not be centred (range edge)
};

enum class ExitFlag { Ok, InsideAll, OutsideAll };

struct FlowPoint {
    double s;      // flow time of the level curve through z
    double theta;  // native parameter on that curve
    ExitFlag flag;
};

// Increasing family of curves over a t-grid with a common theta-parameterization.
class DomainFamily {
public:
    DomainFamily() = default;
    // Builds the normal-velocity table; checks nesting and positivity unless disabled.
    DomainFamily(std::vector<double> t_grid, std::vector<BoundaryCurve> curves,
                 bool check_velocity = true, bool check_nesting = true);

    std::string kind = "custom";
    // Flow coincides with the standard flow for t <= std_below and t >= std_above
    // (geometrically Omega_t = B(t) there). A NaN pair means no information.
    double std_below = NAN, std_above = NAN;
    // Exact curve generator if the family is analytic; optional.
    std::function<BoundaryCurve(double)> generator;

    const std::vector<double>& t_grid() const { return t_; }
    const std::vector<BoundaryCurve>& curves() const { return curves_; }
    const BoundaryCurve& curve(int i) const { return curves_[i]; }
    int size() const { return static_cast<int>(t_.size()); }
    int samples() const { return curves_.front().size(); }
    double t_min() const { return t_.front(); }
    double t_max() const { return t_.back(); }

    // Normal velocity table at grid nodes: velocity(i)[j] at (t_i, theta_j).
    const std::vector<double>& velocity(int i) const { return vel_[i]; }
    bool velocity_one_sided(int i) const { return one_sided_[i]; }

    VelocitySample normal_velocity(double t, double theta) const;

    // Interpolated samples at arbitrary t (Lagrange in t over the nearest grid curves).
    void interpolate(double t, std::vector<cplx>* gamma, std::vector<cplx>* dgamma,
                     std::vector<double>* vel) const;
    BoundaryCurve curve_at(double t) const;

    // gamma(theta, s) and its partial derivatives from the interpolated family.
    void eval_point(double s, double theta, cplx& g, cplx& g_theta, cplx& g_s) const;

    // Monotone bisection over the grid on the interior test, then Newton in (theta, s).
    FlowPoint locate(cplx z) const;
    // Newton from a seed only; returns false if it does not converge inside the range.
    bool locate_from(cplx z, double s0, double theta0, FlowPoint& out) const;
    double exit_time(cplx z, ExitFlag* flag = nullptr) const;

    static constexpr int kStencil = 9;

private:
    std::vector<double> t_;
    std::vector<BoundaryCurve> curves_;
    std::vector<std::vector<double>> vel_;
    std::vector<std::vector<cplx>> vel_coef_;
    std::vector<bool> one_sided_;
};

}  // namespace helegeo
