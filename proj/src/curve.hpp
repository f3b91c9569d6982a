// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "common.hpp"

namespace helegeo {

enum class Location { Inside, Outside, Boundary };

struct Contact {
    cplx where;
    double distance;
    bool transversal;
};

// Smooth closed curve theta -> gamma(theta), stored as 2N equispaced samples and
// their Fourier coefficients (modes -N+1 .. N-1; the Nyquist slot is zeroed).
class BoundaryCurve {
public:
    BoundaryCurve() = default;

    // Validates simplicity, winding about 0 and non-vanishing tangent unless check is false.
    static BoundaryCurve from_samples(std::vector<cplx> samples, bool check = true);
    static BoundaryCurve from_function(const std::function<cplx(double)>& g, int n_modes,
                                       bool check = true);
    static BoundaryCurve circle(double radius, int n_modes);

    int modes() const { return static_cast<int>(samples_.size()) / 2; }
    int size() const { return static_cast<int>(samples_.size()); }
    const std::vector<cplx>& samples() const { return samples_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    const std::vector<cplx>& derivative_samples() const { return dsamples_; }
    double theta(int j) const { return kTwoPi * j / size(); }

    cplx eval(double theta) const;
    cplx deriv(double theta) const;
    cplx eval_second(double theta) const;
    // Analytic continuation to complex parameter values.
    cplx eval_complex(cplx theta) const;
    cplx deriv_complex(cplx theta) const;

    // Polyline with 4N vertices used for geometric predicates.
    const std::vector<cplx>& fine() const { return fine_; }

    double winding_number(cplx z) const;
    Location locate(cplx z, double tie = 1e-12) const;
    double distance(cplx z) const;
    // Parameter of the nearest curve point (polyline seed, then Newton on the series).
    double nearest_param(cplx z) const;
    // Positive inside, negative outside.
    double signed_distance(cplx z) const;

    bool counterclockwise() const;
    double min_speed() const;
    double max_radius() const;
    double min_radius() const;
    // Non-adjacent polyline pairs closer than tol, clustered by location.
    std::vector<Contact> self_contacts(double tol) const;
    int transversal_crossings() const;
    double enclosed_area() const;

    // Reparameterize: returns the curve theta -> gamma(theta + shift).
    BoundaryCurve shifted(double shift) const;
    BoundaryCurve rotated(double angle) const;
    BoundaryCurve scaled(double factor) const;

private:
    void build();
    std::vector<cplx> samples_, coeffs_, dsamples_, fine_;
};

// Symmetric Hausdorff distance between the spectral curves, sampled at the fine vertices.
double hausdorff_distance(const BoundaryCurve& a, const BoundaryCurve& b);

}  // namespace helegeo
