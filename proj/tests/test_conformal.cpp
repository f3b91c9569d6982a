// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "conformal.hpp"
#include "doctest.h"
#include "scenarios.hpp"

using namespace helegeo;

namespace {

BoundaryCurve ellipse(double a, double b, int n = 128) {
    return BoundaryCurve::from_function([=](double t) { return cplx(a * std::cos(t), b * std::sin(t)); }, n);
}

// Conformal radius at 0 by the charge simulation method: h harmonic inside with h = log|z|
// on the curve is fitted by logarithmic charges placed outside; f'(0) = exp(h(0)).
double charge_simulation_radius(const BoundaryCurve& c, int charges) {
    const int nc = 4 * charges;
    Eigen::MatrixXd A(nc, charges + 1);
    Eigen::VectorXd rhs(nc);
    std::vector<cplx> q(charges);
    for (int k = 0; k < charges; ++k) {
        double th = kTwoPi * k / charges;
        cplx n = cplx(0.0, -1.0) * c.deriv(th) / std::abs(c.deriv(th));
        q[k] = c.eval(th) + 0.15 * n;
    }
    for (int i = 0; i < nc; ++i) {
        cplx z = c.eval(kTwoPi * (i + 0.5) / nc);
        for (int k = 0; k < charges; ++k) A(i, k) = std::log(std::abs(z - q[k]));
        A(i, charges) = 1.0;
        rhs(i) = std::log(std::abs(z));
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(rhs);
    double h0 = x(charges);
    for (int k = 0; k < charges; ++k) h0 += x(k) * std::log(std::abs(q[k]));
    return std::exp(h0);
}

}  // namespace

TEST_CASE("circle maps are dilations") {
    for (double R : {0.5, 2.0}) {
        auto m = ConformalMap::solve(BoundaryCurve::circle(R, 32));
        CHECK(m.derivative_at_zero() == doctest::Approx(R).epsilon(1e-13));
        for (double s : {0.0, 1.0, 5.5}) CHECK(m.correspondence(s) == doctest::Approx(s).epsilon(1e-12));
        CHECK(boundary_normal_derivative(m, 0.7) == doctest::Approx(1.0 / (kTwoPi * R)).epsilon(1e-12));
    }
    auto m2 = ConformalMap::solve(BoundaryCurve::circle(2.0, 32));
    CHECK(green_p(m2, 1.0) == doctest::Approx(std::log(4.0) / (4 * kPi)).epsilon(1e-13));
    CHECK(green_p(m2, 1.0) == doctest::Approx(0.110318).epsilon(1e-6));
    CHECK_THROWS_AS(green_p(m2, 3.0), Error);
    CHECK_THROWS_AS(green_p(m2, 0.0), Error);
}

TEST_CASE("ellipse conformal radius against charge simulation") {
    auto c = ellipse(1.2, 0.8);
    auto m = ConformalMap::solve(c);
    CHECK(m.residual() < 1e-10);
    double oracle = charge_simulation_radius(c, 160);
    CHECK(m.derivative_at_zero() == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("planted polynomial map is recovered") {
    auto f0 = [](cplx w) { return w + 0.1 * w * w; };
    auto c = BoundaryCurve::from_function([&](double t) { return f0(std::polar(1.0, t)); }, 64);
    auto m = ConformalMap::solve(c);
    for (cplx w : {cplx(0.3, 0.2), cplx(-0.7, 0.1), cplx(0.0, -0.95), cplx(0.5, 0.5)}) {
        CHECK(std::abs(m.f(w) - f0(w)) < 1e-8);
        cplx z = f0(w);
        double p = -std::log(std::norm(w)) / (4 * kPi);
        CHECK(green_p(m, z) == doctest::Approx(p).epsilon(1e-8));
    }
    for (double s : {0.0, 1.3, 3.0, 4.4})
        CHECK(boundary_normal_derivative(m, s) ==
              doctest::Approx(1.0 / (kTwoPi * std::abs(1.0 + 0.2 * std::polar(1.0, s)))).epsilon(1e-8));
    // Dilation by lambda scales |dp/dn| by 1/lambda.
    auto m3 = ConformalMap::solve(c.scaled(3.0));
    CHECK(boundary_normal_derivative(m3, 1.3) ==
          doctest::Approx(boundary_normal_derivative(m, 1.3) / 3.0).epsilon(1e-10));
}

TEST_CASE("mean value property and reparameterization invariance") {
    DiffeoSpec a;
    a.kind = DiffeoSpec::Kind::Radial;
    auto c = diffeo_flow(a, 0.5, 128);
    auto m = ConformalMap::solve(c);
    double mean = 0.0;
    const int n = 512;
    for (int j = 0; j < n; ++j) {
        double s = kTwoPi * j / n;
        mean += std::log(std::abs(c.eval(m.correspondence(s)))) / n;
    }
    CHECK(mean == doctest::Approx(std::log(m.derivative_at_zero())).epsilon(1e-10));

    auto m2 = ConformalMap::solve(c.shifted(0.9));
    for (cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.6), cplx(0.0, -0.9)})
        CHECK(green_p(m2, z) == doctest::Approx(green_p(m, z)).epsilon(1e-10));
    // speed_at_param and boundary_speed agree through the correspondence.
    for (double th : {0.2, 2.5})
        CHECK(m.speed_at_param(th) ==
              doctest::Approx(m.boundary_speed(m.preimage_angle(th))).epsilon(1e-12));
}

TEST_CASE("Green function against a finite-difference Dirichlet solve") {
    // Shortley-Weller 5-point Laplacian for v = p + (1/4pi) log|z|^2, harmonic with boundary
    // values (1/4pi) log|z|^2, on a 256^2 grid over the ellipse's bounding box.
    auto c = ellipse(1.2, 0.8);
    auto m = ConformalMap::solve(c);
    const int n = 256;
    const double L = 1.25, h = 2 * L / (n - 1);
    auto inside = [&](int i, int j) {
        double x = -L + i * h, y = -L + j * h;
        return x * x / 1.44 + y * y / 0.64 < 1.0;
    };
    auto bval = [](cplx z) { return std::log(std::norm(z)) / (4 * kPi); };
    // Distance along a grid direction to the ellipse (root of the quadratic).
    auto hit = [&](double x, double y, double dx, double dy) {
        double A = dx * dx / 1.44 + dy * dy / 0.64, B = 2 * (x * dx / 1.44 + y * dy / 0.64),
               C = x * x / 1.44 + y * y / 0.64 - 1.0;
        return (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A);
    };
    std::vector<int> id(n * n, -1);
    int cnt = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (inside(i, j)) id[i * n + j] = cnt++;
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(cnt);
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int r = id[i * n + j];
            if (r < 0) continue;
            double x = -L + i * h, y = -L + j * h;
            double arm[4];
            int nb[4];
            for (int k = 0; k < 4; ++k) {
                nb[k] = id[(i + di[k]) * n + j + dj[k]];
                arm[k] = nb[k] >= 0 ? h : hit(x, y, di[k], dj[k]);
            }
            double diag = 0.0;
            for (int axis = 0; axis < 2; ++axis) {
                double hp = arm[2 * axis], hm = arm[2 * axis + 1];
                double wp = 2.0 / (hp * (hp + hm)), wm = 2.0 / (hm * (hp + hm));
                diag += wp + wm;
                for (int s = 0; s < 2; ++s) {
                    int k = 2 * axis + s;
                    double wk = s == 0 ? wp : wm;
                    if (nb[k] >= 0) trip.emplace_back(r, nb[k], -wk);
                    else rhs(r) += wk * bval(cplx(x + arm[k] * di[k], y + arm[k] * dj[k]));
                }
            }
            trip.emplace_back(r, r, diag);
        }
    Eigen::SparseMatrix<double> A(cnt, cnt);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    A.makeCompressed();
    solver.compute(A);
    Eigen::VectorXd v = solver.solve(rhs);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int r = id[i * n + j];
            if (r < 0) continue;
            cplx z(-L + i * h, -L + j * h);
            if (std::abs(z) < 1e-12) continue;
            double p_fd = v(r) - bval(z);
            err = std::max(err, std::abs(p_fd - green_p(m, z)));
        }
    CHECK(err < 1e-4);
}

TEST_CASE("area quadrature") {
    auto one = [](cplx) { return 1.0; };
    CHECK(area_wrt(BoundaryCurve::circle(1.0, 32), one) == doctest::Approx(kPi).epsilon(1e-12));
    for (double R : {0.3, 1.0, 2.5})
        CHECK(area_wrt(BoundaryCurve::circle(R, 64), fs_density) ==
              doctest::Approx(R * R / (1 + R * R)).epsilon(1e-10));
    for (double t : {0.1, 0.5, 0.9})
        CHECK(std::abs(area_wrt(standard_flow(t), fs_density) - t) < 1e-8);
    // A peanut with 0 off-centre in one lobe is not star-shaped about 0, so this goes
    // through the Riemann map.
    auto wheel = BoundaryCurve::from_function(
        [](double t) { return std::polar(1.0 + 0.5 * std::cos(2 * t), t) - cplx(0.6, 0.2); }, 128);
    CHECK(area_wrt(wheel, one) == doctest::Approx(wheel.enclosed_area()).epsilon(1e-9));
}

TEST_CASE("harmonic measure from Symm's equation matches the Riemann map") {
    DiffeoSpec a;
    a.kind = DiffeoSpec::Kind::Radial;
    BoundaryCurve c = diffeo_flow(a, 0.4, 64);
    auto nu = harmonic_measure_density(c);
    ConformalMap map = ConformalMap::solve(c);
    double sum = 0.0, worst = 0.0;
    for (int j = 0; j < c.size(); ++j) {
        sum += nu[j] * kTwoPi / c.size();
        double ref = std::abs(c.derivative_samples()[j]) / (kTwoPi * map.speed_at_param(c.theta(j)));
        worst = std::max(worst, std::abs(nu[j] / ref - 1.0));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(worst < 1e-9);
}
