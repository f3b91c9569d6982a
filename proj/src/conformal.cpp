// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "conformal.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "fft.hpp"

namespace helegeo {
namespace {

// Equal-polar-angle correspondence; empty if the curve is not star-shaped about 0.
std::vector<double> polar_guess(const BoundaryCurve& c, int m) {
    const int n = c.size();
    std::vector<double> arg(n + 1);
    arg[0] = std::arg(c.samples()[0]);
    for (int j = 1; j <= n; ++j) {
        arg[j] = arg[j - 1] + std::arg(c.samples()[j % n] / c.samples()[j - 1]);
        if (!(arg[j] > arg[j - 1])) return {};
    }
    if (std::abs(arg[n] - arg[0] - kTwoPi) > 1e-9) return {};
    std::vector<double> s(m);
    int k = 0;
    for (int j = 0; j < m; ++j) {
        double a = arg[0] + kTwoPi * j / m;
        while (k + 1 < n && arg[k + 1] <= a) ++k;
        s[j] = kTwoPi * (k + (a - arg[k]) / (arg[k + 1] - arg[k])) / n;
    }
    return s;
}

// Correspondence from the harmonic measure: S inverts a(theta) = 2 pi int_0^theta nu.
std::vector<double> harmonic_measure_guess(const BoundaryCurve& c, int m) {
    const int n = c.size();
    auto nu = harmonic_measure_density(c);
    auto coef = dft_analyze(std::vector<cplx>(nu.begin(), nu.end()));
    auto angle = [&](double th, double& da) {
        double acc = 0.0, dacc = coef[0].real();
        for (int k = 1; k < n / 2; ++k) {
            cplx e = std::polar(1.0, k * th);
            acc += 2.0 * (coef[k] * (e - 1.0) / cplx(0.0, k)).real();
            dacc += 2.0 * (coef[k] * e).real();
        }
        da = kTwoPi * dacc;
        return kTwoPi * (coef[0].real() * th + acc);
    };
    std::vector<double> s(m);
    double th = 0.0, da;
    for (int j = 0; j < m; ++j) {
        double target = kTwoPi * j / m;
        for (int it = 0; it < 50; ++it) {
            double r = angle(th, da) - target;
            if (!(da > 0.0)) fail(ErrorKind::Numeric, "riemann_map", "harmonic measure not positive");
            th -= std::clamp(r / da, -0.5, 0.5);
            if (std::abs(r) < 1e-15) break;
        }
        s[j] = th;
    }
    return s;
}

// Rotates a correspondence so that f'(0) > 0: S(sigma) <- S(sigma - phi).
void normalize_rotation(const BoundaryCurve& curve, std::vector<double>& s) {
    const int m = static_cast<int>(s.size());
    std::vector<cplx> e(m), off(m);
    for (int j = 0; j < m; ++j) {
        e[j] = curve.eval(s[j]);
        off[j] = s[j] - kTwoPi * j / m;
    }
    double phi = std::arg(dft_analyze(e)[1]);
    auto oc = dft_analyze(off);
    for (int k = 0; k < m; ++k) oc[k] *= std::polar(1.0, -wavenumber(k, m) * phi);
    oc[m / 2] = 0.0;
    auto sh = dft_synthesize(oc);
    for (int j = 0; j < m; ++j) s[j] = sh[j].real() + kTwoPi * j / m - phi;
}

double map_residual(const std::vector<cplx>& coef, double scale) {
    const int m = static_cast<int>(coef.size());
    double r = std::abs(coef[0]);
    for (int k = m / 2 + 1; k < m; ++k) r += std::abs(coef[k]);
    return r / scale;
}

// Newton iteration on the boundary correspondence. Returns the final residual; s and eta
// hold the last iterate. Stops early when the residual grows three times in a row.
double newton_correspondence(const BoundaryCurve& curve, std::vector<double>& s,
                             std::vector<cplx>& eta, const ConformalOptions& opt, int& it) {
    const int m = static_cast<int>(s.size());
    const double scale = curve.max_radius();
    std::vector<cplx> d(m), A(m), eiw(m);
    std::vector<double> beta(m), gam(m), g(m), u(m);
    for (int j = 0; j < m; ++j) eiw[j] = std::polar(1.0, kTwoPi * j / m);
    eta.resize(m);
    double res = INFINITY, prev = INFINITY;
    int growth = 0;
    for (it = 0;; ++it) {
        for (int j = 0; j < m; ++j) {
            eta[j] = curve.eval(s[j]);
            d[j] = curve.deriv(s[j]);
        }
        res = map_residual(dft_analyze(eta), scale);
        growth = res > prev ? growth + 1 : 0;
        prev = res;
        if (res < opt.tol || it >= opt.max_iterations || growth >= 3) return res;

        for (int j = 0; j < m; ++j) {
            A[j] = eiw[j] / d[j];
            gam[j] = (eta[j] / d[j]).imag();
        }
        beta[0] = std::arg(A[0]);
        for (int j = 1; j < m; ++j) beta[j] = beta[j - 1] + std::arg(A[j] / A[j - 1]);
        if (std::abs(beta[m - 1] + std::arg(A[0] / A[m - 1]) - beta[0]) > 1e-6) return res;
        auto kbeta = conjugate_function(beta);
        double bmean = 0.0;
        for (double b : beta) bmean += b / m;
        for (int j = 0; j < m; ++j) g[j] = gam[j] * std::exp(-kbeta[j]) / std::abs(A[j]);
        auto kg = conjugate_function(g);
        double gmean = 0.0;
        for (double v : g) gmean += v / m;
        // Real constant fixing Im F(0) = 0.
        double c = gmean * std::cos(bmean) / std::sin(bmean);
        double umax = 0.0;
        for (int j = 0; j < m; ++j) {
            cplx psi(-kbeta[j], beta[j]);
            cplx G(c - kg[j], g[j]);
            cplx F = std::exp(-psi) * G;
            u[j] = ((eiw[j] * F - eta[j]) / d[j]).real();
            umax = std::max(umax, std::abs(u[j]));
        }
        double lam = std::min(1.0, 0.5 / std::max(umax, 1e-300));
        for (int tries = 0;; ++tries) {
            bool ok = true;
            for (int j = 0; j < m && ok; ++j) {
                double a = s[j] + lam * u[j];
                double b = j + 1 < m ? s[j + 1] + lam * u[j + 1] : s[0] + lam * u[0] + kTwoPi;
                ok = b > a;
            }
            if (ok) break;
            if (tries > 30) return res;
            lam *= 0.5;
        }
        for (int j = 0; j < m; ++j) s[j] += lam * u[j];
    }
}

}  // namespace

// Harmonic measure of the boundary seen from 0, per unit parameter, from Symm's equation
// sum_j log|gamma_i - gamma_j| nu_j dtheta + C = log|gamma_i|, sum_j nu_j dtheta = 1, with
// Kress product quadrature for the logarithmic diagonal singularity.
std::vector<double> harmonic_measure_density(const BoundaryCurve& c) {
    if (c.size() > 4096) fail(ErrorKind::Domain, "harmonic_measure_density", "too many samples for a dense solve");
    const int m = c.size(), n = m / 2;
    const auto& g = c.samples();
    const auto& dg = c.derivative_samples();
    std::vector<double> R(m);
    for (int d = 0; d < m; ++d) {
        double t = kTwoPi * d / m, acc = 0.0;
        for (int k = 1; k < n; ++k) acc += std::cos(k * t) / k;
        R[d] = -(kPi / n) * acc - (kPi / (2.0 * n * n)) * std::cos(n * t);
    }
    Eigen::MatrixXd A(m + 1, m + 1);
    Eigen::VectorXd b(m + 1);
    const double h = kTwoPi / m;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double k1;
            if (i == j) {
                k1 = std::log(std::abs(dg[i]));
            } else {
                double st = 2.0 * std::sin(0.5 * h * (i - j));
                k1 = std::log(std::abs(g[i] - g[j]) / std::abs(st));
            }
            A(i, j) = R[(i - j + m) % m] + h * k1;
        }
        A(i, m) = 1.0;
        b(i) = std::log(std::abs(g[i]));
    }
    for (int j = 0; j < m; ++j) A(m, j) = h;
    A(m, m) = 0.0;
    b(m) = 1.0;
    Eigen::VectorXd x = A.partialPivLu().solve(b);
    return std::vector<double>(x.data(), x.data() + m);
}

ConformalMap ConformalMap::solve(const BoundaryCurve& curve, const ConformalOptions& opt) {
    ConformalMap cm;
    cm.curve_ = curve;
    const int m = opt.samples > 0 ? opt.samples : curve.size();
    if (m < 8 || m % 2) fail(ErrorKind::Domain, "riemann_map", "sample count must be even and >= 8");
    const double scale = curve.max_radius();

    std::vector<double> s = polar_guess(curve, m);
    std::vector<cplx> eta;
    double res = INFINITY;
    int it = 0;
    if (!s.empty()) {
        normalize_rotation(curve, s);
        res = newton_correspondence(curve, s, eta, opt, it);
    }
    if (!(res < opt.tol)) {
        s = harmonic_measure_guess(curve, m);
        normalize_rotation(curve, s);
        res = newton_correspondence(curve, s, eta, opt, it);
    }
    if (!(res < opt.tol))
        fail(ErrorKind::Numeric, "riemann_map",
             "no convergence (residual " + std::to_string(res) + ")", res);
    cm.residual_ = res;
    cm.iterations_ = it;
    cm.s_ = s;

    auto coef = dft_analyze(eta);
    cm.taylor_.assign(m / 2, 0.0);
    for (int k = 1; k < m / 2; ++k) cm.taylor_[k] = coef[k];
    if (!(cm.taylor_[1].real() > 0.0) || std::abs(cm.taylor_[1].imag()) > 1e-8 * scale)
        fail(ErrorKind::Numeric, "riemann_map", "f'(0) not positive", res);
    cm.taylor_[1] = cm.taylor_[1].real();

    std::vector<cplx> off(m);
    for (int j = 0; j < m; ++j) off[j] = s[j] - kTwoPi * j / m;
    cm.s_coef_ = dft_analyze(off);

    const int nr = 24, na = 64;
    for (int a = 0; a < nr; ++a)
        for (int b = 0; b < na; ++b) {
            cplx w = std::polar((a + 0.5) / nr, kTwoPi * b / na);
            cm.seed_w_.push_back(w);
            cm.seed_z_.push_back(cm.f(w));
        }
    return cm;
}

cplx ConformalMap::f(cplx w) const {
    cplx acc = 0.0;
    for (int k = static_cast<int>(taylor_.size()) - 1; k >= 1; --k) acc = (acc + taylor_[k]) * w;
    return acc;
}

cplx ConformalMap::fprime(cplx w) const {
    cplx acc = 0.0;
    for (int k = static_cast<int>(taylor_.size()) - 1; k >= 1; --k)
        acc = acc * w + double(k) * taylor_[k];
    return acc;
}

double ConformalMap::correspondence(double sigma) const {
    const int m = static_cast<int>(s_coef_.size());
    double acc = s_coef_[0].real();
    cplx w = std::polar(1.0, sigma), wp = 1.0;
    for (int k = 1; k < m / 2; ++k) {
        wp *= w;
        acc += 2.0 * (s_coef_[k] * wp).real();
    }
    return sigma + acc;
}

double ConformalMap::correspondence_derivative(double sigma) const {
    const int m = static_cast<int>(s_coef_.size());
    double acc = 0.0;
    cplx w = std::polar(1.0, sigma), wp = 1.0;
    for (int k = 1; k < m / 2; ++k) {
        wp *= w;
        acc += 2.0 * (cplx(0.0, k) * s_coef_[k] * wp).real();
    }
    return 1.0 + acc;
}

double ConformalMap::preimage_angle(double theta) const {
    const int m = static_cast<int>(s_.size());
    double th = s_[0] + wrap_angle(theta - s_[0]);
    auto it = std::upper_bound(s_.begin(), s_.end(), th);
    int j = static_cast<int>(it - s_.begin()) - 1;
    double a = s_[j], b = j + 1 < m ? s_[j + 1] : s_[0] + kTwoPi;
    double sigma = kTwoPi * (j + (th - a) / (b - a)) / m;
    for (int k = 0; k < 30; ++k) {
        double r = correspondence(sigma) - th;
        sigma -= r / correspondence_derivative(sigma);
        if (std::abs(r) < 1e-15) break;
    }
    return wrap_angle(sigma);
}

double ConformalMap::boundary_speed(double sigma) const {
    return std::abs(curve_.deriv(correspondence(sigma))) * correspondence_derivative(sigma);
}

double ConformalMap::speed_at_param(double theta) const {
    double sigma = preimage_angle(theta);
    return std::abs(curve_.deriv(theta)) * correspondence_derivative(sigma);
}

cplx ConformalMap::inverse(cplx z) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < seed_z_.size(); ++i)
        if (std::norm(seed_z_[i] - z) < std::norm(seed_z_[best] - z)) best = i;
    cplx w = seed_w_[best];
    cplx r = f(w) - z;
    const double tol = 1e-14 * (1.0 + std::abs(z));
    for (int it = 0; it < 80; ++it) {
        if (std::abs(r) < tol) return w;
        cplx step = r / fprime(w);
        double lam = 1.0;
        for (int k = 0; k < 40; ++k, lam *= 0.5) {
            cplx wn = w - lam * step;
            if (std::abs(wn) >= 1.0) continue;
            cplx rn = f(wn) - z;
            if (std::abs(rn) < std::abs(r) || std::abs(rn) < tol) {
                w = wn;
                r = rn;
                break;
            }
        }
        if (lam < 1e-11) break;
    }
    if (std::abs(r) < 1e-11 * (1.0 + std::abs(z))) return w;
    fail(ErrorKind::Numeric, "conformal_inverse", "Newton did not converge", std::abs(r));
}

double green_p(const ConformalMap& map, cplx z) {
    if (z == 0.0) fail(ErrorKind::Domain, "green_p", "z = 0 is the pole");
    if (map.curve().locate(z) != Location::Inside)
        fail(ErrorKind::Domain, "green_p", "z must lie strictly inside the curve");
    return -std::log(std::norm(map.inverse(z))) / (4.0 * kPi);
}

double boundary_normal_derivative(const ConformalMap& map, double sigma) {
    double sp = map.boundary_speed(sigma);
    if (!(sp > 1e-12)) fail(ErrorKind::Numeric, "boundary_normal_derivative", "|f'| vanishes", sp);
    return 1.0 / (kTwoPi * sp);
}

namespace {

// Quadrature nodes for the interior of a curve: rays from 0 (Gauss in the radius, trapezoid
// in theta) when star-shaped, else a polar rule on the disc pulled back by the Riemann map.
class AreaRule {
public:
    AreaRule(const BoundaryCurve& curve, int radial_nodes) : curve_(curve), nl_(radial_nodes) {
        const int m = curve.size();
        jac_.resize(m);
        for (int j = 0; j < m; ++j) {
            jac_[j] = (std::conj(curve.samples()[j]) * curve.derivative_samples()[j]).imag();
            star_ = star_ && jac_[j] > 0.0;
        }
        if (!star_) {
            ConformalOptions copt;
            copt.samples = 8 * m;
            map_ = ConformalMap::solve(curve, copt);
        }
    }

    // visit(z, weight) over the full rule, or the half-resolution rule used as error estimate.
    template <class F>
    void visit(bool half, F&& visit) const {
        std::vector<double> x, wt;
        if (star_) {
            const int m = curve_.size(), stride = half ? 2 : 1;
            gauss_legendre(half ? nl_ / 2 : nl_, x, wt);
            for (int j = 0; j < m; j += stride) {
                double dj = jac_[j] * kTwoPi * stride / m;
                for (std::size_t a = 0; a < x.size(); ++a) {
                    double lam = 0.5 * (x[a] + 1.0);
                    visit(lam * curve_.samples()[j], 0.5 * wt[a] * lam * dj);
                }
            }
            return;
        }
        int na = static_cast<int>(map_.taylor().size()) * 2;
        if (half) na /= 2;
        gauss_legendre(half ? nl_ : 2 * nl_, x, wt);
        for (int b = 0; b < na; ++b) {
            cplx e = std::polar(1.0, kTwoPi * b / na);
            for (std::size_t a = 0; a < x.size(); ++a) {
                double rho = 0.5 * (x[a] + 1.0);
                cplx wv = rho * e;
                visit(map_.f(wv), 0.5 * wt[a] * rho * std::norm(map_.fprime(wv)) * kTwoPi / na);
            }
        }
    }

private:
    const BoundaryCurve& curve_;
    int nl_;
    bool star_ = true;
    std::vector<double> jac_;
    ConformalMap map_;
};

template <class T>
T area_impl(const BoundaryCurve& curve, const std::function<T(cplx)>& w, const AreaOptions& opt) {
    AreaRule rule(curve, opt.radial_nodes);
    T full = T(0), half = T(0);
    rule.visit(false, [&](cplx z, double q) { full += q * w(z); });
    rule.visit(true, [&](cplx z, double q) { half += q * w(z); });
    double err = std::abs(full - half);
    if (err > opt.tol * std::max(1.0, std::abs(full)))
        fail(ErrorKind::Numeric, "area_wrt", "quadrature not converged", err);
    return full;
}

}  // namespace

double area_wrt(const BoundaryCurve& curve, const std::function<double(cplx)>& w,
                const AreaOptions& opt) {
    return area_impl<double>(curve, w, opt);
}

cplx area_wrt_complex(const BoundaryCurve& curve, const std::function<cplx(cplx)>& w,
                      const AreaOptions& opt) {
    return area_impl<cplx>(curve, w, opt);
}

std::vector<cplx> area_moments(const BoundaryCurve& curve, const std::function<double(cplx)>& w,
                               int kmax, const AreaOptions& opt) {
    AreaRule rule(curve, opt.radial_nodes);
    std::vector<cplx> full(kmax + 1), half(kmax + 1);
    auto sum = [&](std::vector<cplx>& acc) {
        return [&](cplx z, double q) {
            cplx v = q * w(z);
            for (int k = 0; k <= kmax; ++k, v *= z) acc[k] += v;
        };
    };
    rule.visit(false, sum(full));
    rule.visit(true, sum(half));
    for (int k = 0; k <= kmax; ++k) {
        double err = std::abs(full[k] - half[k]);
        if (err > opt.tol * std::max(1.0, std::abs(full[k])))
            fail(ErrorKind::Numeric, "area_moments", "quadrature not converged at k=" + std::to_string(k), err);
    }
    return full;
}

std::vector<double> boundary_flux(const BoundaryCurve& c, const ConformalOptions& opt) {
    const int m = c.size();
    std::vector<double> out(m);
    try {
        ConformalMap map = ConformalMap::solve(c, opt);
        for (int j = 0; j < m; ++j)
            out[j] = 1.0 / (kTwoPi * map.boundary_speed(map.preimage_angle(c.theta(j))));
        return out;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Numeric) throw;
    }
    auto nu = harmonic_measure_density(c);
    for (int j = 0; j < m; ++j) out[j] = nu[j] / std::abs(c.derivative_samples()[j]);
    return out;
}

}  // namespace helegeo
