// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "potential.hpp"

#include <algorithm>

#include "fft.hpp"

namespace helegeo {

// With zeta = r e^{i alpha}, z = rho e^{i beta} and q = min(r, rho) / max(r, rho):
//   log|z - zeta|^2 = 2 log max(r, rho) - sum_{k != 0} q^|k| / |k| e^{i k (alpha - beta)}.
// For a real density with angular coefficients g_k(r) this gives
//   u(z) = 2 pi int [2 log max(r, rho) g_0 - 2 sum_{k >= 1} q^k / k Re(g_k e^{i k beta})] r dr.

LogPotential::LogPotential(const std::function<double(cplx)>& mu, double a, double b, int panels,
                           int angles)
    : a_(a), b_(b) {
    if (!(a >= 0.0 && b > a && std::isfinite(b)))
        fail(ErrorKind::Domain, "LogPotential", "need 0 <= a < b < infinity");
    if (panels < 1 || angles < 8 || angles % 2)
        fail(ErrorKind::Domain, "LogPotential", "bad resolution");
    const double ta = standard_time(a), tb = standard_time(b);
    edges_.resize(panels + 1);
    for (int p = 0; p <= panels; ++p) edges_[p] = standard_radius(ta + (tb - ta) * p / panels);
    edges_.front() = a;
    edges_.back() = b;
    std::vector<double> x, wt;
    gauss_legendre(kOrder, x, wt);
    for (int p = 0; p < panels; ++p) {
        double mid = 0.5 * (edges_[p] + edges_[p + 1]), half = 0.5 * (edges_[p + 1] - edges_[p]);
        for (int q = 0; q < kOrder; ++q) {
            r_.push_back(mid + half * x[q]);
            w_.push_back(half * wt[q] * r_.back());
        }
    }
    const int nr = static_cast<int>(r_.size());
    const int kmax = angles / 2 - 1;
    g_.assign(nr, std::vector<cplx>(kmax + 1));
    std::vector<std::string> errors(nr);
    parallel_for(nr, [&](std::size_t j) {
        try {
            std::vector<cplx> v(angles);
            for (int q = 0; q < angles; ++q) v[q] = mu(std::polar(r_[j], kTwoPi * q / angles));
            auto c = dft_analyze(v);
            for (int k = 0; k <= kmax; ++k) g_[j][k] = c[k];
        } catch (const Error& e) {
            errors[j] = e.what();
        }
    });
    for (auto& e : errors)
        if (!e.empty()) fail(ErrorKind::Numeric, "LogPotential", "density sampling failed: " + e);

    double scale = 0.0;
    for (auto& row : g_)
        for (auto c : row) scale = std::max(scale, std::abs(c));
    K_ = 0;
    for (int k = 1; k <= kmax; ++k)
        for (auto& row : g_)
            if (std::abs(row[k]) > 1e-15 * scale) K_ = k;

    in_.assign(K_ + 1, 0.0);
    out_.assign(K_ + 1, 0.0);
    for (int j = 0; j < nr; ++j) {
        double pin = 1.0, pout = 1.0;
        for (int k = 0; k <= K_; ++k) {
            in_[k] += w_[j] * pin * g_[j][k];
            out_[k] += w_[j] * pout * g_[j][k];
            pin *= a_ / r_[j];
            pout *= r_[j] / b_;
        }
    }
    in_[0] = 0.0;
    for (int j = a_ > 0.0 ? 0 : kOrder; j < nr; ++j) in_[0] += w_[j] * std::log(r_[j]) * g_[j][0];
    if (a_ == 0.0) {
        // int_0^{r1} log r g_0 r dr has a log endpoint singularity: geometric sub-panels toward 0.
        double lb[kOrder];
        for (int level = 0; level < 60; ++level) {
            double hi = edges_[1] * std::ldexp(1.0, -level), lo = 0.5 * hi;
            double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int q = 0; q < kOrder; ++q) {
                double r = mid + half * x[q];
                lagrange_basis(r, r_.data(), kOrder, lb);
                cplx g0 = 0.0;
                for (int m = 0; m < kOrder; ++m) g0 += lb[m] * g_[m][0];
                in_[0] += half * wt[q] * r * std::log(r) * g0;
            }
        }
    }

    table_.resize(nr);
    parallel_for(nr, [&](std::size_t j) { modes_at(r_[j], table_[j]); });
}

double LogPotential::mass() const { return kTwoPi * out_[0].real(); }

// out[0] + sum_k Re(out[k] e^{i k beta}) is the potential at radius rho.
void LogPotential::modes_at(double rho, std::vector<cplx>& out) const {
    out.assign(K_ + 1, 0.0);
    if (rho <= a_ || rho >= b_) {
        for (int k = 0; k <= K_; ++k) {
            if (rho <= a_) {
                if (k == 0) out[k] = 2.0 * in_[0];
                else if (rho > 0.0) out[k] = in_[k] * std::pow(rho / a_, k) / double(k);
            } else {
                out[k] = k == 0 ? std::log(rho) * 2.0 * out_[0]
                                : out_[k] * std::pow(b_ / rho, k) / double(k);
            }
        }
    } else {
        auto add = [&](double r, double w, const cplx* g) {
            double q = r < rho ? r / rho : rho / r;
            out[0] += 2.0 * w * std::log(std::max(r, rho)) * g[0];
            double p = 1.0;
            for (int k = 1; k <= K_; ++k) {
                p *= q;
                if (p < 1e-18) break;
                out[k] += (w * p / k) * g[k];
            }
        };
        const int panels = static_cast<int>(edges_.size()) - 1;
        int pc = static_cast<int>(std::upper_bound(edges_.begin(), edges_.end(), rho) - edges_.begin()) - 1;
        pc = std::clamp(pc, 0, panels - 1);
        for (int p = 0; p < panels; ++p) {
            if (p == pc) continue;
            for (int q = 0; q < kOrder; ++q) {
                int j = p * kOrder + q;
                add(r_[j], w_[j], g_[j].data());
            }
        }
        // Panel containing rho: two sub-panels with the density interpolated from the panel nodes.
        std::vector<double> x, wt;
        gauss_legendre(kOrder, x, wt);
        const double* rn = &r_[pc * kOrder];
        std::vector<cplx> gs(K_ + 1);
        double lb[kOrder];
        for (int side = 0; side < 2; ++side) {
            double lo = side == 0 ? edges_[pc] : rho, hi = side == 0 ? rho : edges_[pc + 1];
            if (!(hi > lo)) continue;
            double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int q = 0; q < kOrder; ++q) {
                double r = mid + half * x[q];
                lagrange_basis(r, rn, kOrder, lb);
                for (int k = 0; k <= K_; ++k) {
                    cplx acc = 0.0;
                    for (int m = 0; m < kOrder; ++m) acc += lb[m] * g_[pc * kOrder + m][k];
                    gs[k] = acc;
                }
                add(r, half * wt[q] * r, gs.data());
            }
        }
    }
    for (int k = 0; k <= K_; ++k) out[k] *= (k == 0 ? kTwoPi : -2.0 * kTwoPi);
}

double LogPotential::operator()(cplx z) const {
    std::vector<cplx> m;
    modes_at(std::abs(z), m);
    double v = m[0].real();
    cplx e = z == 0.0 ? cplx(1.0) : z / std::abs(z), ep = 1.0;
    for (int k = 1; k <= K_; ++k) {
        ep *= e;
        v += (m[k] * ep).real();
    }
    return v;
}

double LogPotential::interpolated(cplx z) const {
    const double rho = std::abs(z);
    if (rho <= a_ || rho >= b_) return (*this)(z);
    const int panels = static_cast<int>(edges_.size()) - 1;
    int pc = static_cast<int>(std::upper_bound(edges_.begin(), edges_.end(), rho) - edges_.begin()) - 1;
    pc = std::clamp(pc, 0, panels - 1);
    double lb[kOrder];
    lagrange_basis(rho, &r_[pc * kOrder], kOrder, lb);
    cplx e = z / rho, ep = 1.0;
    double v = 0.0;
    for (int k = 0; k <= K_; ++k) {
        cplx acc = 0.0;
        for (int m = 0; m < kOrder; ++m) acc += lb[m] * table_[pc * kOrder + m][k];
        v += (acc * ep).real();
        ep *= e;
    }
    return v;
}

namespace {

// int_{|zeta| > C} log|z - zeta|^2 dA / (pi (1+|zeta|^2)^2) for |z| < C.
double standard_tail(double C) {
    double c2 = C * C;
    return std::log(c2) / (1.0 + c2) - std::log(c2 / (1.0 + c2));
}

}  // namespace

DesignerPotential::DesignerPotential(const PermeabilityField& field, int panels, int angles,
                                     bool with_raw) {
    const double C = field.standard_outside();
    if (!std::isfinite(C))
        fail(ErrorKind::Scenario, "synthesize_phi", "kappa is not standard near infinity");
    support_ = C;
    const double a = field.has_inner_patch() ? field.rho_in() : 0.0;
    const PermeabilityField* f = &field;
    if (a < C)
        pot_.emplace([f](cplx z) { return 1.0 / f->evaluate(z) - fs_density(z); }, a, C, panels, angles);
    if (with_raw) raw_.emplace([f](cplx z) { return 1.0 / f->evaluate(z); }, 0.0, C, panels, angles);
}

double DesignerPotential::raw(cplx z) const {
    if (!raw_) fail(ErrorKind::Domain, "DesignerPotential::raw", "built without the raw potential");
    if (!(std::abs(z) < support_)) fail(ErrorKind::Domain, "DesignerPotential::raw", "|z| must be below the support radius");
    return (*raw_)(z) + standard_tail(support_) - std::log1p(std::norm(z));
}

ScalarField DesignerPotential::on_grid(const GridSpec& g) const {
    ScalarField out(g);
    parallel_for(g.n, [&](std::size_t j) {
        for (int i = 0; i < g.n; ++i) out.at(i, static_cast<int>(j)) = interpolated(g.z(i, static_cast<int>(j)));
    });
    return out;
}

double synthesize_phi(const PermeabilityField& field, cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail(ErrorKind::Domain, "synthesize_phi", "z must be finite");
    DesignerPotential phi(field);
    return phi(z);
}

namespace {

double entropy_F(double s) {
    return (s > 0.0 ? s * std::log(s) : 0.0) + (s < 1.0 ? (1.0 - s) * std::log1p(-s) : 0.0);
}

// int log|z - zeta|^2 d(harmonic measure of row i seen from 0). When z is within a few sample
// spacings of the curve the trapezoid rule is run on a spectrally upsampled copy.
double row_potential(const PermeabilityField& f, int i, cplx z) {
    const auto& c = f.family().curve(i);
    const auto& sp = f.row_speed(i);
    const int m = c.size();
    std::vector<cplx> g = c.samples(), dens(m);
    double d = INFINITY, ds = 0.0;
    for (int j = 0; j < m; ++j) {
        double a = std::abs(c.derivative_samples()[j]);
        dens[j] = a / sp[j];
        d = std::min(d, std::abs(z - g[j]));
        ds = std::max(ds, a * kTwoPi / m);
    }
    int up = 1;
    while (up < 32 && d < 4.0 * ds / up) up *= 2;
    if (up > 1) {
        g = periodic_resample(g, up * m);
        dens = periodic_resample(dens, up * m);
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) acc += std::log(std::norm(z - g[j])) * dens[j].real();
    return acc / static_cast<double>(g.size());
}

// Integral over [lo, hi] of the piecewise Lagrange interpolant (6-point stencils) through (x, y).
double integrate_nodes(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    const int n = static_cast<int>(x.size());
    if (n == 1) return y[0] * (hi - lo);
    const int w = std::min(n, 6);
    std::vector<double> gx, gw;
    gauss_legendre(4, gx, gw);
    double total = 0.0, lb[6];
    for (int k = 0; k + 1 < n; ++k) {
        double a = std::max(lo, x[k]), b = std::min(hi, x[k + 1]);
        if (k == n - 2) b = hi;  // allow the last interval to reach hi
        if (!(b > a)) continue;
        int start = std::clamp(k - (w - 2) / 2, 0, n - w);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < 4; ++q) {
            double s = mid + half * gx[q];
            lagrange_basis(s, &x[start], w, lb);
            double v = 0.0;
            for (int m = 0; m < w; ++m) v += lb[m] * y[start + m];
            total += half * gw[q] * v;
        }
    }
    return total;
}

// Smooth parts psi_t - t log|z|^2 for an increasing list of t.
std::vector<double> closed_smooth_series(const PermeabilityField& field, double phi_z,
                                         const std::vector<double>& ts, cplx z) {
    const auto& fam = field.family();
    const double lz = z == 0.0 ? 0.0 : std::log(std::norm(z));
    std::vector<double> out(ts.size());
    FlowPoint fp = fam.locate(z);
    double sz = INFINITY;
    if (fp.flag == ExitFlag::InsideAll) {
        if (!field.has_inner_patch())
            fail(ErrorKind::Domain, "envelope_closed", "z inside the innermost curve of a family that is not standard there");
        sz = standard_time(std::abs(z));
    } else if (fp.flag == ExitFlag::Ok) {
        sz = fp.s;
    }
    const double tmax = ts.empty() ? 0.0 : ts.back();
    if (!(sz < tmax)) {
        for (std::size_t k = 0; k < ts.size(); ++k) out[k] = phi_z - ts[k] * lz;
        return out;
    }

    const auto& tg = fam.t_grid();
    const int n = field.rows();
    int last = static_cast<int>(std::lower_bound(tg.begin(), tg.begin() + n, tmax) - tg.begin());
    last = std::min(n - 1, last + 3);
    std::vector<double> x, y;
    const bool inner = sz < field.t_min();
    if (!inner) {
        x.push_back(sz);
        y.push_back(0.0);
    }
    for (int i = 0; i <= last; ++i) {
        if (!inner) {
            if (tg[i] <= sz) continue;
            double gap = i + 1 < n ? tg[i + 1] - tg[i] : tg[i] - tg[i - 1];
            if (tg[i] - sz < 0.25 * gap) continue;  // too close to the kink for stable interpolation
        }
        x.push_back(tg[i]);
        y.push_back(row_potential(field, i, z) - (inner ? 0.0 : lz));
    }
    // Cumulative integral from the start node, advanced through increasing t.
    const double start = inner ? field.t_min() : sz;
    double acc = 0.0, prev = start;
    const double base = inner ? entropy_F(field.t_min()) - entropy_F(sz) + sz * lz : 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        double t = ts[k];
        if (t <= sz) {
            out[k] = phi_z - t * lz;
            continue;
        }
        if (inner && t < field.t_min()) {
            // Standard region: closed form.
            out[k] = phi_z - (entropy_F(t) - entropy_F(sz)) - sz * lz;
            continue;
        }
        if (t > prev) {
            acc += integrate_nodes(x, y, prev, t);
            prev = t;
        }
        out[k] = inner ? phi_z - base - acc : phi_z - acc - t * lz;
    }
    return out;
}

double closed_smooth(const PermeabilityField& field, double phi_z, double t, cplx z) {
    return closed_smooth_series(field, phi_z, {t}, z)[0];
}

void check_closed_args(const PermeabilityField& field, double t) {
    if (!field.has_table()) fail(ErrorKind::Domain, "envelope_closed", "field has no flow family");
    if (!(t >= field.t_min() && t <= field.t_max()))
        fail(ErrorKind::Domain, "envelope_closed", "t outside the extracted range");
}

}  // namespace

double envelope_closed_smooth(const PermeabilityField& field, const DesignerPotential& phi,
                              double t, cplx z) {
    check_closed_args(field, t);
    return closed_smooth(field, phi(z), t, z);
}

double envelope_closed(const PermeabilityField& field, const DesignerPotential& phi, double t,
                       cplx z) {
    if (z == 0.0) fail(ErrorKind::Domain, "envelope_closed", "z = 0 is the pole");
    return envelope_closed_smooth(field, phi, t, z) + t * std::log(std::norm(z));
}

std::vector<double> envelope_closed_series(const PermeabilityField& field,
                                           const DesignerPotential& phi, cplx z,
                                           const std::vector<double>& ts) {
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (!field.has_table())
            fail(ErrorKind::Domain, "envelope_closed_series", "field has no flow family");
        if (!(ts[k] >= 0.0 && ts[k] <= field.t_max() + 1e-12))
            fail(ErrorKind::Domain, "envelope_closed_series", "t outside [0, t_max]");
        if (k > 0 && !(ts[k] > ts[k - 1]))
            fail(ErrorKind::Domain, "envelope_closed_series", "t list must increase");
    }
    if (z == 0.0) fail(ErrorKind::Domain, "envelope_closed_series", "z = 0 is the pole");
    auto v = closed_smooth_series(field, phi(z), ts, z);
    const double lz = std::log(std::norm(z));
    for (std::size_t k = 0; k < ts.size(); ++k) v[k] += ts[k] * lz;
    return v;
}

ScalarField envelope_closed_grid(const PermeabilityField& field, const DesignerPotential& phi,
                                 double t, const GridSpec& g) {
    check_closed_args(field, t);
    ScalarField out(g);
    out.lelong = t;
    std::vector<std::string> errors(g.n);
    parallel_for(g.n, [&](std::size_t jj) {
        int j = static_cast<int>(jj);
        try {
            for (int i = 0; i < g.n; ++i) {
                cplx z = g.z(i, j);
                out.at(i, j) = closed_smooth(field, phi.interpolated(z), t, z);
            }
        } catch (const Error& e) {
            errors[jj] = e.what();
        }
    });
    for (auto& e : errors)
        if (!e.empty()) fail(ErrorKind::Numeric, "envelope_closed_grid", e);
    return out;
}

double sample_bilinear(const ScalarField& f, cplx z) {
    const double h = f.h();
    double u = (z.real() + f.grid.L) / h, v = (z.imag() + f.grid.L) / h;
    int i = std::clamp(static_cast<int>(std::floor(u)), 0, f.n() - 2);
    int j = std::clamp(static_cast<int>(std::floor(v)), 0, f.n() - 2);
    double a = std::clamp(u - i, 0.0, 1.0), b = std::clamp(v - j, 0.0, 1.0);
    return (1 - a) * (1 - b) * f.at(i, j) + a * (1 - b) * f.at(i + 1, j) + (1 - a) * b * f.at(i, j + 1) +
           a * b * f.at(i + 1, j + 1);
}

namespace {

ObstacleResult obstacle_level(const ScalarField& phi, double t, const ObstacleOptions& opt) {
    const GridSpec& g = phi.grid;
    const int n = g.n;
    const double h = g.h();
    ScalarField obst(g), dens(g);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            cplx z = g.z(i, j);
            obst.at(i, j) = z == 0.0 ? INFINITY : phi.at(i, j) - t * std::log(std::norm(z));
            dens.at(i, j) = kPi * h * h * fs_density(z);
        }

    ObstacleResult res;
    res.psi = ScalarField(g);
    res.psi.lelong = t;
    auto& v = res.psi.values;
    v = obst.values;
    if (opt.cascade && n > 96) {
        GridSpec gc{g.L, (n / 2) & ~1};
        ScalarField pc(gc);
        for (int j = 0; j < gc.n; ++j)
            for (int i = 0; i < gc.n; ++i) pc.at(i, j) = sample_bilinear(phi, gc.z(i, j));
        ObstacleResult coarse = obstacle_level(pc, t, opt);
        res.sweeps += coarse.sweeps;
        for (int j = 1; j < n - 1; ++j)
            for (int i = 1; i < n - 1; ++i)
                res.psi.at(i, j) = std::min(obst.at(i, j), sample_bilinear(coarse.psi, g.z(i, j)));
    }
    for (double x : phi.values)
        if (!std::isfinite(x)) fail(ErrorKind::Domain, "envelope_obstacle", "phi has non-finite values");
    // The node at 0 (odd n) has no constraint; start it from its neighbours.
    if (n % 2 == 1) {
        int c = n / 2;
        res.psi.at(c, c) = std::min({obst.at(c + 1, c), obst.at(c - 1, c), obst.at(c, c + 1), obst.at(c, c - 1)});
    }

    auto sweep = [&](int color) {
        parallel_for(n - 2, [&](std::size_t jj) {
            int j = static_cast<int>(jj) + 1;
            double* row = &v[static_cast<std::size_t>(j) * n];
            const double* up = row + n;
            const double* dn = row - n;
            const double* ob = &obst.values[static_cast<std::size_t>(j) * n];
            const double* de = &dens.values[static_cast<std::size_t>(j) * n];
            for (int i = 1 + ((j + 1 + color) & 1); i < n - 1; i += 2) {
                double gs = 0.25 * (row[i - 1] + row[i + 1] + up[i] + dn[i]) + de[i];
                row[i] = std::min(ob[i], row[i] + opt.omega * (gs - row[i]));
            }
        });
    };
    auto residual = [&]() {
        double r = 0.0;
        for (int j = 1; j < n - 1; ++j)
            for (int i = 1; i < n - 1; ++i) {
                std::size_t k = static_cast<std::size_t>(j) * n + i;
                double gs = 0.25 * (v[k - 1] + v[k + 1] + v[k + n] + v[k - n]) + dens.values[k];
                r = std::max(r, std::abs(std::min(obst.values[k], gs) - v[k]));
            }
        return r;
    };
    long s = 0;
    double r = INFINITY;
    for (; s < opt.max_sweeps; ++s) {
        sweep(0);
        sweep(1);
        if (s % 10 == 9) {
            r = residual();
            if (r < opt.tol) break;
        }
    }
    res.sweeps += s + 1;
    res.residual = r < opt.tol ? r : residual();
    if (!(res.residual < opt.tol))
        fail(ErrorKind::Numeric, "envelope_obstacle",
             "no convergence in " + std::to_string(opt.max_sweeps) + " sweeps", res.residual);
    res.contact.assign(v.size(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) res.contact[k] = v[k] >= obst.values[k];
    return res;
}

}  // namespace

ObstacleResult envelope_obstacle(const ScalarField& phi, double t, const ObstacleOptions& opt) {
    if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::Domain, "envelope_obstacle", "t must lie in (0,1)");
    if (phi.lelong != 0.0 || phi.chart != Chart::Zero)
        fail(ErrorKind::Domain, "envelope_obstacle", "phi must be a smooth field in the chart at 0");
    if (phi.n() < 8) fail(ErrorKind::Domain, "envelope_obstacle", "grid too small");
    if (!(opt.omega > 0.0 && opt.omega < 2.0))
        fail(ErrorKind::Domain, "envelope_obstacle", "relaxation factor must lie in (0,2)");
    return obstacle_level(phi, t, opt);
}

double subharmonicity_margin(const ObstacleResult& r) {
    const auto& f = r.psi;
    const int n = f.n();
    const double h = f.h();
    double m = INFINITY;
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) {
            double gs = 0.25 * (f.at(i - 1, j) + f.at(i + 1, j) + f.at(i, j - 1) + f.at(i, j + 1)) +
                        kPi * h * h * fs_density(f.grid.z(i, j));
            m = std::min(m, gs - f.at(i, j));
        }
    return m;
}

std::vector<unsigned char> recover_domain(const ScalarField& psi, const ScalarField& phi, double threshold) {
    if (psi.n() != phi.n() || psi.grid.L != phi.grid.L)
        fail(ErrorKind::Domain, "recover_domain", "fields must share the grid");
    const double h = psi.h();
    if (std::isnan(threshold)) threshold = 1e-8 + 5 * h * h;
    std::vector<unsigned char> mask(psi.values.size(), 0);
    for (int j = 0; j < psi.n(); ++j)
        for (int i = 0; i < psi.n(); ++i) {
            cplx z = psi.grid.z(i, j);
            double pole = psi.lelong - phi.lelong;
            double gap = phi.at(i, j) - psi.at(i, j) - (pole != 0.0 ? pole * std::log(std::norm(z)) : 0.0);
            mask[static_cast<std::size_t>(j) * psi.n() + i] = !(gap <= threshold);
        }
    return mask;
}

double recovered_area(const std::vector<unsigned char>& mask, const GridSpec& g,
                      const std::function<double(cplx)>& w) {
    const double h = g.h();
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (mask[static_cast<std::size_t>(j) * g.n + i]) acc += w(g.z(i, j));
    return acc * h * h;
}

}  // namespace helegeo
