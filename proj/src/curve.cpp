// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "curve.hpp"

#include <algorithm>
#include <unordered_map>

#include "fft.hpp"

namespace helegeo {
namespace {

double orient(cplx a, cplx b, cplx c) {
    return (b.real() - a.real()) * (c.imag() - a.imag()) -
           (b.imag() - a.imag()) * (c.real() - a.real());
}

double point_segment(cplx p, cplx a, cplx b) {
    cplx d = b - a;
    double l2 = std::norm(d);
    double s = l2 > 0 ? std::clamp(((p - a) * std::conj(d)).real() / l2, 0.0, 1.0) : 0.0;
    return std::abs(p - (a + s * d));
}

bool proper_cross(cplx a, cplx b, cplx c, cplx d) {
    double o1 = orient(a, b, c), o2 = orient(a, b, d);
    double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

double segment_segment(cplx a, cplx b, cplx c, cplx d) {
    if (proper_cross(a, b, c, d)) return 0.0;
    return std::min({point_segment(a, c, d), point_segment(b, c, d), point_segment(c, a, b),
                     point_segment(d, a, b)});
}

// Evaluates sum_k c_k w^k over signed wavenumbers, w = exp(i theta).
template <class T>
cplx fourier_sum(const std::vector<cplx>& c, T w, int order) {
    const int m = static_cast<int>(c.size());
    const int n = m / 2;
    cplx acc = order == 0 ? c[0] : cplx(0.0);
    cplx wp = 1.0, wm = 1.0;
    cplx winv = 1.0 / cplx(w);
    for (int k = 1; k < n; ++k) {
        wp *= cplx(w);
        wm *= winv;
        if (order == 0) {
            acc += c[k] * wp + c[m - k] * wm;
        } else if (order == 1) {
            acc += cplx(0.0, k) * (c[k] * wp - c[m - k] * wm);
        } else {
            acc -= double(k) * k * (c[k] * wp + c[m - k] * wm);
        }
    }
    return acc;
}

}  // namespace

void BoundaryCurve::build() {
    const int m = size();
    if (m < 8 || m % 2) fail(ErrorKind::Domain, "BoundaryCurve", "sample count must be even and >= 8");
    coeffs_ = dft_analyze(samples_);
    coeffs_[m / 2] = 0.0;
    samples_ = dft_synthesize(coeffs_);
    std::vector<cplx> dc(m);
    for (int k = 0; k < m; ++k) dc[k] = coeffs_[k] * cplx(0.0, wavenumber(k, m));
    dc[m / 2] = 0.0;
    dsamples_ = dft_synthesize(dc);
    fine_ = periodic_resample(samples_, 2 * m);
}

BoundaryCurve BoundaryCurve::from_samples(std::vector<cplx> samples, bool check) {
    BoundaryCurve c;
    c.samples_ = std::move(samples);
    c.build();
    if (check) {
        if (c.min_speed() <= 0.0)
            fail(ErrorKind::Scenario, "BoundaryCurve", "tangent vanishes at a sample");
        double w = c.winding_number(0.0);
        if (std::abs(w - 1.0) > 1e-6)
            fail(ErrorKind::Scenario, "BoundaryCurve",
                 "winding number about 0 is " + std::to_string(w) + ", expected 1");
        if (c.transversal_crossings() > 0)
            fail(ErrorKind::Scenario, "BoundaryCurve", "curve self-intersects");
    }
    return c;
}

BoundaryCurve BoundaryCurve::from_function(const std::function<cplx(double)>& g, int n_modes,
                                           bool check) {
    std::vector<cplx> s(2 * n_modes);
    for (int j = 0; j < 2 * n_modes; ++j) s[j] = g(kTwoPi * j / (2 * n_modes));
    return from_samples(std::move(s), check);
}

BoundaryCurve BoundaryCurve::circle(double radius, int n_modes) {
    return from_function([radius](double th) { return std::polar(radius, th); }, n_modes);
}

cplx BoundaryCurve::eval(double theta) const {
    return fourier_sum(coeffs_, std::polar(1.0, theta), 0);
}
cplx BoundaryCurve::deriv(double theta) const {
    return fourier_sum(coeffs_, std::polar(1.0, theta), 1);
}
cplx BoundaryCurve::eval_second(double theta) const {
    return fourier_sum(coeffs_, std::polar(1.0, theta), 2);
}
cplx BoundaryCurve::eval_complex(cplx theta) const {
    return fourier_sum(coeffs_, std::exp(cplx(0.0, 1.0) * theta), 0);
}
cplx BoundaryCurve::deriv_complex(cplx theta) const {
    return fourier_sum(coeffs_, std::exp(cplx(0.0, 1.0) * theta), 1);
}

double BoundaryCurve::winding_number(cplx z) const {
    double total = 0.0;
    const int m = static_cast<int>(fine_.size());
    for (int j = 0; j < m; ++j) {
        cplx a = fine_[j] - z, b = fine_[(j + 1) % m] - z;
        total += std::arg(b / a);
    }
    return total / kTwoPi;
}

double BoundaryCurve::distance(cplx z) const {
    double d = INFINITY;
    const int m = static_cast<int>(fine_.size());
    for (int j = 0; j < m; ++j) d = std::min(d, point_segment(z, fine_[j], fine_[(j + 1) % m]));
    return d;
}

double BoundaryCurve::nearest_param(cplx z) const {
    const int m = static_cast<int>(fine_.size());
    int best = 0;
    for (int j = 1; j < m; ++j)
        if (std::norm(fine_[j] - z) < std::norm(fine_[best] - z)) best = j;
    double th = kTwoPi * best / m;
    const double step = kTwoPi / m;
    for (int it = 0; it < 30; ++it) {
        cplx d = eval(th) - z, g1 = deriv(th), g2 = eval_second(th);
        double f1 = (std::conj(d) * g1).real();
        double f2 = std::norm(g1) + (std::conj(d) * g2).real();
        if (f2 <= 0.0) break;
        double dt = std::clamp(f1 / f2, -step, step);
        th -= dt;
        if (std::abs(dt) < 1e-15) break;
    }
    return wrap_angle(th);
}

Location BoundaryCurve::locate(cplx z, double tie) const {
    if (distance(z) <= tie) return Location::Boundary;
    return std::abs(winding_number(z)) > 0.5 ? Location::Inside : Location::Outside;
}

double BoundaryCurve::signed_distance(cplx z) const {
    double d = distance(z);
    return std::abs(winding_number(z)) > 0.5 ? d : -d;
}

bool BoundaryCurve::counterclockwise() const { return enclosed_area() > 0; }

double BoundaryCurve::enclosed_area() const {
    const int m = size();
    double a = 0.0;
    for (int k = 0; k < m; ++k) a += wavenumber(k, m) * std::norm(coeffs_[k]);
    return kPi * a;
}

double BoundaryCurve::min_speed() const {
    double v = INFINITY;
    for (auto d : dsamples_) v = std::min(v, std::abs(d));
    return v;
}

double BoundaryCurve::max_radius() const {
    double v = 0.0;
    for (auto p : fine_) v = std::max(v, std::abs(p));
    return v;
}

double BoundaryCurve::min_radius() const {
    double v = INFINITY;
    for (auto p : fine_) v = std::min(v, std::abs(p));
    return v;
}

int BoundaryCurve::transversal_crossings() const {
    const int m = static_cast<int>(fine_.size());
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY, len = 0.0;
    for (int j = 0; j < m; ++j) {
        xmin = std::min(xmin, fine_[j].real());
        xmax = std::max(xmax, fine_[j].real());
        ymin = std::min(ymin, fine_[j].imag());
        ymax = std::max(ymax, fine_[j].imag());
        len = std::max(len, std::abs(fine_[(j + 1) % m] - fine_[j]));
    }
    const double cell = std::max(len, 1e-14);
    const long nx = static_cast<long>((xmax - xmin) / cell) + 1;
    std::unordered_map<long, std::vector<int>> buckets;
    for (int j = 0; j < m; ++j) {
        cplx a = fine_[j], b = fine_[(j + 1) % m];
        long i0 = static_cast<long>((std::min(a.real(), b.real()) - xmin) / cell);
        long i1 = static_cast<long>((std::max(a.real(), b.real()) - xmin) / cell);
        long k0 = static_cast<long>((std::min(a.imag(), b.imag()) - ymin) / cell);
        long k1 = static_cast<long>((std::max(a.imag(), b.imag()) - ymin) / cell);
        for (long i = i0; i <= i1; ++i)
            for (long k = k0; k <= k1; ++k) buckets[k * nx + i].push_back(j);
    }
    std::vector<std::pair<int, int>> hits;
    for (auto& [key, segs] : buckets) {
        for (std::size_t p = 0; p < segs.size(); ++p)
            for (std::size_t q = p + 1; q < segs.size(); ++q) {
                int i = segs[p], j = segs[q];
                int gap = std::abs(i - j);
                if (std::min(gap, m - gap) <= 1) continue;
                if (proper_cross(fine_[i], fine_[(i + 1) % m], fine_[j], fine_[(j + 1) % m]))
                    hits.emplace_back(std::min(i, j), std::max(i, j));
            }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    return static_cast<int>(hits.size());
}

std::vector<Contact> BoundaryCurve::self_contacts(double tol) const {
    const int m = static_cast<int>(fine_.size());
    const int window = std::max(8, m / 64);
    double seg = 0.0;
    for (int j = 0; j < m; ++j) seg = std::max(seg, std::abs(fine_[(j + 1) % m] - fine_[j]));
    const double cluster = std::max(10.0 * tol, 20.0 * seg);
    struct Hit { cplx where; double d; bool cross; };
    std::vector<Hit> hits;
    for (int i = 0; i < m; ++i)
        for (int j = i + window; j < m; ++j) {
            if (m - (j - i) < window) continue;
            cplx a = fine_[i], b = fine_[(i + 1) % m], c = fine_[j], d = fine_[(j + 1) % m];
            double dist = segment_segment(a, b, c, d);
            if (dist < tol)
                hits.push_back({0.25 * (a + b + c + d), dist, proper_cross(a, b, c, d)});
        }
    std::vector<Contact> out;
    std::vector<int> n_in;
    for (auto& h : hits) {
        bool merged = false;
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (std::abs(out[k].where - h.where) < cluster) {
                if (h.d < out[k].distance) out[k].distance = h.d;
                out[k].transversal = out[k].transversal || h.cross;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({h.where, h.d, h.cross});
    }
    return out;
}

BoundaryCurve BoundaryCurve::shifted(double shift) const {
    return from_function([&](double th) { return eval(th + shift); }, modes(), false);
}

BoundaryCurve BoundaryCurve::rotated(double angle) const {
    std::vector<cplx> s(samples_);
    cplx r = std::polar(1.0, angle);
    for (auto& v : s) v *= r;
    return from_samples(std::move(s), false);
}

BoundaryCurve BoundaryCurve::scaled(double factor) const {
    std::vector<cplx> s(samples_);
    for (auto& v : s) v *= factor;
    return from_samples(std::move(s), false);
}

double hausdorff_distance(const BoundaryCurve& a, const BoundaryCurve& b) {
    double h = 0.0;
    for (auto p : a.fine()) h = std::max(h, std::abs(b.eval(b.nearest_param(p)) - p));
    for (auto p : b.fine()) h = std::max(h, std::abs(a.eval(a.nearest_param(p)) - p));
    return h;
}

}  // namespace helegeo
