// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "singularity.hpp"

#include <algorithm>

#include "potential.hpp"

namespace helegeo {

ExitTimeEvaluator::ExitTimeEvaluator(std::shared_ptr<const DomainFamily> family, double t_end,
                                     double delta)
    : fam_(std::move(family)), t_end_(t_end), delta_(delta) {
    if (!fam_) fail(ErrorKind::Domain, "exit_time", "no family");
    if (!(delta > 0.0) || !(t_end - 10.0 * delta >= fam_->t_min()) || !(t_end <= fam_->t_max() + 1e-12))
        fail(ErrorKind::Domain, "exit_time", "need t_min <= t_end - 10 delta and t_end <= t_max");
    t_a_ = t_end - 10.0 * delta;
    t_b_ = t_end - delta;
    a_ = fam_->curve_at(t_a_);
    b_ = fam_->curve_at(t_b_);
}

ExitTimeEvaluator::ExitTimeEvaluator(const TangencyFamily& tf)
    : ExitTimeEvaluator(std::make_shared<DomainFamily>(tf.family), tf.T, tf.delta) {}

double ExitTimeEvaluator::operator()(cplx z, ExitStatus* status) const {
    ExitStatus st = ExitStatus::Covered;
    double v;
    FlowPoint fp = fam_->locate(z);
    if (fp.flag == ExitFlag::InsideAll) {
        st = ExitStatus::BelowRange;
        v = fam_->t_min();
    } else if (fp.flag == ExitFlag::Ok && fp.s <= cap()) {
        v = fp.s;
    } else {
        // Signed distance (positive inside) is close to linear in t as the gap closes.
        double da = a_.signed_distance(z), db = b_.signed_distance(z);
        double tc = db > da ? t_b_ - db * (t_b_ - t_a_) / (db - da) : INFINITY;
        if (tc <= t_end_) {
            st = ExitStatus::Extrapolated;
            v = std::max(tc, cap());
        } else {
            st = ExitStatus::NeverCovered;
            v = t_end_;
        }
    }
    if (status) *status = st;
    return v;
}

cplx ExitTimeField::to_plane(cplx frame) const {
    return site.where + site.direction * std::polar(1.0, rotation) * frame / site.scale;
}

ExitTimeField exit_time_field(const TangencyFamily& tf, const ExitWindow& window) {
    if (window.site < 0 || window.site >= static_cast<int>(tf.sites.size()))
        fail(ErrorKind::Domain, "exit_time_field", "no such pinch site");
    if (!(window.half_width > 0.0) || window.n < 5)
        fail(ErrorKind::Domain, "exit_time_field", "window needs half_width > 0 and n >= 5");
    ExitTimeField out;
    out.site = tf.sites[window.site];
    out.rotation = window.rotation;
    if (std::abs(out.site.where) <= std::sqrt(2.0) * window.half_width / out.site.scale)
        fail(ErrorKind::Domain, "exit_time_field", "window touches 0");
    out.field = ScalarField(GridSpec{window.half_width, window.n});
    out.status.assign(out.field.values.size(), ExitStatus::Covered);
    ExitTimeEvaluator h(tf);
    const int n = window.n;
    parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t k) {
        int i = static_cast<int>(k % n), j = static_cast<int>(k / n);
        out.field.at(i, j) = h(out.to_plane(out.field.grid.z(i, j)), &out.status[k]);
    });
    return out;
}

OneSided one_sided_derivatives(const std::function<double(cplx)>& f, cplx point, cplx direction,
                               double step) {
    if (!(step > 0.0)) fail(ErrorKind::Domain, "one_sided_derivatives", "step must be positive");
    if (std::abs(std::abs(direction) - 1.0) > 1e-9)
        fail(ErrorKind::Domain, "one_sided_derivatives", "direction must be a unit vector");
    const cplx d = direction * step;
    const double f0 = f(point);
    OneSided r;
    r.d_plus = (-3.0 * f0 + 4.0 * f(point + d) - f(point + 2.0 * d)) / (2.0 * step);
    r.d_minus = (3.0 * f0 - 4.0 * f(point - d) + f(point - 2.0 * d)) / (2.0 * step);
    return r;
}

OneSided one_sided_derivatives(const ScalarField& f, cplx point, cplx direction) {
    const double h = f.h(), L = f.grid.L;
    for (double k : {-2.0, 2.0}) {
        cplx q = point + k * h * direction;
        if (std::abs(q.real()) > L + 1e-12 || std::abs(q.imag()) > L + 1e-12)
            fail(ErrorKind::Domain, "one_sided_derivatives", "insufficient stencil room");
    }
    auto g = [&](cplx z) {
        cplx c(std::clamp(z.real(), -L, L), std::clamp(z.imag(), -L, L));
        double v = sample_bilinear(f, c);
        return f.lelong != 0.0 ? v + f.lelong * std::log(std::norm(c)) : v;
    };
    return one_sided_derivatives(g, point, direction, h);
}

int DefectReport::defects() const {
    return static_cast<int>(std::count_if(samples.begin(), samples.end(), [](const Defect& d) { return d.defect; }));
}

namespace {

Defect probe(const ExitTimeEvaluator& h, const PinchSite& site, int index, cplx frame_point,
             const DefectOptions& opt, double floor) {
    auto plane = [&](cplx w) { return site.where + site.direction * w / site.scale; };
    auto g = [&](cplx w) { return h(plane(w)); };
    auto jump_at = [&](double beta, OneSided* out) {
        OneSided r = one_sided_derivatives(g, frame_point, std::polar(1.0, beta), opt.step);
        if (out) *out = r;
        return std::abs(r.d_plus - r.d_minus);
    };
    // The normal is the direction of the largest one-sided jump.
    const double db = kPi / opt.directions;
    double best_beta = opt.frame_rotation, best = -1.0;
    for (int k = 0; k < opt.directions; ++k) {
        double beta = opt.frame_rotation + k * db;
        double j = jump_at(beta, nullptr);
        if (j > best) {
            best = j;
            best_beta = beta;
        }
    }
    double a = best_beta - db, b = best_beta + db;
    const double r = 0.5 * (3.0 - std::sqrt(5.0));
    double x1 = a + r * (b - a), x2 = b - r * (b - a);
    double j1 = jump_at(x1, nullptr), j2 = jump_at(x2, nullptr);
    for (int it = 0; it < 30; ++it) {
        if (j1 >= j2) {
            b = x2;
            x2 = x1;
            j2 = j1;
            x1 = a + r * (b - a);
            j1 = jump_at(x1, nullptr);
        } else {
            a = x1;
            x1 = x2;
            j1 = j2;
            x2 = b - r * (b - a);
            j2 = jump_at(x2, nullptr);
        }
    }
    double beta = j1 >= j2 ? x1 : x2;
    if (std::max(j1, j2) < best) beta = best_beta;

    Defect d;
    d.site = index;
    d.location = plane(frame_point);
    d.normal = site.direction * std::polar(1.0, beta);
    OneSided os;
    d.jump = jump_at(beta, &os);
    d.d_plus = os.d_plus;
    d.d_minus = os.d_minus;
    d.defect = d.jump > floor && d.d_plus < 0.0 && d.d_minus > 0.0;
    return d;
}

}  // namespace

DefectReport c2_defect_report(const ExitTimeEvaluator& h, const std::vector<PinchSite>& sites,
                              const DefectOptions& opt) {
    if (!(opt.step > 0.0) || opt.directions < 4 || opt.arc_samples < 2)
        fail(ErrorKind::Domain, "c2_defect_report", "invalid detector options");
    DefectReport rep;
    rep.noise_floor = 10.0 * opt.step;
    struct Job {
        int site;
        cplx frame_point;
    };
    std::vector<Job> jobs;
    for (int s = 0; s < static_cast<int>(sites.size()); ++s) {
        const auto& site = sites[s];
        if (site.half_length > 0.0) {
            double a = 0.9 * site.half_length * site.scale;
            for (int k = 0; k < opt.arc_samples; ++k)
                jobs.push_back({s, cplx(-a + 2.0 * a * k / (opt.arc_samples - 1), 0.0)});
        } else {
            jobs.push_back({s, 0.0});
        }
    }
    rep.samples.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t k) {
        rep.samples[k] = probe(h, sites[jobs[k].site], jobs[k].site, jobs[k].frame_point, opt, rep.noise_floor);
    });
    return rep;
}

DefectReport c2_defect_report(const TangencyFamily& tf, const DefectOptions& opt) {
    return c2_defect_report(ExitTimeEvaluator(tf), tf.sites, opt);
}

}  // namespace helegeo
