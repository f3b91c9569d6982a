// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.hpp"

#include <algorithm>
#include <filesystem>

#include "io.hpp"
#include "json.hpp"

namespace helegeo {

using nlohmann::json;

namespace {

std::string extension(const std::string& name) {
    auto p = name.rfind('.');
    return p == std::string::npos ? "" : name.substr(p + 1);
}

std::string fmt(const char* f, double x) {
    char b[96];
    std::snprintf(b, sizeof b, f, x);
    return b;
}

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

// Half-width of the square shown in plots and grid exports.
double view_half_width(const Scenario& s) {
    if (s.smooth()) return s.grids.window;
    return 1.2 * s.family->curve(s.family->size() - 1).max_radius();
}

void require_smooth(const Scenario& s, const char* stage) {
    if (!s.smooth())
        fail(ErrorKind::Scenario, stage,
             "needs a flow that is standard near 0 and infinity (not available for tangency scenarios)");
}

std::vector<int> spread(int n, int k) {
    std::vector<int> idx;
    for (int i = 0; i < k; ++i) {
        int j = static_cast<int>(std::lround(static_cast<double>(i) * (n - 1) / (k - 1)));
        if (idx.empty() || idx.back() != j) idx.push_back(j);
    }
    return idx;
}

}  // namespace

bool RunReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string checks_to_json(const std::vector<Check>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"criterion", c.criterion}, {"suite", c.suite}, {"name", c.name}, {"scenario", c.scenario},
                       {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}, {"detail", c.detail}});
    bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    return json{{"checks", arr}, {"passed", ok}}.dump(2) + "\n";
}

std::vector<Artifact> synthesize_artifacts(const Scenario& s, RunReport& rep) {
    if (!s.field) fail(ErrorKind::Domain, "synthesize", "kappa has not been extracted");
    std::vector<Artifact> out;
    const auto& fam = *s.family;
    const auto& f = *s.field;

    CsvTable curves({"t", "j", "theta", "x", "y"});
    std::vector<int> rows = spread(fam.size(), 11);
    for (int i : rows) {
        const auto& c = fam.curve(i);
        for (int j = 0; j < c.size(); ++j)
            curves.row({fam.t_grid()[i], static_cast<double>(j), c.theta(j), c.samples()[j].real(), c.samples()[j].imag()});
    }
    out.push_back({"family.csv", curves.text()});

    GridSpec g{view_half_width(s), s.grids.grid_size};
    ScalarField logk(g, NAN);
    CsvTable kappa({"x", "y", "kappa"});
    double kmin = INFINITY, kmax = -INFINITY;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            cplx z = g.z(i, j);
            double k = NAN;
            try {
                k = f.evaluate(z);
            } catch (const Error&) {
            }
            kappa.row({z.real(), z.imag(), k});
            if (std::isfinite(k)) {
                logk.at(i, j) = std::log(k);
                kmin = std::min(kmin, k);
                kmax = std::max(kmax, k);
            }
        }
    out.push_back({"kappa.csv", kappa.text(), true});

    json summary = {{"scenario", s.name()},
                    {"t_min", fam.t_min()},
                    {"t_max", f.t_max()},
                    {"rows", f.rows()},
                    {"stitch_error", f.stitch_error()},
                    {"symm_rows", f.symm_rows()},
                    {"kappa_min_on_grid", kmin},
                    {"kappa_max_on_grid", kmax}};
    if (f.has_inner_patch()) summary["rho_in"] = f.rho_in();
    if (f.has_outer_patch()) summary["rho_out"] = f.rho_out();
    if (s.phi) {
        summary["phi_support_radius"] = s.phi->support_radius();
        ScalarField pg = s.phi->on_grid(g);
        CsvTable phi({"x", "y", "phi"});
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) phi.row({g.x(i), g.x(j), pg.at(i, j)});
        out.push_back({"phi.csv", phi.text()});
    }
    out.push_back({"synthesize.json", summary.dump(2) + "\n", true});

    SvgCanvas svg(-g.L, -g.L, g.L, g.L);
    if (std::isfinite(kmin)) svg.heatmap(logk, std::log(kmin), std::log(kmax));
    for (int i : rows) svg.path(fam.curve(i), "#c03020", 1.0);
    out.push_back({"kappa.svg", svg.document(), true});

    rep.summary.push_back("synthesize: " + std::to_string(f.rows()) + " rows, t in [" + fmt("%.4g", fam.t_min()) +
                          ", " + fmt("%.4g", f.t_max()) + "], stitch error " + fmt("%.3g", f.stitch_error()));
    return out;
}

std::vector<Artifact> envelope_artifacts(const Scenario& s, RunReport& rep) {
    require_smooth(s, "envelope");
    std::vector<Artifact> out;
    const auto& f = *s.field;
    std::vector<double> ts;
    for (double t : {0.1, 0.3, 0.5, 0.7})
        if (t <= f.t_max()) ts.push_back(t);
    GridSpec g{1.5 * s.family->curve_at(ts.back()).max_radius(), s.grids.grid_size};
    const double h = g.h();
    ScalarField pg = s.phi->on_grid(g);
    CsvTable tab({"t", "x", "y", "phi", "psi_closed", "psi_obstacle"});
    json per_t = json::array();
    for (double t : ts) {
        auto cl = envelope_closed_grid(f, *s.phi, t, g);
        auto ob = envelope_obstacle(pg, t);
        auto mask = recover_domain(ob.psi, pg);
        double area = recovered_area(mask, g, [&](cplx z) { return 1.0 / f.evaluate(z); });
        double gap = 0.0;
        ScalarField excess(g, 0.0);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                if (std::abs(g.z(i, j)) > 3 * h) gap = std::max(gap, std::abs(ob.psi.at(i, j) - cl.at(i, j)));
                excess.at(i, j) = pg.at(i, j) - ob.psi.value(i, j);
                tab.row({t, g.x(i), g.x(j), pg.at(i, j), cl.value(i, j), ob.psi.value(i, j)});
            }
        per_t.push_back({{"t", t}, {"area", area}, {"area_error", std::abs(area - t)},
                         {"gap_off_origin", gap}, {"sweeps", ob.sweeps}, {"residual", ob.residual}});
        // Heatmap of phi - psi_t (zero on the contact set) with the flow curve on top.
        double top = 0.0;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                if (std::abs(g.z(i, j)) > 3 * h) top = std::max(top, excess.at(i, j));
        SvgCanvas svg(-g.L, -g.L, g.L, g.L);
        svg.heatmap(excess, 0.0, top);
        svg.path(s.family->curve_at(t), "#c03020", 1.5);
        out.push_back({"envelope_t" + fmt("%g", t) + ".svg", svg.document(), t == 0.5});
        rep.summary.push_back("envelope t = " + fmt("%g", t) + ": area error " + fmt("%.3g", std::abs(area - t)) +
                              ", closed/obstacle gap " + fmt("%.3g", gap) + " (h = " + fmt("%.4g", h) + ")");
    }
    out.push_back({"envelope.csv", tab.text(), true});
    out.push_back({"envelope.json",
                   json{{"scenario", s.name()}, {"grid", {{"L", g.L}, {"n", g.n}, {"h", h}}}, {"envelopes", per_t}}.dump(2) + "\n",
                   true});
    return out;
}

std::vector<Artifact> geodesic_artifacts(const Scenario& s, RunReport& rep) {
    require_smooth(s, "geodesic");
    std::vector<Artifact> out;
    GeodesicRay ray = grid_ray(s);
    Hamiltonian H = hamiltonian(ray);
    const auto& sg = ray.s_grid();
    const int m = static_cast<int>(sg.size());
    CsvTable tab({"x", "y", "s", "phi_tilde", "t_star", "h_fd", "h_argmax", "second_difference"});
    double worst_second = 0.0, lo = 0.0, hi = -1.0, defect = 0.0;
    for (int p = 0; p < ray.point_count(); ++p) {
        cplx z = ray.points()[p];
        defect = std::max(defect, ray.concavity_defect(p));
        for (int q = 0; q < m; ++q) {
            double d2 = NAN;
            if (q > 0) {
                double d = (ray.value(p, q) - ray.value(p, q - 1)) / (sg[q] - sg[q - 1]);
                lo = std::min(lo, d);
                hi = std::max(hi, d);
                if (q + 1 < m) {
                    d2 = (ray.value(p, q + 1) - ray.value(p, q)) / (sg[q + 1] - sg[q]) - d;
                    worst_second = std::min(worst_second, d2);
                }
            }
            tab.row({z.real(), z.imag(), sg[q], ray.value(p, q), ray.maximizer(p, q), H.fd_at(p, q), H.argmax_at(p, q), d2});
        }
    }
    out.push_back({"ray.csv", tab.text(), true});

    // Round trip over the interior third of the t-range.
    double rt = 0.0;
    const auto& ts = ray.t_grid();
    for (int p = 0; p < ray.point_count(); ++p)
        for (std::size_t k = 0; k < ts.size(); ++k)
            if (ts[k] >= 1.0 / 3.0 && ts[k] <= 2.0 / 3.0)
                rt = std::max(rt, std::abs(inverse_legendre(ray, ts[k], ray.points()[p]).value - ray.envelope(p)[k]));

    json summary = {{"scenario", s.name()},
                    {"points", ray.point_count()},
                    {"s_samples", m},
                    {"s_max", sg.back()},
                    {"t_samples", static_cast<int>(ts.size())},
                    {"min_second_difference", worst_second},
                    {"slope_min", lo},
                    {"slope_max", hi},
                    {"max_chord_excess", defect},
                    {"round_trip_error", rt}};
    out.push_back({"ray.json", summary.dump(2) + "\n", true});

    // Phi~ over the z-grid at a few s-slices.
    const int n = s.grids.ray_size;
    for (double target : {0.0, 1.0, 4.0}) {
        if (target > sg.back()) continue;
        int q = 0;
        for (int k = 0; k < m; ++k)
            if (std::abs(sg[k] - target) < std::abs(sg[q] - target)) q = k;
        ScalarField slice(GridSpec{s.grids.window, n}, NAN);
        double vlo = INFINITY, vhi = -INFINITY;
        int p = 0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (std::abs(slice.grid.z(i, j)) <= 1e-9) continue;
                double v = ray.value(p++, q);
                slice.at(i, j) = v;
                vlo = std::min(vlo, v);
                vhi = std::max(vhi, v);
            }
        SvgCanvas svg(-s.grids.window, -s.grids.window, s.grids.window, s.grids.window);
        svg.heatmap(slice, vlo, vhi);
        svg.text(cplx(-0.95 * s.grids.window, 0.9 * s.grids.window), "s = " + format_number(sg[q]));
        out.push_back({"ray_s" + fmt("%g", target) + ".svg", svg.document(), target == 0.0});
    }
    rep.summary.push_back("geodesic: " + std::to_string(ray.point_count()) + " points x " + std::to_string(m) +
                          " s-samples; min second difference " + fmt("%.3g", worst_second) + "; slopes in [" +
                          fmt("%.6g", lo) + ", " + fmt("%.6g", hi) + "]; round trip " + fmt("%.3g", rt));
    return out;
}

std::vector<Artifact> singularity_artifacts(const Scenario& s, RunReport& rep) {
    if (!s.tangency) fail(ErrorKind::Scenario, "singularity", "needs a tangency scenario (use --pinch)");
    const auto& tf = *s.tangency;
    std::vector<Artifact> out;
    DefectReport r = c2_defect_report(tf);
    json defects = json::array();
    CsvTable tab({"site", "x", "y", "normal_x", "normal_y", "d_plus", "d_minus", "jump", "verdict"});
    for (const auto& d : r.samples) {
        defects.push_back({{"site", d.site}, {"location", pair(d.location)}, {"direction", pair(d.normal)},
                           {"d_plus", d.d_plus}, {"d_minus", d.d_minus}, {"jump", d.jump}, {"verdict", d.verdict()}});
        tab.row({std::to_string(d.site), format_number(d.location.real()), format_number(d.location.imag()),
                 format_number(d.normal.real()), format_number(d.normal.imag()), format_number(d.d_plus),
                 format_number(d.d_minus), format_number(d.jump), d.verdict()});
    }
    json j = {{"scenario", s.name()}, {"T", tf.T}, {"delta", tf.delta}, {"noise_floor", r.noise_floor},
              {"count", r.defects()}, {"defects", defects}};
    out.push_back({"defects.json", j.dump(2) + "\n", true});
    out.push_back({"defects.csv", tab.text(), true});

    ExitTimeField w = exit_time_field(tf, ExitWindow{0, 0.05, 41, 0.0});
    CsvTable ex({"frame_x", "frame_y", "x", "y", "exit_time", "status"});
    static const char* names[] = {"covered", "extrapolated", "never_covered", "below_range"};
    for (int jj = 0; jj < w.field.n(); ++jj)
        for (int i = 0; i < w.field.n(); ++i) {
            cplx fz = w.field.grid.z(i, jj);
            cplx z = w.to_plane(fz);
            auto st = w.status[static_cast<std::size_t>(jj) * w.field.n() + i];
            ex.row({format_number(fz.real()), format_number(fz.imag()), format_number(z.real()),
                    format_number(z.imag()), format_number(w.field.at(i, jj)), names[static_cast<int>(st)]});
        }
    out.push_back({"exit_time.csv", ex.text()});

    BoundaryCurve c = s.family->curve_at(tf.T - tf.delta);
    double L = 1.2 * c.max_radius();
    SvgCanvas svg(-L, -L, L, L);
    svg.path(c, "#2040a0", 1.5);
    for (const auto& d : r.samples) svg.marker(d.location, 4.0, d.defect ? "#d02020" : "#909090");
    out.push_back({"singularity.svg", svg.document(), true});

    std::string line = "singularity: " + std::to_string(r.defects()) + " defect(s) among " +
                       std::to_string(r.samples.size()) + " probe(s)";
    if (!r.samples.empty())
        line += "; first jump " + fmt("%.4f", r.samples[0].jump) + " (d+ " + fmt("%.4f", r.samples[0].d_plus) +
                ", d- " + fmt("%.4f", r.samples[0].d_minus) + ")";
    rep.summary.push_back(line);
    return out;
}

std::vector<Artifact> simulate_artifacts(const Scenario& s, RunReport& rep) {
    require_smooth(s, "simulate");
    std::vector<Artifact> out;
    const double t0 = std::max(0.05, s.family->t_min()), t1 = std::min(0.95, s.field->t_max());
    EvolveController ctl;
    ctl.store_dt = 0.05;
    Evolution ev = evolve(s.family->curve_at(t0), *s.field, t0, t1, ctl);
    CsvTable tab({"time", "label", "j", "x", "y"});
    json frames = json::array();
    double worst = 0.0;
    for (int i = 0; i < ev.family.size(); ++i) {
        const auto& c = ev.family.curve(i);
        for (int j = 0; j < c.size(); ++j)
            tab.row({ev.times[i], ev.family.t_grid()[i], static_cast<double>(j), c.samples()[j].real(), c.samples()[j].imag()});
        BoundaryCurve ref = s.family->curve_at(ev.times[i]);
        double hd = hausdorff_distance(c, ref);
        worst = std::max(worst, hd / (2.0 * ref.max_radius()));
        frames.push_back({{"time", ev.times[i]}, {"label", ev.family.t_grid()[i]}, {"hausdorff", hd}});
    }
    out.push_back({"evolution.csv", tab.text(), true});
    json j = {{"scenario", s.name()}, {"steps", ev.steps}, {"halvings", ev.halvings}, {"frames", frames}};
    out.push_back({"evolution.json", j.dump(2) + "\n", true});
    double L = 1.1 * ev.family.curve(ev.family.size() - 1).max_radius();
    SvgCanvas svg(-L, -L, L, L);
    for (int i = 0; i < ev.family.size(); ++i) svg.path(ev.family.curve(i), "#2040a0", 1.0);
    out.push_back({"evolution.svg", svg.document(), true});
    rep.summary.push_back("simulate: " + std::to_string(ev.steps) + " steps from t = " + fmt("%g", t0) + " to " +
                          fmt("%g", t1) + "; worst Hausdorff/(2 max radius) " + fmt("%.3g", worst));
    return out;
}

std::vector<Artifact> verify_artifacts(const Scenario& s, RunReport& rep, const RunOptions& opt) {
    std::vector<Check> checks;
    if (opt.verify_all) {
        checks = verify_all(s, opt.verify);
    } else {
        auto add = [&](std::vector<Check> c) { checks.insert(checks.end(), c.begin(), c.end()); };
        add(check_kappa(s, opt.verify));
        add(check_potential(s, opt.verify));
        add(check_moments(s, opt.verify));
        add(check_area_law(s, opt.verify));
        if (s.smooth()) add(check_ray(s, grid_ray(s), opt.verify));
        add(check_singularity(s, opt.verify));
    }
    CsvTable tab({"criterion", "suite", "scenario", "name", "value", "bound", "pass", "detail"});
    int failed = 0;
    for (const auto& c : checks) {
        tab.row({std::to_string(c.criterion), c.suite, c.scenario, c.name, format_number(c.value),
                 format_number(c.bound), c.pass ? "true" : "false", c.detail});
        if (!c.pass) ++failed;
    }
    rep.checks.insert(rep.checks.end(), checks.begin(), checks.end());
    rep.summary.push_back("verify: " + std::to_string(checks.size() - failed) + " of " + std::to_string(checks.size()) +
                          " checks passed");
    return {{"verify.json", checks_to_json(checks), true}, {"verify.csv", tab.text(), true}};
}

RunReport run(const Config& config, const RunOptions& opt) {
    if (config.stages.empty()) fail(ErrorKind::Schema, "config", "no stages requested");
    if (!opt.export_file.empty() && config.stages.size() != 1)
        fail(ErrorKind::Schema, "export", "an export file needs exactly one stage");
    RunReport rep;
    Scenario s = build_scenario(config.scenario, config.grids);
    for (Stage st : config.stages)
        if (st == Stage::Synthesize || st == Stage::Verify) ensure_kappa(s);
    std::vector<Artifact> all;
    for (Stage st : config.stages) {
        std::vector<Artifact> a;
        switch (st) {
            case Stage::Synthesize: a = synthesize_artifacts(s, rep); break;
            case Stage::Envelope: a = envelope_artifacts(s, rep); break;
            case Stage::Geodesic: a = geodesic_artifacts(s, rep); break;
            case Stage::Singularity: a = singularity_artifacts(s, rep); break;
            case Stage::Simulate: a = simulate_artifacts(s, rep); break;
            case Stage::Verify: a = verify_artifacts(s, rep, opt); break;
        }
        all.insert(all.end(), a.begin(), a.end());
    }

    if (!opt.export_file.empty()) {
        const std::string ext = extension(opt.export_file);
        auto it = std::find_if(all.begin(), all.end(), [&](const Artifact& a) { return a.primary && extension(a.name) == ext; });
        if (it == all.end())
            fail(ErrorKind::Schema, "export", "stage " + std::string(stage_name(config.stages[0])) + " has no ." + ext + " output");
        write_atomic(opt.export_file, it->content);
        rep.files.push_back(opt.export_file);
        return rep;
    }

    namespace fs = std::filesystem;
    const fs::path dir(config.output.dir);
    json manifest = json::array();
    for (const auto& a : all) {
        if (!config.output.wants(extension(a.name))) continue;
        std::string path = (dir / a.name).string();
        write_atomic(path, a.content);
        rep.files.push_back(path);
        manifest.push_back(a.name);
    }
    write_atomic((dir / "config.json").string(), config_to_json(config));
    rep.files.push_back((dir / "config.json").string());
    json m = {{"files", manifest}, {"scenario", s.name()}, {"passed", rep.passed()}};
    write_atomic((dir / "manifest.json").string(), m.dump(2) + "\n");
    rep.files.push_back((dir / "manifest.json").string());
    return rep;
}

}  // namespace helegeo
