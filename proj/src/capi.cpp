// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <cstring>
#include <mutex>

#include "helegeo/helegeo.h"
#include "json.hpp"
#include "pipeline.hpp"

using namespace helegeo;
using nlohmann::json;

struct helegeo_scenario {
    mutable Scenario scenario;  // kappa of tangency scenarios is extracted on first use
    mutable std::once_flag kappa_once;
    GeodesicRay ray;  // no sample points; used for pointwise Phi~
};

namespace {

thread_local std::string last_error;

helegeo_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::Schema:
        case ErrorKind::Scenario:
            return HELEGEO_E_SCHEMA;
        case ErrorKind::Io:
            return HELEGEO_E_IO;
        case ErrorKind::Domain:
        case ErrorKind::Numeric:
        case ErrorKind::Data:
            return HELEGEO_E_NUMERIC;
    }
    return HELEGEO_E_INTERNAL;
}

template <class F>
helegeo_status guarded(F&& body) {
    last_error.clear();
    try {
        return body();
    } catch (const Error& e) {
        last_error = e.what();
        if (!std::isnan(e.residual())) last_error += " (residual " + std::to_string(e.residual()) + ")";
        return status_of(e.kind());
    } catch (const std::exception& e) {
        last_error = std::string("internal: ") + e.what();
        return HELEGEO_E_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

helegeo_status need(const void* p, const char* what) {
    if (p) return HELEGEO_OK;
    last_error = std::string(what) + " is null";
    return HELEGEO_E_SCHEMA;
}

}  // namespace

extern "C" {

const char* helegeo_version(void) { return "1.0.0"; }

const char* helegeo_last_error(void) { return last_error.c_str(); }

void helegeo_free_string(char* s) { std::free(s); }

helegeo_status helegeo_run(const char* config_json, const char* export_file, int verify_all, char** report_json) {
    if (need(config_json, "config")) return HELEGEO_E_SCHEMA;
    return guarded([&] {
        Config c = parse_config(config_json);
        RunOptions opt;
        if (export_file) opt.export_file = export_file;
        opt.verify_all = verify_all != 0;
        RunReport rep = run(c, opt);
        if (report_json) {
            json j = json::parse(checks_to_json(rep.checks));
            j["files"] = rep.files;
            j["summary"] = rep.summary;
            *report_json = dup(j.dump(2) + "\n");
        }
        return rep.passed() ? HELEGEO_OK : HELEGEO_CHECKS_FAILED;
    });
}

helegeo_status helegeo_scenario_create(const char* config_json, helegeo_scenario** out) {
    if (need(config_json, "config") || need(out, "out")) return HELEGEO_E_SCHEMA;
    *out = nullptr;
    return guarded([&] {
        Config c = parse_config(config_json);
        auto h = std::make_unique<helegeo_scenario>();
        h->scenario = build_scenario(c.scenario, c.grids);
        if (h->scenario.envelopes)
            h->ray = build_ray(h->scenario.envelopes, {}, geometric_s_grid(c.grids.s_max, c.grids.s_samples));
        *out = h.release();
        return HELEGEO_OK;
    });
}

void helegeo_scenario_destroy(helegeo_scenario* s) { delete s; }

helegeo_status helegeo_kappa(const helegeo_scenario* s, double x, double y, double* out) {
    if (need(s, "scenario") || need(out, "out")) return HELEGEO_E_SCHEMA;
    return guarded([&] {
        std::call_once(s->kappa_once, [&] { ensure_kappa(s->scenario); });
        *out = s->scenario.field->evaluate(cplx(x, y));
        return HELEGEO_OK;
    });
}

helegeo_status helegeo_phi(const helegeo_scenario* s, double x, double y, double* out) {
    if (need(s, "scenario") || need(out, "out")) return HELEGEO_E_SCHEMA;
    return guarded([&] {
        if (!s->scenario.phi) fail(ErrorKind::Scenario, "phi", "not available for this scenario");
        *out = (*s->scenario.phi)(cplx(x, y));
        return HELEGEO_OK;
    });
}

helegeo_status helegeo_envelope(const helegeo_scenario* s, double t, double x, double y, double* out) {
    if (need(s, "scenario") || need(out, "out")) return HELEGEO_E_SCHEMA;
    return guarded([&] {
        if (!s->scenario.phi) fail(ErrorKind::Scenario, "envelope", "not available for this scenario");
        *out = envelope_closed(*s->scenario.field, *s->scenario.phi, t, cplx(x, y));
        return HELEGEO_OK;
    });
}

helegeo_status helegeo_exit_time(const helegeo_scenario* s, double x, double y, double* out) {
    if (need(s, "scenario") || need(out, "out")) return HELEGEO_E_SCHEMA;
    return guarded([&] {
        const auto& sc = s->scenario;
        if (sc.tangency) {
            *out = ExitTimeEvaluator(*sc.tangency)(cplx(x, y));
        } else {
            double e = sc.family->exit_time(cplx(x, y));
            *out = std::isfinite(e) ? e : standard_time(std::abs(cplx(x, y)));
        }
        return HELEGEO_OK;
    });
}

helegeo_status helegeo_tilde(const helegeo_scenario* s, double x, double y, double sv, double* out, double* tstar) {
    if (need(s, "scenario") || need(out, "out")) return HELEGEO_E_SCHEMA;
    return guarded([&] {
        if (!s->scenario.envelopes) fail(ErrorKind::Scenario, "tilde", "not available for this scenario");
        *out = s->ray.evaluate(cplx(x, y), sv, tstar);
        return HELEGEO_OK;
    });
}

}  // extern "C"
