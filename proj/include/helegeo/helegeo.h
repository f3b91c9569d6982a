/* Copyright 2026 helegeo contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to helegeo: Hele-Shaw flows on the Riemann sphere, their permeability,
 * envelopes and geodesic rays. All functions return a helegeo_status; on failure the
 * message is available from helegeo_last_error() on the calling thread.
 */

#ifndef HELEGEO_HELEGEO_H
#define HELEGEO_HELEGEO_H

#if defined(_WIN32)
#  if defined(HELEGEO_BUILDING)
#    define HELEGEO_API __declspec(dllexport)
#  else
#    define HELEGEO_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) || defined(__clang__)
#  define HELEGEO_API __attribute__((visibility("default")))
#else
#  define HELEGEO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum helegeo_status {
    HELEGEO_OK = 0,
    HELEGEO_CHECKS_FAILED = 1, /* ran to completion, some verification failed */
    HELEGEO_E_SCHEMA = 2,      /* invalid config, scenario or argument */
    HELEGEO_E_NUMERIC = 3,     /* a computation failed (module, op and residual in the message) */
    HELEGEO_E_IO = 4,
    HELEGEO_E_INTERNAL = 5
} helegeo_status;

typedef struct helegeo_scenario helegeo_scenario;

HELEGEO_API const char* helegeo_version(void);

/* Message of the last failure on this thread ("" if none). */
HELEGEO_API const char* helegeo_last_error(void);

/* Frees strings returned through char** out-parameters. */
HELEGEO_API void helegeo_free_string(char* s);

/* Runs a JSON config. export_file may be NULL; when set, only the primary output of the single
 * requested stage is written there. verify_all = 0 skips the slow verification suites.
 * report_json (may be NULL) receives {"checks", "files", "passed", "summary"}. */
HELEGEO_API helegeo_status helegeo_run(const char* config_json, const char* export_file, int verify_all,
                                       char** report_json);

/* Builds a scenario from a JSON config (stages and export are ignored but must validate). */
HELEGEO_API helegeo_status helegeo_scenario_create(const char* config_json, helegeo_scenario** out);
HELEGEO_API void helegeo_scenario_destroy(helegeo_scenario* s);

/* Point evaluations on a scenario. */
HELEGEO_API helegeo_status helegeo_kappa(const helegeo_scenario* s, double x, double y, double* out);
HELEGEO_API helegeo_status helegeo_phi(const helegeo_scenario* s, double x, double y, double* out);
/* psi_t(x + iy) including the t log|z|^2 pole; t in [0, t_max]. */
HELEGEO_API helegeo_status helegeo_envelope(const helegeo_scenario* s, double t, double x, double y, double* out);
HELEGEO_API helegeo_status helegeo_exit_time(const helegeo_scenario* s, double x, double y, double* out);
/* Phi~(z, s) for s >= 0; tstar (may be NULL) receives the maximizing t. */
HELEGEO_API helegeo_status helegeo_tilde(const helegeo_scenario* s, double x, double y, double sv, double* out,
                                         double* tstar);

#ifdef __cplusplus
}
#endif

#endif /* HELEGEO_HELEGEO_H */
