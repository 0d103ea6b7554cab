/*
 * diracred -- exact symbolic toolkit for Dirac structures and their
 * singular reduction on compact-group quotients.
 *
 * C interface of the shared library. All functions are thread-compatible:
 * distinct handles may be used from distinct threads concurrently; a single
 * handle must not be shared without external synchronization. Strings
 * returned through out-parameters are owned by the caller and must be
 * released with dr_string_free. Handles are opaque and released with their
 * matching *_free function.
 */
#ifndef DIRACRED_H
#define DIRACRED_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined _WIN32
#define DR_API __declspec(dllexport)
#else
#define DR_API __attribute__((visibility("default")))
#endif

typedef enum dr_status {
    DR_OK = 0,
    DR_ERR_PARSE = 1,      /* malformed input (expression or scene file) */
    DR_ERR_VALIDATION = 2, /* scene data violates a construction invariant */
    DR_ERR_ARGUMENT = 3,   /* bad argument (unknown scene, command, option) */
    DR_ERR_INTERNAL = 4
} dr_status;

typedef struct dr_scene dr_scene;
typedef struct dr_report dr_report;

DR_API const char* dr_version(void);

/* -------- scenes ------------------------------------------------------- */

/* Load a scene from a file in the sectioned text format. */
DR_API dr_status dr_scene_load_file(const char* path, dr_scene** out, char** error_message);

/* Load a scene from an in-memory string. `name` labels reports. */
DR_API dr_status dr_scene_load_string(const char* text, const char* name, dr_scene** out,
                                      char** error_message);

/* One of: s1_r3, s1_r6, so3_r3r3, so3_split_counterexample,
 * nonintegrable_demo. */
DR_API dr_status dr_scene_builtin(const char* name, dr_scene** out, char** error_message);

/* Comma-separated list of builtin scene names. */
DR_API dr_status dr_builtin_names(char** out);

DR_API const char* dr_scene_name(const dr_scene* scene);

/* Serialize the declared scene data to the text exchange format. */
DR_API dr_status dr_scene_to_text(const dr_scene* scene, char** out);

DR_API void dr_scene_free(dr_scene* scene);

/* -------- commands ------------------------------------------------------ */

/*
 * Run one of: check, reduce, bracket, average, hamiltonian, probe, flow.
 *
 * `options_json` is NULL or a JSON object; recognized keys:
 *   "bound":   int     re-expression degree bound (default 4)
 *   "stratum": string  restrict reduce/hamiltonian to one stratum
 *   "seed":    int     seed for random sample generation (default 1)
 *   "samples": int     extra random probe samples (default 0)
 *   "f":       string  hamiltonian function (hamiltonian command)
 *   "expr":    string  extra function to average (average command)
 *   "field":   string  flow field: "tg:K", "vertical:K", or "e1,e2,..."
 *   "start":   string  flow start point "1,0,0" (rational entries)
 *   "time":    double  flow duration (default 1.0)
 *   "steps":   int     flow RK4 steps (default 1000)
 */
DR_API dr_status dr_run(const dr_scene* scene, const char* command, const char* options_json,
                        dr_report** out, char** error_message);

/* -------- reports ------------------------------------------------------- */

/* Canonical JSON document; two runs on the same input are byte-identical. */
DR_API dr_status dr_report_to_json(const dr_report* report, char** out);

/* Human-readable text rendering. */
DR_API dr_status dr_report_to_text(const dr_report* report, char** out);

/* 1 when the report tree contains a fail node, else 0. */
DR_API int dr_report_has_failures(const dr_report* report);

DR_API void dr_report_free(dr_report* report);

/* -------- small utilities ------------------------------------------------ */

/*
 * Parse an expression over a comma-separated coordinate list and return its
 * canonical reduced form. Exercises the exact expression core through the C
 * surface.
 */
DR_API dr_status dr_parse_expr(const char* coords_csv, const char* expr, char** canonical_out,
                               char** error_message);

DR_API void dr_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DIRACRED_H */
