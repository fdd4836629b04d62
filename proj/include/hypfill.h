/* C interface to the hyperbolic-filling Dirichlet solver.
 *
 * All functions return HF_OK (0) on success. On failure they return an error
 * code and hf_last_error() describes what went wrong (thread-local).
 * Objects are opaque; free them with the matching *_free call.
 *
 * File conventions:
 *   space        JSON  (points, metric, nu, boundary, pi, sigma, rescaled)
 *   filling      JSONL (one record per vertex and per edge)
 *   functions    CSV "id,value"; boundary data is ordered by boundary sample,
 *                source data and traces by interior sample, graph solutions
 *                by filling vertex.
 */
#ifndef HYPFILL_H
#define HYPFILL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  HF_OK = 0,
  HF_ERR_INVALID = 1,  /* bad arguments or inconsistent inputs */
  HF_ERR_IO = 2,       /* file could not be read/written/parsed */
  HF_ERR_NUMERIC = 3   /* solver or check failed numerically */
};

typedef struct hf_space hf_space;
typedef struct hf_filling hf_filling;

const char* hf_last_error(void);

/* Built-in example spaces: interval, square, carpet_minus_edge, koch_rug,
 * pentagasket_minus_arc. interval_sigma only affects "interval".
 * rescale != 0 normalizes the diameter to 1/2 (required before filling). */
int hf_space_generate(const char* name, int depth, double interval_sigma, int rescale,
                      hf_space** out);
int hf_space_load(const char* path, hf_space** out);
int hf_space_save(const hf_space* s, const char* path);
int hf_space_point_count(const hf_space* s, uint32_t* out);
void hf_space_free(hf_space* s);

/* levels <= 0 picks the deepest level resolved by the sample spacing. */
int hf_filling_build(const hf_space* s, double alpha, double tau, int levels, double p,
                     double theta, hf_filling** out);
int hf_filling_load(const char* path, hf_filling** out);
int hf_filling_save(const hf_filling* g, const char* path);
int hf_filling_vertex_count(const hf_filling* g, uint32_t* out);
void hf_filling_free(hf_filling* g);

/* Minimize the discrete energy with boundary data f (CSV, boundary order) and
 * optional source density g (CSV, interior order; NULL for the homogeneous
 * problem). band <= 0 picks the default boundary pinning width. method is
 * "auto", "cg", "irls" or "gd". Writes the vertex solution CSV and, if
 * diagnostics_json is non-NULL, a JSON summary (energy, residual, iterations).
 */
int hf_solve(const hf_space* s, const hf_filling* g, double p, double theta, double band,
             const char* f_csv, const char* g_csv, double tol, uint32_t max_iter,
             const char* method, const char* solution_csv, const char* diagnostics_json);

/* Trace a vertex solution back to the interior samples. */
int hf_trace(const hf_space* s, const hf_filling* g, const char* solution_csv,
             const char* trace_csv);

/* Capacity scaling at a boundary sample over dyadic radii; center < 0 runs
 * three spread centers. Writes radius/capacity CSV rows and a JSON summary
 * with fitted slopes and the Wiener integrand. */
int hf_capacity_report(const hf_space* s, const hf_filling* g, double p, double theta,
                       int32_t center, const char* csv_out, const char* json_out);

/* Homogeneous boundary-convergence sweep over filling depths "3,4,5". */
int hf_kellogg_report(const hf_space* s, const char* f_csv, double alpha, double tau,
                      const char* depths, double p, double theta, double band, double tol,
                      const char* json_out);

/* Interior regularity: fits the pairwise modulus of a solved problem in a
 * central ball and reports it with the theoretical floor. */
int hf_holder_report(const hf_space* s, const hf_filling* g, double p, double theta, double q,
                     double band, const char* f_csv, const char* g_csv_opt,
                     const char* json_out);

/* Property-check suites; see hf_suite_names. Returns HF_OK when every check
 * in the suite passed, HF_ERR_NUMERIC when some check failed. */
int hf_run_suite(const char* suite, const char* report_json_out);
const char* hf_suite_names(void); /* comma separated */

#ifdef __cplusplus
}
#endif

#endif /* HYPFILL_H */
