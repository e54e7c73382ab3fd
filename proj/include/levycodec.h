/* levycodec — C API for the Lévy-path codec library.
 *
 * All functions return an lvc_status (LVC_OK on success) or a non-NULL handle;
 * on failure, lvc_last_error() returns a thread-local description of the most
 * recent error on the calling thread.  Handles are opaque and must be released
 * with the matching *_free function.
 */
#ifndef LEVYCODEC_H
#define LEVYCODEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lvc_status {
  LVC_OK = 0,
  LVC_ERR_DOMAIN = 1,      /* invalid argument / precondition violated */
  LVC_ERR_QUADRATURE = 2,  /* numeric integration did not converge */
  LVC_ERR_RESOLUTION = 3,  /* resolution guard tripped (jump count, dyadic) */
  LVC_ERR_MALFORMED = 4,   /* bitstream or container cannot be parsed */
  LVC_ERR_IO = 5,          /* file read/write failure */
  LVC_ERR_INTERNAL = 6
} lvc_status;

const char* lvc_last_error(void);

/* ------------------------------------------------------------------ */
/* Triplets (JSON schema: {"measure":{"kind",...},"sigma2":..,"b":..}) */

typedef struct lvc_triplet lvc_triplet;

lvc_triplet* lvc_triplet_from_json(const char* json_text);
lvc_status lvc_triplet_to_json(const lvc_triplet* t, char** out_json);
void lvc_triplet_free(lvc_triplet* t);
void lvc_string_free(char* s);

/* Complexity functionals; method 0 = closed form where available,
 * 1 = force quadrature.  F2 in nats; +inf is a representable result. */
lvc_status lvc_tail_mass(const lvc_triplet* t, double eps, int method, double* out);
lvc_status lvc_f1(const lvc_triplet* t, double eps, int method, double* out);
lvc_status lvc_f2(const lvc_triplet* t, double eps, int method, double* out);
lvc_status lvc_f_total(const lvc_triplet* t, double eps, int method, double* out);
lvc_status lvc_drift_compensation(const lvc_triplet* t, double eps, int method,
                                  double* out);
lvc_status lvc_moment_diag(const lvc_triplet* t, double q, double* out);
lvc_status lvc_condition_b_ratio(const lvc_triplet* t, double mu, double eps,
                                 double* out);

/* ------------------------------------------------------------------ */
/* Paths */

typedef struct lvc_path lvc_path;

/* grid_step must be a dyadic in (0,1]; cutoff_ratio in (0,1]. */
lvc_status lvc_simulate(const lvc_triplet* t, double grid_step,
                        double cutoff_ratio, uint64_t seed, double eps_min,
                        lvc_path** out);
lvc_status lvc_path_value_at(const lvc_path* path, double time, double* out);
lvc_status lvc_lp_distance(const lvc_path* a, const lvc_path* b, double p,
                           double* out);
lvc_status lvc_path_to_csv(const lvc_path* path, char** out_csv);
lvc_path* lvc_path_from_csv(const char* csv_text);
void lvc_path_free(lvc_path* path);

/* ------------------------------------------------------------------ */
/* Codec (LVC1 container bytes) */

typedef struct lvc_buffer {
  uint8_t* data;
  size_t size;
} lvc_buffer;

void lvc_buffer_free(lvc_buffer* buf);

/* mode 0 = entropy (plain encode), 1 = quantization (truncating encode with
 * caps c1, c2; ignored in entropy mode). */
lvc_status lvc_encode(const lvc_path* path, const lvc_triplet* t, double eps,
                      double p, int mode, double c1, double c2,
                      lvc_buffer* out);
/* Decodes a container into the reconstruction path. */
lvc_status lvc_decode(const uint8_t* data, size_t size, double grid_step,
                      lvc_path** out);

/* simulate -> encode -> decode -> L^p error with the per-path certificate. */
lvc_status lvc_roundtrip(const lvc_triplet* t, double eps, double grid_step,
                         double cutoff_ratio, double p, int mode, double c1,
                         double c2, uint64_t seed, double eps_min,
                         uint64_t* out_bits, double* out_error,
                         int* out_certificate_ok, int* out_truncated);

/* ------------------------------------------------------------------ */
/* Experiments (config JSON schema documented in the README) */

/* Runs the sweep described by config_json; writes the RD CSV to out_csv
 * (may be NULL) and a JSON summary to out_summary (may be NULL). */
lvc_status lvc_sweep(const char* config_json, char** out_csv,
                     char** out_summary);

/* Lower-bound curves for an eps grid (descending), CSV output. */
lvc_status lvc_theory_curves(const lvc_triplet* t, const double* eps_grid,
                             size_t n_eps, double c, double r0, double c_user,
                             double p, char** out_csv);

/* Log–log least squares; points must be positive, n >= 3. */
lvc_status lvc_slope_fit(const double* x, const double* y, size_t n,
                         double* out_slope, double* out_intercept,
                         double* out_r2);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LEVYCODEC_H */
