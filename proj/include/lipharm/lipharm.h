/* C interface to the Hoelder-estimate verification library.
 *
 * Conventions: every function returns an lph_status; results go through
 * out-parameters. Handles are opaque and freed by the matching _free.
 * Strings returned through char** are heap copies owned by the caller,
 * released with lph_string_free. On any non-zero status,
 * lph_last_error() returns a thread-local human-readable detail.
 */
#ifndef LIPHARM_H
#define LIPHARM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t lph_status;

enum {
    LPH_OK = 0,
    LPH_EINVAL = -1,         /* invalid argument */
    LPH_EDOMAIN = -2,        /* point outside the domain / boundary touch */
    LPH_EEXTENT = -3,        /* outside a tabulated graph's extent */
    LPH_EACCURACY = -4,      /* requested accuracy not certifiable */
    LPH_EUNSUPPORTED = -5,   /* operation undefined for this kind */
    LPH_ENONINTEGRABLE = -6, /* quadrature node on the boundary */
    LPH_EPARSE = -7,         /* malformed configuration */
    LPH_EFAIL = -8           /* other failure */
};

const char* lph_version(void);
const char* lph_status_message(lph_status status);
const char* lph_last_error(void);
void lph_string_free(char* s);

/* ---- domains ---- */

typedef struct lph_domain lph_domain;

lph_status lph_domain_affine(const double* slope, int32_t n_minus_1,
                             double offset, lph_domain** out);
lph_status lph_domain_abs_cone(double slope, int32_t n_minus_1,
                               lph_domain** out);
lph_status lph_domain_piecewise_linear(const double* knots_x,
                                       const double* knots_y, int32_t n_knots,
                                       lph_domain** out);
lph_status lph_domain_tabulated(double x0, double dx, const double* values,
                                int32_t n_values, lph_domain** out);
void lph_domain_free(lph_domain* domain);

lph_status lph_domain_dim(const lph_domain* domain, int32_t* out);
lph_status lph_domain_lip(const lph_domain* domain, double* out);

lph_status lph_distance_lower_bound(const lph_domain* domain, const double* x,
                                    int32_t dim, double* out);
lph_status lph_distance_exact(const lph_domain* domain, const double* x,
                              int32_t dim, double* out_value,
                              double* out_error_bound);
lph_status lph_shifted_distance_bound(const lph_domain* domain, const double* x,
                                      int32_t dim, double lambda, double* out);

/* ---- fields ---- */

typedef struct lph_field lph_field;

lph_status lph_field_separable_exp(int32_t dim, lph_field** out);
lph_status lph_field_pole(const lph_domain* domain, const double* pole,
                          int32_t dim, lph_field** out);
lph_status lph_field_harmonic_measure_2d(lph_field** out);
void lph_field_free(lph_field* field);

lph_status lph_field_value(const lph_field* field, const double* x, int32_t dim,
                           double* out);
lph_status lph_field_sup_bound(const lph_field* field, double* out);
/* Analytic gradient when available, else central differences with the
 * distance-scaled step; out_grad must hold dim doubles. */
lph_status lph_field_gradient(const lph_field* field, const double* x,
                              int32_t dim, double* out_grad);

/* ---- constants ---- */

typedef struct {
    int32_t dim;
    double alpha;
    double lip;
    double c_vertical;
    double k_n;
    double gamma_star;
    double cone_cos;
    double c1;
    double c1_paper;
    double c2;
    double c3;
} lph_constant_bundle;

lph_status lph_derive_constants(int32_t dim, double alpha, double lip,
                                double c_vertical, lph_constant_bundle* out);

/* ---- walk on spheres ---- */

enum {
    LPH_DATA_CONSTANT = 0,
    LPH_DATA_INDICATOR_FIRST_POSITIVE = 1,
    LPH_DATA_ABS_POWER = 2,
    LPH_DATA_FIELD_TRACE = 3
};

typedef struct {
    int32_t kind;                 /* LPH_DATA_* */
    double value;                 /* constant c, or abs-power exponent */
    const lph_field* trace_field; /* LPH_DATA_FIELD_TRACE only */
} lph_boundary_data;

typedef struct {
    double mean;
    double std_error;
    uint64_t n_walks;
    double epsilon;
    double truncated_fraction;
    double maxed_fraction;
    int32_t truncation_warning;
} lph_wos_estimate;

lph_status lph_wos_evaluate(const lph_domain* domain,
                            const lph_boundary_data* data, const double* x,
                            int32_t dim, double epsilon, double far_cutoff,
                            double far_value, uint64_t max_steps,
                            uint64_t n_walks, uint64_t seed, int32_t workers,
                            lph_wos_estimate* out);

/* ---- scenario runners (JSON in, JSON/CSV out) ---- */

typedef struct {
    int32_t has_seed; /* nonzero: override every seed in the config */
    uint64_t seed;
    int32_t workers;  /* 0: library defaults */
} lph_run_options;

lph_status lph_run_constants(int32_t dim, double alpha, double lip,
                             double c_vertical, char** out_json);
/* out_all_pass: 1 when every theorem inequality holds. */
lph_status lph_run_verify(const char* config_json,
                          const lph_run_options* options, char** out_json,
                          int32_t* out_all_pass);
/* mode: "vertical" | "global" | "local" */
lph_status lph_run_seminorm(const char* config_json, const char* mode,
                            const lph_run_options* options, char** out_json);
lph_status lph_run_extension(const char* config_json,
                             const lph_run_options* options, char** out_json,
                             char** out_csv);
lph_status lph_run_wos(const char* config_json, const lph_run_options* options,
                       char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* LIPHARM_H */
