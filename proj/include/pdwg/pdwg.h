#ifndef PDWG_PDWG_H
#define PDWG_PDWG_H

/* C interface to the primal-dual weak Galerkin convergence studies.
 *
 * All functions returning pdwg_status leave a message retrievable with
 * pdwg_last_error() (per thread) when they fail. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * pdwg_string_free(). */

#include <stddef.h>

#if defined(PDWG_BUILDING_LIBRARY)
#define PDWG_API __attribute__((visibility("default")))
#else
#define PDWG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdwg_status {
    PDWG_OK = 0,
    PDWG_ERROR = 1,          /* internal or unexpected failure */
    PDWG_CONFIG_ERROR = 2,   /* invalid argument or configuration */
    PDWG_SOLVER_ERROR = 3    /* Picard non-convergence or singular system */
} pdwg_status;

typedef enum pdwg_format {
    PDWG_FORMAT_CSV = 0,
    PDWG_FORMAT_MARKDOWN = 1
} pdwg_format;

typedef struct pdwg_study pdwg_study;

/* One row of a finished study. Rates are NaN on the first level. */
typedef struct pdwg_row {
    int n;
    double h;
    double err_u;
    double err_u_rate;
    double lam_0p;
    double lam_0p_rate;
    double lam_1p;
    double lam_1p_rate;
    double lam_2p;
    double lam_2p_rate;
    double s_value;
    double s_value_rate;
    int iterations;
    long num_lambda;
    long num_u;
    double linear_residual;
    double constraint_residual;
    double seconds;
} pdwg_row;

typedef void (*pdwg_level_callback)(void* user, const pdwg_row* row);

PDWG_API const char* pdwg_version(void);
PDWG_API const char* pdwg_last_error(void);
PDWG_API void pdwg_string_free(char* s);

/* Worker threads for element loops; n <= 0 restores the default. */
PDWG_API void pdwg_set_num_threads(int n);
PDWG_API int pdwg_num_threads(void);

PDWG_API pdwg_status pdwg_study_create(pdwg_study** out);
PDWG_API void pdwg_study_destroy(pdwg_study* study);

PDWG_API pdwg_status pdwg_study_set_problem(pdwg_study* study, const char* id);
PDWG_API pdwg_status pdwg_study_set_degree(pdwg_study* study, int k, int s_offset);
PDWG_API pdwg_status pdwg_study_set_p(pdwg_study* study, double p);
PDWG_API pdwg_status pdwg_study_set_levels(pdwg_study* study, int n0, int levels);
PDWG_API pdwg_status pdwg_study_set_solver(pdwg_study* study, double eps, double tol, int max_iters);
/* Non-positive values keep the defaults (2k + 4 and k + 3). */
PDWG_API pdwg_status pdwg_study_set_quadrature(pdwg_study* study, int triangle_degree,
                                               int edge_points);
PDWG_API pdwg_status pdwg_study_set_lattice_order(pdwg_study* study, int order);
PDWG_API pdwg_status pdwg_study_set_deterministic(pdwg_study* study, int deterministic);
/* Called after every level while pdwg_study_run() is running. */
PDWG_API pdwg_status pdwg_study_set_callback(pdwg_study* study, pdwg_level_callback callback,
                                             void* user);

PDWG_API pdwg_status pdwg_study_run(pdwg_study* study);
PDWG_API int pdwg_study_num_levels(const pdwg_study* study);
PDWG_API pdwg_status pdwg_study_row(const pdwg_study* study, int level, pdwg_row* out);
PDWG_API pdwg_status pdwg_study_format(const pdwg_study* study, pdwg_format format, char** out);

/* Plain-text dump of the mesh of `problem` at resolution n (vertices,
 * triangles with region tags, edges with flags). */
PDWG_API pdwg_status pdwg_mesh_dump(const char* problem, int n, char** out);

#ifdef __cplusplus
}
#endif

#endif
