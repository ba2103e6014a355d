#ifndef SWJACOBI_H
#define SWJACOBI_H

/* C interface to the Jacobi-group / Weil-representation library.
 *
 * Matrices travel as JSON: {"re": [[...]], "im": [[...]]} ("im" optional).
 * Group elements are JSON objects with a "kind" field (heisenberg, translation,
 * dilation, inversion) or {"word": [...]} for products; see the tool help for
 * the parameter fields of each kind.
 *
 * All functions returning a status leave outputs untouched on failure; the
 * message for the most recent failure on the calling thread is available via
 * swj_last_error(). Strings returned through char** are heap-allocated and
 * must be released with swj_string_free().
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swj_status {
  SWJ_OK = 0,
  SWJ_ERR_NOT_SYMMETRIC = 1,
  SWJ_ERR_IM_NOT_POSITIVE = 2,
  SWJ_ERR_RE_NOT_POSITIVE = 3,
  SWJ_ERR_SHAPE = 4,
  SWJ_ERR_SINGULAR_J = 5,
  SWJ_ERR_DOMAIN = 6,
  SWJ_ERR_EVEN_M = 7,
  SWJ_ERR_NON_INTEGRAL = 8,
  SWJ_ERR_ODD_DIAGONAL_B = 9,
  SWJ_ERR_NON_UNIMODULAR = 10,
  SWJ_ERR_RADIUS_CAP = 11,
  SWJ_ERR_THETA_NEAR_ZERO = 12,
  SWJ_ERR_GRID_TOO_COARSE = 13,
  SWJ_ERR_SHEET = 14,
  SWJ_ERR_NOT_SYMPLECTIC = 15,
  SWJ_ERR_SINGULAR_OMEGA = 16,
  SWJ_ERR_INVALID_ARGUMENT = 17,
  SWJ_ERR_PARSE = 18,
  SWJ_ERR_INTERNAL = 19
} swj_status;

/* Opaque handle for a complex matrix. */
typedef struct swj_cmatrix swj_cmatrix;

swj_cmatrix* swj_cmatrix_parse(const char* json_text, swj_status* status);
void swj_cmatrix_free(swj_cmatrix* mat);
int swj_cmatrix_rows(const swj_cmatrix* mat);
int swj_cmatrix_cols(const swj_cmatrix* mat);
swj_status swj_cmatrix_get(const swj_cmatrix* mat, int row, int col, double* re, double* im);

/* Checks symmetry and positive-definite imaginary part. */
swj_status swj_validate_siegel(const swj_cmatrix* omega);

/* Holomorphic square root of det on symmetric matrices with Re > 0. */
swj_status swj_det_sqrt_holo(const swj_cmatrix* s, double* re, double* im);

/* Weight-1/2 factor of a JSON element (metaplectic part only) at Omega. */
swj_status swj_j_half(const char* element_json, const char* omega_json, double* re, double* im);

/* Half-integral Jacobi factor J*_M; m must be odd.
 * point_json: {"n": .., "m": .., "omega": matrix, "z": matrix|"zero"}.
 * m_json: "identity" is resolved against point m. */
swj_status swj_j_m_star(const char* element_json, const char* point_json, const char* m_json,
                        double* re, double* im);

/* Theta series with certified truncation.
 * params_json: {"n", "m", "omega", "z", "M", "truncation_tol", "max_radius"}.
 * Output: {"theta": [re, im], "radius": R, "certified_tol": t}. */
swj_status swj_theta_eval(const char* params_json, char** out_json);

/* Runs a verification suite and returns the report as JSON.
 * suite: jhalf | cocycle | covariance | theta-transform | poisson | weil-ops.
 * options_json: {"n","m","M","trials","tol","truncation_tol","seed","jobs",
 *                "counterexample","pretty"} — all optional. */
swj_status swj_verify(const char* suite, const char* options_json, char** out_report_json);

void swj_string_free(char* s);

/* Message for the most recent error on this thread ("" if none). */
const char* swj_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* SWJACOBI_H */
