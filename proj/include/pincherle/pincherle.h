#ifndef PINCHERLE_H
#define PINCHERLE_H

/* C interface to the pincherle library. Every call returns a pch_status;
 * on failure the message and context of the last error on the calling thread
 * are available from pch_last_error_message / pch_last_error_context.
 * Strings returned through char** are owned by the caller and released with
 * pch_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PCH_API __declspec(dllexport)
#else
#define PCH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pch_status {
  PCH_OK = 0,
  PCH_POLE = 1,
  PCH_DOMAIN = 2,
  PCH_DEGENERATE_MATRIX = 3,
  PCH_ROOT_FINDING = 4,
  PCH_ORDER = 5,
  PCH_CONTOUR = 6,
  PCH_CONVERGENCE = 7,
  PCH_QUADRATURE = 8,
  PCH_HIGHER_ORDER_POLE = 9,
  PCH_NON_CONVERGENT_SERIES = 10,
  PCH_INVALID_DENOMINATOR = 11,
  PCH_DIVERGENT_SERIES = 12,
  PCH_PARAMETER = 13,
  PCH_REPEATED_ROOT = 14,
  PCH_DEGREE = 15,
  PCH_DIVERGENCE = 16,
  PCH_INTERNAL = 99
} pch_status;

typedef struct pch_complex {
  double re;
  double im;
} pch_complex;

typedef enum pch_method {
  PCH_METHOD_AUTO = 0,
  PCH_METHOD_QUADRATURE = 1,
  PCH_METHOD_RESIDUES = 2, /* preferred side */
  PCH_METHOD_RESIDUES_LEFT = 3,
  PCH_METHOD_RESIDUES_RIGHT = 4
} pch_method;

typedef enum pch_form { PCH_FORM_DIRECT = 0, PCH_FORM_REFLECTED = 1, PCH_FORM_MIXED = 2 } pch_form;

typedef struct pch_eval_result {
  pch_complex value;
  double err_estimate;
  size_t nodes_used;
  pch_method method; /* QUADRATURE, RESIDUES_LEFT or RESIDUES_RIGHT */
  double anchor;
  double truncation;
  int indented; /* contour has detours */
  size_t detours;
  double arg_z;
} pch_eval_result;

typedef struct pch_matrix pch_matrix;
typedef struct pch_fde_solution pch_fde_solution;
typedef struct pch_report pch_report;

PCH_API const char* pch_version(void);
PCH_API const char* pch_status_name(pch_status status);
/* Nonzero for failures of a numerical process rather than bad input. */
PCH_API int pch_status_is_numerical(pch_status status);
PCH_API const char* pch_last_error_message(void);
PCH_API const char* pch_last_error_context(void);
PCH_API void pch_string_free(char* s);

PCH_API pch_status pch_log_gamma(pch_complex z, pch_complex* out);

/* Coefficient tables, row-major entries a[h][k]. */
PCH_API pch_status pch_matrix_create(size_t rows, size_t cols, const pch_complex* entries, pch_matrix** out);
PCH_API pch_status pch_matrix_from_json(const char* json, pch_matrix** out);
PCH_API void pch_matrix_free(pch_matrix* m);
PCH_API size_t pch_matrix_rows(const pch_matrix* m);
PCH_API size_t pch_matrix_cols(const pch_matrix* m);
PCH_API pch_status pch_matrix_entry(const pch_matrix* m, size_t h, size_t k, pch_complex* out);
PCH_API pch_status pch_matrix_to_json(const pch_matrix* m, char** out);
/* as_ode != 0: ODE reading, else FDE reading; JSON with an "equation" field. */
PCH_API pch_status pch_dual_json(const pch_matrix* m, int as_ode, char** out);

PCH_API pch_status pch_pfq(const pch_complex* a, size_t p, const pch_complex* b, size_t q, pch_complex z, double tol,
                           pch_complex* out);
PCH_API pch_status pch_pfq_via_g(const pch_complex* a, size_t p, const pch_complex* b, size_t q, pch_complex z,
                                 double tol, pch_method method, pch_eval_result* out);
PCH_API pch_status pch_meijer_g(size_t m, size_t n, size_t p, size_t q, const pch_complex* a, const pch_complex* b,
                                pch_complex z, double tol, pch_method method, pch_eval_result* out);
/* NULL alpha or beta means unit multipliers. */
PCH_API pch_status pch_fox_h(size_t m, size_t n, size_t p, size_t q, const pch_complex* a, const double* alpha,
                             const pch_complex* b, const double* beta, pch_complex z, double tol, pch_method method,
                             pch_eval_result* out);

/* P(x) f(x) + Q(x) f(x+1) = 0 with p_coeffs[h] = a[h][0] and q_coeffs[h] =
 * a[h][1] (coefficients of (x+1)^h). m and n are used by PCH_FORM_MIXED. */
PCH_API pch_status pch_solve_fde(const pch_complex* p_coeffs, size_t p_len, const pch_complex* q_coeffs,
                                 size_t q_len, pch_form form, size_t m, size_t n, pch_fde_solution** out);
PCH_API pch_status pch_fde_solution_json(const pch_fde_solution* s, char** out);
PCH_API pch_status pch_fde_solution_ratio_residual(const pch_fde_solution* s, pch_complex x, double* out);
PCH_API void pch_fde_solution_free(pch_fde_solution* s);

/* Laplace pipeline on a two-row matrix; JSON report. beta > 0 adds the Beta
 * function oracle Gamma(x) Gamma(beta) / Gamma(x + beta) for every x. */
PCH_API pch_status pch_pochhammer_check(const pch_matrix* m, const pch_complex* xs, size_t count, double beta,
                                        double tol, char** out);

/* CSV "im_s,re,im,abs" of K(s) z^s along the default contour of a G kernel
 * (NULL multipliers) or an H kernel. */
PCH_API pch_status pch_dump_integrand(size_t m, size_t n, size_t p, size_t q, const pch_complex* a,
                                      const double* alpha, const pch_complex* b, const double* beta, pch_complex z,
                                      size_t points, char** out);

PCH_API pch_status pch_verify(const char* suite, uint64_t seed, pch_report** out);
PCH_API int pch_report_passed(const pch_report* r);
PCH_API pch_status pch_report_json(const pch_report* r, char** out);
PCH_API void pch_report_free(pch_report* r);

#ifdef __cplusplus
}
#endif

#endif
