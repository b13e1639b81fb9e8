#ifndef DPBKIT_H
#define DPBKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DPBK_API __declspec(dllexport)
#else
#define DPBK_API __attribute__((visibility("default")))
#endif

typedef enum dpbk_status {
    DPBK_OK = 0,
    DPBK_ERR_INVALID_ARGUMENT = 1,
    DPBK_ERR_DIMENSION_MISMATCH = 2,
    DPBK_ERR_SINGULAR_MATRIX = 3,
    DPBK_ERR_NON_CONVERGENCE = 4,
    DPBK_ERR_CLUSTER_TOO_COARSE = 5,
    DPBK_ERR_DIVISION_BY_ZERO_POLY = 6,
    DPBK_ERR_ILL_CONDITIONED_GCD = 7,
    DPBK_ERR_NOT_COPRIME = 8,
    DPBK_ERR_NOT_ANNIHILATED = 9,
    DPBK_ERR_DUPLICATE_LAMBDAS = 10,
    DPBK_ERR_QUADRATURE_NOT_CONVERGED = 11,
    DPBK_ERR_RESOLVENT_SINGULAR = 12,
    DPBK_ERR_NOT_DPB = 13,
    DPBK_ERR_LAMBDA_NOT_IN_SPECTRUM = 14,
    DPBK_ERR_NOT_PERIODIC = 15,
    DPBK_ERR_INDEX_OUT_OF_RANGE = 16,
    DPBK_ERR_NOT_INVERTIBLE = 17,
    DPBK_ERR_PARSE = 18,
    DPBK_ERR_INTERNAL = 99
} dpbk_status;

typedef struct dpbk_matrix dpbk_matrix;
typedef struct dpbk_norm dpbk_norm;
typedef struct dpbk_verdict dpbk_verdict;

/* A negative cluster_tol selects the size-relative default. */
typedef struct dpbk_tolerances {
    double circ_tol;
    double alg_tol;
    double cluster_tol;
    int riesz_nodes;
} dpbk_tolerances;

DPBK_API dpbk_tolerances dpbk_tolerances_default(void);

DPBK_API const char* dpbk_version(void);
DPBK_API const char* dpbk_status_name(dpbk_status s);
/* Message of the last failure on the calling thread; empty after success. */
DPBK_API const char* dpbk_last_error(void);
/* Releases strings returned through char** out-parameters. */
DPBK_API void dpbk_string_free(char* s);

/* entries holds 2*n*n doubles, row-major, real and imaginary parts interleaved. */
DPBK_API dpbk_status dpbk_matrix_create(size_t n, const double* entries, dpbk_matrix** out);
DPBK_API dpbk_status dpbk_matrix_from_json(const char* json, dpbk_matrix** out);
DPBK_API dpbk_status dpbk_matrix_to_json(const dpbk_matrix* m, char** out);
DPBK_API size_t dpbk_matrix_dim(const dpbk_matrix* m);
DPBK_API dpbk_status dpbk_matrix_get(const dpbk_matrix* m, size_t i, size_t j, double* re, double* im);
DPBK_API void dpbk_matrix_destroy(dpbk_matrix* m);

/* name is "one", "inf" or "two". */
DPBK_API dpbk_status dpbk_norm_create(const char* name, dpbk_norm** out);
DPBK_API dpbk_status dpbk_norm_from_json(const char* json, dpbk_norm** out);
DPBK_API void dpbk_norm_destroy(dpbk_norm* k);
DPBK_API dpbk_status dpbk_operator_norm(const dpbk_matrix* m, const dpbk_norm* k, double* out);

DPBK_API dpbk_status dpbk_spectrum_json(const dpbk_matrix* m, const dpbk_tolerances* tols, char** out);

DPBK_API dpbk_status dpbk_dpb_decide(const dpbk_matrix* m, const dpbk_norm* k, const dpbk_tolerances* tols,
                                     dpbk_verdict** out);
DPBK_API int dpbk_verdict_is_dpb(const dpbk_verdict* v);
/* DPBK_ERR_NOT_DPB when the verdict carries no bound. */
DPBK_API dpbk_status dpbk_verdict_power_bound(const dpbk_verdict* v, double* out);
DPBK_API dpbk_status dpbk_verdict_to_json(const dpbk_verdict* v, char** out);
DPBK_API void dpbk_verdict_destroy(dpbk_verdict* v);

/* Idempotent system of a DPB element with its verification and the Riesz
   projections at every spectral point. DPBK_ERR_NOT_DPB otherwise; the
   verdict JSON is still written to out in that case. */
DPBK_API dpbk_status dpbk_decompose_json(const dpbk_matrix* m, const dpbk_norm* k, const dpbk_tolerances* tols,
                                         char** out);

/* passed receives 1 when every assertion of the demo held. */
DPBK_API dpbk_status dpbk_demo_json(const char* name, uint64_t seed, char** out, int* passed);

/* 16 hex digits identifying the bytes. */
DPBK_API dpbk_status dpbk_digest(const char* bytes, size_t len, char** out);

#ifdef __cplusplus
}
#endif

#endif
