#ifndef CURVEBOX_CURVEBOX_H
#define CURVEBOX_CURVEBOX_H

/* C interface to the curvebox library. Every call returns a cbx_status; on
 * failure cbx_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * cbx_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(CURVEBOX_BUILDING_LIBRARY)
#define CBX_API __attribute__((visibility("default")))
#else
#define CBX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cbx_status {
  CBX_OK = 0,
  CBX_INVALID_ARGUMENT = 1,
  CBX_INVALID_INSTANCE = 2,
  CBX_BUDGET_EXCEEDED = 3,
  CBX_DIMENSION_TOO_LARGE = 4,
  CBX_OVERFLOW = 5,
  CBX_INTERNAL = 6
} cbx_status;

typedef enum cbx_body_kind { CBX_BODY_SUPBOX = 0, CBX_BODY_L1 = 1 } cbx_body_kind;

typedef struct cbx_instance cbx_instance;
typedef struct cbx_lattice cbx_lattice;
typedef struct cbx_body cbx_body;

CBX_API const char* cbx_version(void);
CBX_API const char* cbx_last_error(void);
CBX_API void cbx_string_free(char* s);

/* Instances: JSON {"q", "coeffs", "box": {"K", "L", "H"}, "curve", "c0"}. */
CBX_API cbx_status cbx_instance_parse(const char* json, cbx_instance** out);
CBX_API void cbx_instance_destroy(cbx_instance* inst);
CBX_API cbx_status cbx_instance_count(const cbx_instance* inst, uint64_t* n, uint64_t* x_size,
                                      double* bound);
CBX_API cbx_status cbx_instance_count_report(const cbx_instance* inst, int json, char** out);
/* The lattice and box behind the Spread/Lift classification of the instance
 * (after shifting its box to the origin). */
CBX_API cbx_status cbx_instance_lattice(const cbx_instance* inst, cbx_lattice** lat,
                                        cbx_body** body);
CBX_API cbx_status cbx_instance_lift_report(const cbx_instance* inst, uint64_t budget, int json,
                                            char** out);

/* y = f(x) mod q over (K, K+H] x (L, L+H]; coeffs[0..degree]. */
CBX_API cbx_status cbx_count_points(int64_t q, const int64_t* coeffs, size_t degree, int64_t K,
                                    int64_t L, int64_t H, uint64_t* n, uint64_t* x_size);
/* y^2 - c0 y = f(x) mod q with f cubic (coeffs[0..3]). */
CBX_API cbx_status cbx_count_points_hyperelliptic(int64_t q, const int64_t* coeffs, int64_t c0,
                                                  int64_t K, int64_t L, int64_t H, uint64_t* n);

/* Lattices spanned by the rows of an n x n row-major matrix. */
CBX_API cbx_status cbx_lattice_create(size_t n, const int64_t* rows, cbx_lattice** out);
CBX_API cbx_status cbx_lattice_congruence(int64_t q, const int64_t* coeffs, size_t degree,
                                          cbx_lattice** out);
CBX_API void cbx_lattice_destroy(cbx_lattice* lat);
CBX_API size_t cbx_lattice_dimension(const cbx_lattice* lat);
/* |det| as a decimal string. */
CBX_API cbx_status cbx_lattice_covolume(const cbx_lattice* lat, char** out);

/* Weights are num[i] / den[i], all positive. */
CBX_API cbx_status cbx_body_create(cbx_body_kind kind, size_t n, const int64_t* num,
                                   const int64_t* den, cbx_body** out);
CBX_API void cbx_body_destroy(cbx_body* body);

/* Successive minima report: a line of exact lambdas followed by witnesses,
 * or JSON. With dual != 0 the dual lattice is measured against the body. */
CBX_API cbx_status cbx_minima_report(const cbx_lattice* lat, const cbx_body* body, int dual,
                                     uint64_t budget, int json, char** out);
/* Exact lambdas as "p/q" strings joined by spaces. */
CBX_API cbx_status cbx_successive_minima(const cbx_lattice* lat, const cbx_body* body,
                                         uint64_t budget, char** out);
CBX_API cbx_status cbx_count_lattice_points(const cbx_lattice* lat, const cbx_body* body,
                                            int64_t scale_num, int64_t scale_den,
                                            uint64_t budget, uint64_t* count);

CBX_API cbx_status cbx_vinogradov_count(const int64_t* set, size_t size, int k, int s,
                                        uint64_t budget, uint64_t* count);

/* Sweep CSV. seed_override != 0 replaces the config seed with seed. On
 * CBX_BUDGET_EXCEEDED *csv still holds the partial output. */
CBX_API cbx_status cbx_sweep_csv(const char* config_json, int seed_override, uint64_t seed,
                                 uint64_t budget, char** csv);

/* Verification suite: gon, n2din, lift, vino or all. *failures receives the
 * number of failed checks. */
CBX_API cbx_status cbx_verify(const char* suite, uint64_t seed, uint64_t budget, int json,
                              char** report, uint64_t* failures);

#ifdef __cplusplus
}
#endif

#endif
