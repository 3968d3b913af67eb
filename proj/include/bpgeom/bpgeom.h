#ifndef BPGEOM_H
#define BPGEOM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BPG_API __declspec(dllexport)
#else
#define BPG_API __attribute__((visibility("default")))
#endif

typedef enum bpg_status {
  BPG_OK = 0,
  BPG_E_INVALID_ARGUMENT,
  BPG_E_PARSE_ERROR,
  BPG_E_IO_ERROR,
  BPG_E_DIMENSION_MISMATCH,
  BPG_E_UNSUPPORTED_DIMENSION,
  BPG_E_MODEL_DOMAIN_ERROR,
  BPG_E_SYMMETRY_ERROR,
  BPG_E_POSITIVITY_ERROR,
  BPG_E_PARAMETER_OUT_OF_RANGE,
  BPG_E_TOLERANCE_NOT_REACHED,
  BPG_E_ANTIPODAL_PAIR,
  BPG_E_POINT_OUTSIDE_MODEL,
  BPG_E_NOT_STAR_SHAPED_FROM_OFFSET,
  BPG_E_INSUFFICIENT_STENCIL,
  BPG_E_DEGREE_OVERFLOW,
  BPG_E_UNSUPPORTED_ORDER,
  BPG_E_UNSUPPORTED_BODY,
  BPG_E_EPSILON_TOO_LARGE,
  BPG_E_NEGATIVITY_NOT_FOUND,
  BPG_E_UNSUPPORTED_FORMAT,
  BPG_E_INTERNAL = 99
} bpg_status;

typedef struct bpg_body bpg_body;

/* Message of the last failing call on this thread; never NULL. */
BPG_API const char* bpg_last_error(void);
/* Stable name of a status ("ToleranceNotReached", ...). */
BPG_API const char* bpg_status_name(int status);
/* 1 if the status is a numerical failure rather than bad input. */
BPG_API int bpg_status_is_numerical(int status);

/* Strings returned through char** are heap allocated; release with bpg_string_free. */
BPG_API void bpg_string_free(char* s);

/* Re-serializes any JSON document with sorted keys and %.12e floats. */
BPG_API bpg_status bpg_canonical_json(const char* json, char** out);

BPG_API bpg_status bpg_body_from_json(const char* json, bpg_body** out);
BPG_API bpg_status bpg_body_load(const char* path, bpg_body** out);
BPG_API void bpg_body_free(bpg_body* body);
BPG_API bpg_status bpg_body_to_json(const bpg_body* body, char** out);
BPG_API bpg_status bpg_body_dim(const bpg_body* body, int* n);
BPG_API bpg_status bpg_body_radial(const bpg_body* body, const double* theta, int n, double* out);
/* Checks positivity, symmetry and the model bound; a violation is returned as its status. */
BPG_API bpg_status bpg_body_validate(const bpg_body* body, int delta);

/* resolution <= 0 selects the library default everywhere below. */
BPG_API bpg_status bpg_volume(const bpg_body* body, int delta, int resolution, double* out);
BPG_API bpg_status bpg_section(const bpg_body* body, int delta, const double* xi, int n, int resolution,
                               double* out);
BPG_API bpg_status bpg_section_via_fourier(const bpg_body* body, int delta, const double* xi, int n,
                                           double* out);
/* Parallel section function at count offsets; z_max receives the support value. */
BPG_API bpg_status bpg_profile(const bpg_body* body, const double* xi, int n, const double* zs, int count,
                               int resolution, double* values, double* z_max);
BPG_API bpg_status bpg_profile_derivative(const bpg_body* body, const double* xi, int n, int k,
                                          int resolution, double* out);
/* Integral of rho^power over the great subsphere orthogonal to xi. */
BPG_API bpg_status bpg_radon(const bpg_body* body, const double* xi, int n, double power, int resolution,
                             double* out);
/* Fourier transform of ||x||^{-n+k} at xi. */
BPG_API bpg_status bpg_fourier(const bpg_body* body, int k, const double* xi, int n, int resolution,
                               double* out);
BPG_API bpg_status bpg_convexity(const bpg_body* body, int pairs, int points, uint64_t seed, char** json);
BPG_API bpg_status bpg_definiteness(const bpg_body* body, int delta, int grid, int resolution, char** json);
/* format: "json", "csv" or "svg". */
BPG_API bpg_status bpg_compare(const bpg_body* K, const bpg_body* L, int delta, int grid, int resolution,
                               const char* format, char** out);
/* space: "h" or "s"; params_json may be NULL or an object of numeric overrides. */
BPG_API bpg_status bpg_counterexample(const char* space, int n, const char* params_json, const char* format,
                                      char** out);
BPG_API bpg_status bpg_parseval(const bpg_body* K, const bpg_body* L, double p, double* lhs, double* rhs);

#ifdef __cplusplus
}
#endif

#endif
