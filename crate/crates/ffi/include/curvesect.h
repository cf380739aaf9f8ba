#ifndef CURVESECT_H
#define CURVESECT_H

/* This file is generated by cbindgen from curvesect-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every FFI entry point.
typedef enum CsStatus {
  // Success; out-parameters are valid.
  CS_STATUS_OK = 0,
  // A required pointer argument was NULL.
  CS_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  CS_STATUS_INVALID_UTF8 = 2,
  // JSON parsing or schema validation failed.
  CS_STATUS_PARSE_ERROR = 3,
  // Arguments violate a documented precondition (degrees, sizes).
  CS_STATUS_INVALID_ARGUMENT = 4,
  // The operation ran but reported no result (inconsistent system).
  CS_STATUS_NO_RESULT = 5,
  // An internal invariant failed; treat as a bug in this library.
  CS_STATUS_INTERNAL_ERROR = 6,
} CsStatus;

// Opaque handle: the outcome of the decision procedure.
typedef struct CsDecision CsDecision;

// Opaque handle: an ordered set of distinct rational plane points.
typedef struct CsPointSet CsPointSet;

// Opaque handle: a bivariate polynomial with exact rational coefficients.
typedef struct CsPoly CsPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Human-readable description of a status code. Static storage; do not free.
const char *cs_status_message(enum CsStatus status);

// Library version as a static NUL-terminated string. Do not free.
const char *cs_version(void);

// Release a string returned by this library.
//
// # Safety
// `s` must have been returned by a `cs_*` function and not freed before.
void cs_string_free(char *s);

// Parse a point set from its JSON form
// `{"points": [["num/den","num/den"], ...]}`.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be a valid
// pointer to a handle slot.
enum CsStatus cs_pointset_parse_json(const char *json, struct CsPointSet **out);

// Serialize a point set back to its JSON form.
//
// # Safety
// `set` must be a live handle; `out` must be valid.
enum CsStatus cs_pointset_to_json(const struct CsPointSet *set, char **out);

// Number of points in the set.
//
// # Safety
// `set` must be a live handle; `out` must be valid.
enum CsStatus cs_pointset_len(const struct CsPointSet *set, size_t *out);

// # Safety
// `set` must be a handle from this library, freed at most once.
void cs_pointset_free(struct CsPointSet *set);

// Parse a polynomial from its JSON form
// `{"degree": n, "terms": [{"i":..,"j":..,"c":"num/den"}, ...]}`.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be valid.
enum CsStatus cs_poly_parse_json(const char *json, struct CsPoly **out);

// Serialize a polynomial to its JSON form.
//
// # Safety
// `poly` must be a live handle; `out` must be valid.
enum CsStatus cs_poly_to_json(const struct CsPoly *poly, char **out);

// # Safety
// `poly` must be a handle from this library, freed at most once.
void cs_poly_free(struct CsPoly *poly);

// Decide whether the set is the intersection set of curves of degrees
// `m <= n`. The decision (verdict, witnesses or certificate) lands in a
// new handle.
//
// # Safety
// `set` must be a live handle; `out` must be valid.
enum CsStatus cs_decide(const struct CsPointSet *set,
                        int64_t m,
                        int64_t n,
                        struct CsDecision **out);

// Verdict of a decision: 1 accepted, 0 rejected.
//
// # Safety
// `decision` must be a live handle; `out` must be valid.
enum CsStatus cs_decision_verdict(const struct CsDecision *decision, int32_t *out);

// The full decision (verdict, kappa, witnesses, certificate) as JSON.
//
// # Safety
// `decision` must be a live handle; `out` must be valid.
enum CsStatus cs_decision_to_json(const struct CsDecision *decision, char **out);

// The witness curves of an accepted decision as new polynomial handles.
// Returns `NoResult` on rejected decisions.
//
// # Safety
// `decision` must be a live handle; `out_sigma_m` and `out_sigma_n` must
// be valid.
enum CsStatus cs_decision_witnesses(const struct CsDecision *decision,
                                    struct CsPoly **out_sigma_m,
                                    struct CsPoly **out_sigma_n);

// # Safety
// `decision` must be a handle from this library, freed at most once.
void cs_decision_free(struct CsDecision *decision);

// Check a claimed witness pair against the set: 1 when it verifies.
//
// # Safety
// All three handles must be live; `out` must be valid.
enum CsStatus cs_verify_intersection_set(const struct CsPointSet *set,
                                         const struct CsPoly *sigma_m,
                                         const struct CsPoly *sigma_n,
                                         int32_t *out);

// Independence/poisedness report for the set at one degree, as JSON.
//
// # Safety
// `set` must be a live handle; `out` must be valid.
enum CsStatus cs_analyze_json(const struct CsPointSet *set, int64_t degree, char **out);

// The three Cayley-Bacharach facts for the set at `(m, n)`, as JSON.
//
// # Safety
// `set` must be a live handle; `out` must be valid.
enum CsStatus cs_cb_verify_json(const struct CsPointSet *set, int64_t m, int64_t n, char **out);

// Decompose `p` as `A*sigma_m + B*sigma_n` over the verified witness pair
// for `set`. `NoResult` signals an inconsistent system; precondition
// violations map to `InvalidArgument`.
//
// # Safety
// All handles must be live; `out_a` and `out_b` must be valid.
enum CsStatus cs_noether_decompose(const struct CsPoly *p,
                                   const struct CsPoly *sigma_m,
                                   const struct CsPoly *sigma_n,
                                   const struct CsPointSet *set,
                                   struct CsPoly **out_a,
                                   struct CsPoly **out_b);

// Generate a scenario (same kinds and seeding as the CLI) as JSON.
// `kind` is one of the documented kind strings, e.g. "line_product_grid".
//
// # Safety
// `kind` must be a valid NUL-terminated string; `out` must be valid.
enum CsStatus cs_generate_scenario_json(const char *kind,
                                        int64_t m,
                                        int64_t n,
                                        uint64_t seed,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURVESECT_H */
