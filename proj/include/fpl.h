#ifndef FPL_H
#define FPL_H

/* C interface to the metric fixed-point laboratory.
 *
 * Conventions:
 *   - every function returns fpl_status; FPL_OK means success
 *   - out-parameters are written only on FPL_OK
 *   - strings returned through char** are heap copies; release them with
 *     fpl_string_free
 *   - handles are opaque; release them with their _free function (NULL-safe)
 *   - on failure, fpl_last_error() returns a thread-local message
 *
 * Numeric parameters arrive as exact rational strings ("3/4", "0.7072", "2")
 * unless a double is stated explicitly. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FPL_API __declspec(dllexport)
#else
#define FPL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fpl_status {
  FPL_OK = 0,
  FPL_ERR_PARAM = 1,         /* parameter outside its documented range */
  FPL_ERR_DOMAIN = 2,        /* unknown point or operation unsupported here */
  FPL_ERR_BOUNDARY = 3,      /* image lies past a truncation boundary */
  FPL_ERR_PARSE = 4,         /* malformed rational, JSON, or expression */
  FPL_ERR_TEST_FUNCTION = 5, /* test function left its declared codomain */
  FPL_ERR_DEGENERATE = 6,    /* degenerate input (too few points) */
  FPL_ERR_INTERNAL = 7
} fpl_status;

typedef struct fpl_space fpl_space;
typedef struct fpl_map fpl_map;
typedef struct fpl_trace fpl_trace;

FPL_API const char* fpl_version(void);
FPL_API const char* fpl_last_error(void);
FPL_API void fpl_string_free(char* text);

FPL_API void fpl_space_free(fpl_space* space);
FPL_API void fpl_map_free(fpl_map* map);
FPL_API void fpl_trace_free(fpl_trace* trace);

/* ---- spaces and maps ---------------------------------------------------- */

/* {"label", "points": [...], "matrix": [[...]]} or ..."coordinates": [...] */
FPL_API fpl_status fpl_space_from_json(const char* text, fpl_space** out);
FPL_API fpl_status fpl_space_to_json(const fpl_space* space, char** out);

/* {"label", "kind", "size"} -- size only for finite carriers */
FPL_API fpl_status fpl_space_describe(const fpl_space* space, char** out);

/* Same carrier compared through doubles with tolerance eps. */
FPL_API fpl_status fpl_space_to_float(const fpl_space* space, double eps,
                                      fpl_space** out);

/* Seeded random finite metric space (shortest-path repaired, 2 <= n). */
FPL_API fpl_status fpl_random_space(size_t n, uint64_t seed, fpl_space** out);

/* Metric axiom sweep over the full finite carrier. passed: 1 or 0. */
FPL_API fpl_status fpl_verify_axioms(const fpl_space* space,
                                     size_t max_violations, char** report_json,
                                     int* passed);

/* {"label", "images": {"a": "b", ...}} over the given space */
FPL_API fpl_status fpl_map_from_json(const fpl_space* space, const char* text,
                                     fpl_map** out);
FPL_API fpl_status fpl_map_to_json(const fpl_space* space, const fpl_map* map,
                                   char** out);

/* Gallery constructions by name: "suzuki(eta=3/5,N=40)" (optional r=3/4),
 * "dyadic_probe(B=64)", "divergent", "halving". */
FPL_API fpl_status fpl_gallery_make(const char* expr, fpl_space** space_out,
                                    fpl_map** map_out);

/* ---- conditions --------------------------------------------------------- */

/* Suzuki's breakpoint function; exact rational in, exact rational out. */
FPL_API fpl_status fpl_theta(const char* r, char** value_out);

/* Certifies a condition ("banach(3/4)", "contractive", "eta_nonstrict(3/5)",
 * ...) over the map's certification domain. scope: "exhaustive" or "sampled"
 * (sampled draws `count` ordered pairs from the given seed).
 * satisfied: 1 or 0; certificate JSON carries the first witness if any. */
FPL_API fpl_status fpl_certify(const fpl_space* space, const fpl_map* map,
                               const char* condition, const char* scope,
                               uint64_t seed, uint64_t count,
                               char** certificate_json, int* satisfied);

/* Smallest admissible contraction constant, as a rational or float string. */
FPL_API fpl_status fpl_minimal_lipschitz(const fpl_space* space,
                                         const fpl_map* map, char** value_out);

/* ---- orbits ------------------------------------------------------------- */

/* Iterates from the point with identifier `from` (a declared id, or a
 * coordinate literal on lazy carriers) for at most max_steps applications. */
FPL_API fpl_status fpl_orbit(const fpl_space* space, const fpl_map* map,
                             const char* from, size_t max_steps,
                             fpl_trace** out);

FPL_API fpl_status fpl_trace_to_json(const fpl_trace* trace, char** out);
FPL_API fpl_status fpl_trace_to_csv(const fpl_trace* trace, char** out);

/* termination: 0 = max_steps, 1 = fixed_point, 2 = carrier_boundary */
FPL_API fpl_status fpl_trace_termination(const fpl_trace* trace,
                                         int* termination, size_t* index);

/* Scans index pairs p < q <= horizon for evidence against the iterate-Cauchy
 * criterion (premise pairs whose post-map ratio stays near 1 while the gap
 * stays away from 0). matches receives the total count; the JSON lists the
 * first max_witnesses witnesses. */
FPL_API fpl_status fpl_sequential_diagnostic(const fpl_trace* trace,
                                             const char* eps_Delta,
                                             const char* eps_delta,
                                             size_t horizon,
                                             size_t max_witnesses,
                                             char** report_json,
                                             uint64_t* matches);

/* Finite-horizon orbit test function at level s. */
FPL_API fpl_status fpl_extract_psi(const fpl_trace* trace, const char* s,
                                   size_t horizon, char** value_out);

/* ---- enumeration -------------------------------------------------------- */

/* Exhaustive implication-chain audit over all self-maps (finite, n <= 5). */
FPL_API fpl_status fpl_implication_audit(const fpl_space* space,
                                         char** report_json,
                                         uint64_t* chain_violations);

/* Census of one condition over all self-maps (finite, n <= 5).
 * guarantee_failures is nonzero only for suzuki_half_strict breaches. */
FPL_API fpl_status fpl_census(const fpl_space* space, const char* condition,
                              char** report_json, uint64_t* guarantee_failures);

/* Seeded spot-check battery over the dyadic probe construction. violations
 * receives rho-contraction breaches plus orbits leaving the u-ladder. */
FPL_API fpl_status fpl_probe_battery(unsigned bound, uint64_t seed,
                                     uint64_t samples, uint64_t orbits,
                                     char** report_json, uint64_t* violations);

#ifdef __cplusplus
}
#endif

#endif /* FPL_H */
