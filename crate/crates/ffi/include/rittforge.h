#ifndef RITTFORGE_H
#define RITTFORGE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RfStatus {
  RF_STATUS_OK = 0,
  RF_STATUS_NULL_POINTER = 1,
  RF_STATUS_INVALID_UTF8 = 2,
  RF_STATUS_PARSE = 3,
  RF_STATUS_DOMAIN = 4,
  RF_STATUS_BUDGET = 5,
  RF_STATUS_IO = 6,
  RF_STATUS_PANIC = 7,
} RfStatus;

/*
 Classified render grid.
 */
typedef struct RfGrid RfGrid;

/*
 Finite holomorphic correspondence.
 */
typedef struct RfHolCorr RfHolCorr;

/*
 Exact polynomial over ℚ(i).
 */
typedef struct RfPoly RfPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or NULL after a
 success. Valid until the next call into this library on the same thread.
 */
const char *rf_last_error(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library and not yet freed.
 */
void rf_string_free(char *s);

/*
 Parses a polynomial from JSON, e.g. `{"coeffs":["1","0","1"]}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum RfStatus rf_poly_from_json(const char *json, struct RfPoly **out);

/*
 Parses a polynomial in `z` from an expression such as `z^2 - 1 + i`.

 # Safety
 `expr` must be a NUL-terminated string; `out` must be writable.
 */
enum RfStatus rf_poly_parse(const char *expr, struct RfPoly **out);

/*
 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum RfStatus rf_poly_to_json(const struct RfPoly *p, char **out);

/*
 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum RfStatus rf_poly_degree(const struct RfPoly *p, size_t *out);

/*
 `out = f∘g`.

 # Safety
 `f`, `g` must be live handles; `out` must be writable.
 */
enum RfStatus rf_poly_compose(const struct RfPoly *f, const struct RfPoly *g, struct RfPoly **out);

/*
 # Safety
 `p` must be NULL or a handle from this library not yet freed.
 */
void rf_poly_free(struct RfPoly *p);

/*
 Complete decomposition into primes, as JSON.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum RfStatus rf_decompose(const struct RfPoly *p, char **out);

/*
 Affine bi-equivalence `q = A∘p∘B`. Writes the witness JSON, or `null`
 when none exists; `found` receives 1 or 0.

 # Safety
 `p`, `q` must be live handles; `found` and `out` must be writable.
 */
enum RfStatus rf_affine_biequiv(const struct RfPoly *p,
                                const struct RfPoly *q,
                                int32_t *found,
                                char **out);

/*
 Parses a correspondence from JSON, e.g. `{"coeffs_in_W":[...]}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum RfStatus rf_hcorr_from_json(const char *json, struct RfHolCorr **out);

/*
 # Safety
 `k` must be a live handle; `out` must be writable.
 */
enum RfStatus rf_hcorr_to_json(const struct RfHolCorr *k, char **out);

/*
 `out = k2∘k1`, optionally reduced to its squarefree part.

 # Safety
 `k2`, `k1` must be live handles; `out` must be writable.
 */
enum RfStatus rf_hcorr_compose(const struct RfHolCorr *k2,
                               const struct RfHolCorr *k1,
                               bool squarefree,
                               struct RfHolCorr **out);

/*
 # Safety
 `k` must be NULL or a handle from this library not yet freed.
 */
void rf_hcorr_free(struct RfHolCorr *k);

/*
 Classifies an `nx × nx` grid over the square of side `width` centred at
 `(re, im)` with default budgets.

 # Safety
 `map` must be a live handle; `out` must be writable.
 */
enum RfStatus rf_julia_render(const struct RfPoly *map,
                              double re,
                              double im,
                              double width,
                              size_t nx,
                              struct RfGrid **out);

/*
 # Safety
 `g` must be a live handle; `nx`, `ny` must be writable.
 */
enum RfStatus rf_grid_size(const struct RfGrid *g, size_t *nx, size_t *ny);

/*
 Copies row-major class codes (0 finite, 85 undecided, 170 attracted,
 255 escape) into `buf`, which must hold `nx·ny` bytes.

 # Safety
 `g` must be a live handle; `buf` must be writable for `len` bytes.
 */
enum RfStatus rf_grid_codes(const struct RfGrid *g, uint8_t *buf, size_t len);

/*
 # Safety
 `g` must be NULL or a handle from this library not yet freed.
 */
void rf_grid_free(struct RfGrid *g);

/*
 Runs acceptance check `id` (1-based) with `seed`; `pass` receives 1 or 0.

 # Safety
 `pass` must be writable.
 */
enum RfStatus rf_check_run(size_t id, uint64_t seed, int32_t *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RITTFORGE_H */
