#ifndef BDFORGE_H
#define BDFORGE_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum BdStatus {
  BD_STATUS_OK = 0,
  BD_STATUS_NULL_POINTER = 1,
  BD_STATUS_INVALID_ARGUMENT = 2,
  BD_STATUS_UNSUPPORTED = 3,
  BD_STATUS_VERIFICATION_FAILED = 4,
  BD_STATUS_PARSE = 5,
  BD_STATUS_PANIC = 6,
} BdStatus;

/**
 * Outcome of the r-matrix axiom check on a tensor.
 */
typedef enum BdVerdict {
  BD_VERDICT_R_MATRIX = 0,
  BD_VERDICT_NOT_PROPORTIONAL = 1,
  BD_VERDICT_LAMBDA_ZERO = 2,
  BD_VERDICT_CYB_NONZERO = 3,
} BdVerdict;

/**
 * A split simple Lie algebra with its Chevalley basis.
 */
typedef struct BdAlgebra BdAlgebra;

/**
 * A verified Belavin-Drinfeld r-matrix of a specific algebra.
 */
typedef struct BdRMatrix BdRMatrix;

typedef struct BdAxiomReport {
  bool antisymmetric;
  bool cojacobi;
  bool cocycle;
} BdAxiomReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the next call.
 */
const char *bd_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bd_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void bd_string_free(char *s);

/**
 * Builds the algebra of type `type_letter` (`'A'`, `'B'`, `'C'`, `'D'`, `'G'`) and rank `rank`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum BdStatus bd_algebra_new(char type_letter, uint32_t rank, struct BdAlgebra **out);

/**
 * # Safety
 * `alg` must be null or a handle from [`bd_algebra_new`] that has not been freed.
 */
void bd_algebra_free(struct BdAlgebra *alg);

/**
 * # Safety
 * `alg` must be a live handle and `out` writable.
 */
enum BdStatus bd_algebra_dim(const struct BdAlgebra *alg, uint32_t *out);

/**
 * Number of admissible triples of the algebra's root system.
 *
 * # Safety
 * `alg` must be a live handle and `out` writable.
 */
enum BdStatus bd_triple_count(const struct BdAlgebra *alg, uint32_t *out);

/**
 * Builds and verifies `r_BD` for a triple given as JSON with 1-based simple roots,
 * e.g. `{"gamma1":[1],"gamma2":[2],"tau":{"1":"2"}}`. A null `triple_json` means
 * the trivial triple. The Cartan part is the canonical solution.
 *
 * # Safety
 * `alg` must be a live handle, `triple_json` null or NUL-terminated, `out` writable.
 */
enum BdStatus bd_rmatrix_build(const struct BdAlgebra *alg,
                               const char *triple_json,
                               struct BdRMatrix **out);

/**
 * # Safety
 * `r` must be null or a handle from [`bd_rmatrix_build`] that has not been freed.
 */
void bd_rmatrix_free(struct BdRMatrix *r);

/**
 * The tensor as `[[i, j, "p/q"], ...]`. Free the string with [`bd_string_free`].
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum BdStatus bd_rmatrix_to_json(const struct BdRMatrix *r, char **out);

/**
 * The Cartan part `r_h` in the same format as [`bd_rmatrix_to_json`].
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum BdStatus bd_rmatrix_cartan_json(const struct BdRMatrix *r, char **out);

/**
 * Checks the three Lie bialgebra axioms for the coboundary of `r`.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum BdStatus bd_rmatrix_bialgebra_axioms(const struct BdAlgebra *alg,
                                          const struct BdRMatrix *r,
                                          struct BdAxiomReport *out);

/**
 * Checks the r-matrix axioms for a tensor given as JSON over 0-based basis indices.
 *
 * # Safety
 * `alg` must be live, `tensor_json` NUL-terminated and `out` writable.
 */
enum BdStatus bd_verify_tensor(const struct BdAlgebra *alg,
                               const char *tensor_json,
                               enum BdVerdict *out);

/**
 * Runs the command-line front end with `argv[0..argc]` (without the program name).
 * Stores the process exit code it would use and its output text.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; `out_code` and `out_text` writable.
 */
enum BdStatus bd_cli_run(const char *const *argv, size_t argc, int32_t *out_code, char **out_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BDFORGE_H */
