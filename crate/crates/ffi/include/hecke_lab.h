#ifndef HECKE_LAB_H
#define HECKE_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HlCheckMode {
  HL_CHECK_MODE_EXACT = 0,
  HL_CHECK_MODE_SAMPLED = 1,
  HL_CHECK_MODE_FLOAT = 2,
} HlCheckMode;

typedef enum HlSeed {
  // z ↦ 1/z, weight one only.
  HL_SEED_INVERSE_Z = 0,
  // z ↦ 1 − z^(−2β).
  HL_SEED_EISENSTEIN = 1,
  // z ↦ 1, never a solution.
  HL_SEED_CONSTANT = 2,
} HlSeed;

// Result code of every fallible call.
typedef enum HlStatus {
  HL_STATUS_OK = 0,
  // A required pointer argument was NULL.
  HL_STATUS_NULL_POINTER = 1,
  // Invalid arguments or configuration.
  HL_STATUS_USAGE = 2,
  // Arguments outside the domain of the operation.
  HL_STATUS_DOMAIN = 3,
  // Malformed text input.
  HL_STATUS_PARSE = 4,
  // A result entry does not fit in int64_t.
  HL_STATUS_OVERFLOW = 5,
  // An internal invariant failed.
  HL_STATUS_INTERNAL = 6,
  // A Rust panic was caught at the boundary.
  HL_STATUS_PANIC = 7,
} HlStatus;

// Opaque handle to the index table of a level.
typedef struct HlIndexTable HlIndexTable;

// Opaque handle to a vector of formal sums together with its seed and
// weight.
typedef struct HlPeriodVector HlPeriodVector;

// A 2×2 integer matrix (a b; c d).
typedef struct HlMat2 {
  int64_t a;
  int64_t b;
  int64_t c;
  int64_t d;
} HlMat2;

// Canonical key of the left coset Γ₀(n)·g: the P¹ class of the bottom row
// of the SL(2,Z) factor and the Hermite factor.
typedef struct HlCosetKey {
  uint64_t level;
  uint64_t class_c;
  uint64_t class_d;
  struct HlMat2 hnf;
} HlCosetKey;

// One row of an index table.
typedef struct HlIndexEntry {
  uint64_t c;
  uint64_t b;
  uint64_t d;
  // Upper triangular representative A_i.
  struct HlMat2 a_mat;
  // SL(2,Z) representative R_i.
  struct HlMat2 r_mat;
  // Image of this ordinal under the bijection hₙ.
  size_t h;
} HlIndexEntry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string. Do not free.
const char *hl_version(void);

// Message of the last failed call on this thread, or NULL if the last call
// succeeded. The caller frees the result with [`hl_string_free`].
char *hl_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a pointer returned by this library and not yet freed.
void hl_string_free(char *s);

// Splits a matrix of positive determinant as g = γ·A with γ ∈ SL(2,Z) and
// A = (a b; 0 d), a ≥ 1, 0 ≤ b < d.
//
// # Safety
// `gamma` and `upper` must be valid for writes.
enum HlStatus hl_hnf_decompose(struct HlMat2 g, struct HlMat2 *gamma, struct HlMat2 *upper);

// Canonical key of the left coset Γ₀(n)·g for a matrix of positive
// determinant. Two matrices lie in the same coset iff their keys are equal.
//
// # Safety
// `out` must be valid for a write.
enum HlStatus hl_coset_key(uint64_t n, struct HlMat2 g, struct HlCosetKey *out);

// Whether g lies in Γ₀(n).
//
// # Safety
// `out` must be valid for a write.
enum HlStatus hl_in_gamma0(uint64_t n, struct HlMat2 g, bool *out);

// Builds (or fetches from the cache) the index table of level n.
//
// # Safety
// `out` must be valid for a write. Release the handle with
// [`hl_index_table_free`].
enum HlStatus hl_index_table_new(uint64_t n, struct HlIndexTable **out);

// Number of entries μₙ, or 0 for a NULL handle.
//
// # Safety
// `t` must be NULL or a live handle.
size_t hl_index_table_len(const struct HlIndexTable *t);

// Copies entry `i` of the table.
//
// # Safety
// `t` must be a live handle and `out` valid for a write.
enum HlStatus hl_index_table_entry(const struct HlIndexTable *t,
                                   size_t i,
                                   struct HlIndexEntry *out);

// Canonical JSON export of the table.
//
// # Safety
// `t` must be a live handle and `out` valid for a write. Free the string
// with [`hl_string_free`].
enum HlStatus hl_index_table_to_json(const struct HlIndexTable *t, char **out);

// Releases a table handle. NULL is ignored.
//
// # Safety
// `t` must be NULL or a handle not yet freed.
void hl_index_table_free(struct HlIndexTable *t);

// The ψ solution of level n on the given seed and integer weight β.
//
// # Safety
// `out` must be valid for a write. Release the handle with
// [`hl_period_vector_free`].
enum HlStatus hl_psi_vector_new(uint64_t n,
                                enum HlSeed seed,
                                uint32_t beta,
                                struct HlPeriodVector **out);

// Level of the vector, or 0 for a NULL handle.
//
// # Safety
// `v` must be NULL or a live handle.
uint64_t hl_period_vector_level(const struct HlPeriodVector *v);

// Number of components, or 0 for a NULL handle.
//
// # Safety
// `v` must be NULL or a live handle.
size_t hl_period_vector_len(const struct HlPeriodVector *v);

// Applies T̃ₙ,ₘ to a vector of level n, giving a new vector of level n.
//
// # Safety
// `v` must be a live handle and `out` valid for a write.
enum HlStatus hl_t_tilde_apply(const struct HlPeriodVector *v,
                               uint64_t m,
                               struct HlPeriodVector **out);

// Checks the three-term equation for every component under ρ̃ and writes
// whether all components pass.
//
// # Safety
// `v` must be a live handle and `passed` valid for a write.
enum HlStatus hl_period_vector_check_three_term(const struct HlPeriodVector *v,
                                                enum HlCheckMode mode,
                                                bool *passed);

// Writes λ as a decimal string "p/q" or "p" if `output` = λ·`input`
// componentwise, and NULL otherwise.
//
// # Safety
// Both handles must be live and `out` valid for a write.
enum HlStatus hl_detect_eigenvalue(const struct HlPeriodVector *input,
                                   const struct HlPeriodVector *output,
                                   char **out);

// Canonical JSON export of the vector.
//
// # Safety
// `v` must be a live handle and `out` valid for a write.
enum HlStatus hl_period_vector_to_json(const struct HlPeriodVector *v, char **out);

// Releases a vector handle. NULL is ignored.
//
// # Safety
// `v` must be NULL or a handle not yet freed.
void hl_period_vector_free(struct HlPeriodVector *v);

// Canonical JSON of the total orbit sum ψ of level n.
//
// # Safety
// `out` must be valid for a write.
enum HlStatus hl_psi_total_json(uint64_t n, char **out);

// Canonical JSON of the Farey path of num/den ∈ [0, 1).
//
// # Safety
// `out` must be valid for a write.
enum HlStatus hl_farey_path_json(int64_t num, int64_t den, char **out);

// Canonical JSON of Ĥₙ,ₘ as a multiset of left cosets of Γ₀(n).
//
// # Safety
// `out` must be valid for a write.
enum HlStatus hl_coset_sum_json(uint64_t n, uint64_t m, char **out);

// Runs the verification suite. `config_json` is a JSON object with the
// keys of the report's `config` echo; missing keys take their defaults and
// NULL means the default config. Writes the JSON report and whether every
// check passed. A suite that runs but has failing checks still returns
// [`HlStatus::Ok`] with `passed` set to false.
//
// # Safety
// `config_json` must be NULL or a NUL-terminated UTF-8 string; `report`
// and `passed` must be valid for writes.
enum HlStatus hl_run_suite_json(const char *config_json, char **report, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HECKE_LAB_H */
