#ifndef HGPFORGE_H
#define HGPFORGE_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result codes.
 */
typedef enum HgpStatus {
  HGP_STATUS_OK = 0,
  HGP_STATUS_NULL_POINTER = 1,
  HGP_STATUS_INVALID_UTF8 = 2,
  HGP_STATUS_PARSE = 3,
  HGP_STATUS_CONTRACT = 4,
  HGP_STATUS_LEVEL_OUT_OF_RANGE = 5,
  HGP_STATUS_SEARCH_INFEASIBLE = 6,
  HGP_STATUS_UNDEFINED = 7,
  HGP_STATUS_FAILED = 8,
  HGP_STATUS_PANIC = 9,
} HgpStatus;

/*
 Opaque code handle.
 */
typedef struct HgpCode HgpCode;

/*
 Closed-form product parameters; distances are 0 when undefined.
 */
typedef struct HgpKunneth {
  size_t n;
  size_t k;
  size_t d_x;
  size_t d_z;
} HgpKunneth;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failing call on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *hgp_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *hgp_version(void);

/*
 Builds the product of `nseeds` seed matrices (plain-text matrix format)
 and assembles the code with qubits on `level`.

 # Safety
 `seeds` must point to `nseeds` NUL-terminated strings and `out` must be
 writable.
 */
enum HgpStatus hgp_code_from_seeds(const char *const *seeds,
                                   size_t nseeds,
                                   size_t level,
                                   struct HgpCode **out);

/*
 Loads a code bundle JSON document.

 # Safety
 `json` must be a NUL-terminated string and `out` must be writable.
 */
enum HgpStatus hgp_code_from_bundle(const char *json, struct HgpCode **out);

/*
 Releases a handle; NULL is ignored.

 # Safety
 `code` must come from this library and not be used afterwards.
 */
void hgp_code_free(struct HgpCode *code);

/*
 Number of physical and logical qubits.

 # Safety
 `code` must be a live handle; `n` and `k` must be writable.
 */
enum HgpStatus hgp_code_params(const struct HgpCode *code, size_t *n, size_t *k);

/*
 Closed-form parameters of a product code.

 # Safety
 `code` must be a live handle; `out` must be writable.
 */
enum HgpStatus hgp_code_kunneth(const struct HgpCode *code, struct HgpKunneth *out);

/*
 Exact X and Z distances by exhaustive search.

 # Safety
 `code` must be a live handle; `d_x` and `d_z` must be writable.
 */
enum HgpStatus hgp_code_distance(const struct HgpCode *code, size_t *d_x, size_t *d_z);

/*
 Whether the region of `len` qubit indices supports no nontrivial logical.

 # Safety
 `code` must be a live handle, `qubits` must point to `len` values (or be
 NULL when `len` is 0) and `out` must be writable.
 */
enum HgpStatus hgp_code_is_correctable(const struct HgpCode *code,
                                       const size_t *qubits,
                                       size_t len,
                                       bool *out);

/*
 Serialises the code as bundle JSON; free the string with [`hgp_string_free`].

 # Safety
 `code` must be a live handle; `out` must be writable.
 */
enum HgpStatus hgp_code_bundle_json(const struct HgpCode *code, char **out);

/*
 Releases a string returned by this library; NULL is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void hgp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HGPFORGE_H */
