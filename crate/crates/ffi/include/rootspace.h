#ifndef ROOTSPACE_H
#define ROOTSPACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum RsStatus {
  RS_STATUS_OK = 0,
  RS_STATUS_NULL_ARGUMENT = 1,
  RS_STATUS_INVALID_UTF8 = 2,
  RS_STATUS_IO = 3,
  RS_STATUS_PARSE = 4,
  RS_STATUS_MORPHOLOGY = 5,
  RS_STATUS_STATISTICS = 6,
  RS_STATUS_NOT_FOUND = 7,
  RS_STATUS_BUFFER_TOO_SMALL = 8,
  RS_STATUS_PANIC = 9,
} RsStatus;

/*
 A loaded vector file.
 */
typedef struct RsEmbeddingSpace RsEmbeddingSpace;

/*
 A template inventory together with its alphabet.
 */
typedef struct RsInventory RsInventory;

/*
 Outcome of a one-tailed signed-rank test.
 */
typedef struct RsWilcoxon {
  double p_value;
  double w_plus;
  /*
   Non-zero differences used.
   */
  size_t n;
  size_t n_zeros;
  /*
   1 for the exact distribution, 0 for the normal approximation.
   */
  int32_t exact;
} RsWilcoxon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on the same thread.
 */
const char *rs_last_error(void);

/*
 # Safety
 `s` is null or was returned by this library and not yet freed.
 */
void rs_string_free(char *s);

/*
 Loads an inventory TSV. `alphabet` is `hebrew`, `latin` or a path to an
 alphabet file.

 # Safety
 String arguments are valid NUL-terminated strings; `out` is writable.
 */
enum RsStatus rs_inventory_load(const char *path, const char *alphabet, struct RsInventory **out);

/*
 # Safety
 `inv` is null or a handle from [`rs_inventory_load`] not yet freed.
 */
void rs_inventory_free(struct RsInventory *inv);

/*
 Spells `root` (consonants written together) in `template_id`.

 # Safety
 Pointers are valid; `out` receives a string for [`rs_string_free`].
 */
enum RsStatus rs_apply_template(const struct RsInventory *inv,
                                const char *root,
                                const char *template_id,
                                char **out);

/*
 Every root `template_id` maps onto `word`, one per line; empty when
 the word does not parse.

 # Safety
 Pointers are valid; `out` receives a string for [`rs_string_free`].
 */
enum RsStatus rs_extract_roots(const struct RsInventory *inv,
                               const char *word,
                               const char *template_id,
                               char **out);

/*
 The augmented root of the noun `noun`, built on `root` with the nominal
 template `template_id`.

 # Safety
 Pointers are valid; `out` receives a string for [`rs_string_free`].
 */
enum RsStatus rs_denominal_root(const struct RsInventory *inv,
                                const char *noun,
                                const char *template_id,
                                const char *root,
                                char **out);

/*
 Loads a vector file. `format` is `auto`, `word2vec` or `glove`, or null
 for `auto`.

 # Safety
 String arguments are null (where allowed) or valid; `out` is writable.
 */
enum RsStatus rs_vectors_load(const char *path,
                              const char *format,
                              const char *label,
                              struct RsEmbeddingSpace **out);

/*
 # Safety
 `space` is null or a handle from [`rs_vectors_load`] not yet freed.
 */
void rs_vectors_free(struct RsEmbeddingSpace *space);

/*
 Vector dimension; 0 for a null handle.

 # Safety
 `space` is null or a live handle.
 */
size_t rs_vectors_dim(const struct RsEmbeddingSpace *space);

/*
 Number of vectors; 0 for a null handle.

 # Safety
 `space` is null or a live handle.
 */
size_t rs_vectors_len(const struct RsEmbeddingSpace *space);

/*
 Copies the vector of `token` into `buf`, which holds `buf_len` doubles.

 # Safety
 Pointers are valid and `buf` has room for `buf_len` doubles.
 */
enum RsStatus rs_vectors_lookup(const struct RsEmbeddingSpace *space,
                                const char *token,
                                double *buf,
                                size_t buf_len);

/*
 One-tailed signed-rank test of `diffs` against a positive shift. Samples
 of at most `crossover` non-zero differences are tested exactly.

 # Safety
 `diffs` points to `n` doubles; `out` is writable.
 */
enum RsStatus rs_wilcoxon(const double *diffs, size_t n, size_t crossover, struct RsWilcoxon *out);

/*
 Cliff's delta of `a` against `b`.

 # Safety
 `a` and `b` point to `na` and `nb` doubles; `delta` is writable.
 */
enum RsStatus rs_cliffs_delta(const double *a,
                              size_t na,
                              const double *b,
                              size_t nb,
                              double *delta);

/*
 Two-sample Levene test; writes the statistic and its p-value.

 # Safety
 `a` and `b` point to `na` and `nb` doubles; outputs are writable.
 */
enum RsStatus rs_levene(const double *a,
                        size_t na,
                        const double *b,
                        size_t nb,
                        double *statistic,
                        double *p_value);

/*
 Cosine similarity of two vectors of length `n`.

 # Safety
 `u` and `v` point to `n` doubles; `out` is writable.
 */
enum RsStatus rs_cosine(const double *u, const double *v, size_t n, double *out);

/*
 Number of eigenvalues above their mean, at least 1.

 # Safety
 `eigenvalues` points to `n` doubles; `out` is writable.
 */
enum RsStatus rs_guttman_kaiser(const double *eigenvalues, size_t n, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROOTSPACE_H */
