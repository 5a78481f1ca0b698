#ifndef QUANDLEKIT_H
#define QUANDLEKIT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Binary operations on ring elements.
typedef enum QkOp {
  QK_OP_ADD = 0,
  QK_OP_SUB = 1,
  QK_OP_MUL = 2,
  QK_OP_COMMUTATOR = 3,
} QkOp;

// Result codes. Zero is success.
typedef enum QkStatus {
  QK_STATUS_OK = 0,
  QK_STATUS_NULL_POINTER = 1,
  QK_STATUS_INVALID_UTF8 = 2,
  QK_STATUS_PARSE = 3,
  QK_STATUS_UNKNOWN_NAME = 4,
  QK_STATUS_INVALID_QUANDLE = 5,
  QK_STATUS_RING_MISMATCH = 6,
  QK_STATUS_BOUND_EXCEEDED = 7,
  QK_STATUS_UNSUPPORTED = 8,
  QK_STATUS_HYPOTHESIS_FAILED = 9,
  QK_STATUS_VERIFICATION_FAILED = 10,
  QK_STATUS_IO = 11,
  QK_STATUS_OUT_OF_RANGE = 12,
  QK_STATUS_PANIC = 13,
} QkStatus;

// An element of a quandle ring.
typedef struct QkElement QkElement;

// A finite quandle.
typedef struct QkQuandle QkQuandle;

// Structural predicates of a finite quandle.
typedef struct QkPredicates {
  bool trivial;
  bool latin;
  bool semi_latin;
  bool involutary;
  bool commutative;
  bool strongly_non_commutative;
  bool connected;
  bool delta_square_zero;
} QkPredicates;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Human-readable detail for the most recent failure on this thread, or an
// empty string. Valid until the next call into this library on the thread.
const char *qk_last_error(void);

// Static name of a status code.
const char *qk_status_name(enum QkStatus status);

// # Safety
// `s` is null or was returned by this library and not yet freed.
void qk_string_free(char *s);

// Looks up a catalog quandle (`R3`, `Cs4`, `Conj(S3)`, `T<n>`, ...).
//
// # Safety
// `name` is a NUL-terminated string; `out` is writable.
enum QkStatus qk_quandle_from_catalog(const char *name, struct QkQuandle **out);

// Builds a quandle from a row-major `n * n` table of products.
//
// # Safety
// `table` points to `n * n` readable entries; `out` is writable.
enum QkStatus qk_quandle_from_table(const size_t *table, size_t n, struct QkQuandle **out);

// Parses a quandle table file.
//
// # Safety
// `src` is a NUL-terminated string; `out` is writable.
enum QkStatus qk_quandle_parse(const char *src, struct QkQuandle **out);

// # Safety
// `q` is null or a live handle from this library.
void qk_quandle_free(struct QkQuandle *q);

// # Safety
// `q` is a live handle; `out` is writable.
enum QkStatus qk_quandle_order(const struct QkQuandle *q, size_t *out);

// The product `i * j` of two element indices.
//
// # Safety
// `q` is a live handle; `out` is writable.
enum QkStatus qk_quandle_mul(const struct QkQuandle *q, size_t i, size_t j, size_t *out);

// The table file text for `q`; free with `qk_string_free`.
//
// # Safety
// `q` is a live handle; `out` is writable.
enum QkStatus qk_quandle_write(const struct QkQuandle *q, char **out);

// # Safety
// `q` is a live handle; `out` is writable.
enum QkStatus qk_quandle_predicates(const struct QkQuandle *q, struct QkPredicates *out);

// Parses a ring-element literal such as `2*a0 - a1` or `[2,-1,0]` over
// `ring_name` (`z`, `q` or `zmod:<m>`).
//
// # Safety
// `q` is a live handle; the strings are NUL-terminated; `out` is writable.
enum QkStatus qk_element_parse(const struct QkQuandle *q,
                               const char *ring_name,
                               const char *literal,
                               struct QkElement **out);

// # Safety
// `e` is null or a live handle from this library.
void qk_element_free(struct QkElement *e);

// `a op b` as a new element.
//
// # Safety
// `a` and `b` are live handles; `out` is writable.
enum QkStatus qk_element_op(enum QkOp op,
                            const struct QkElement *a,
                            const struct QkElement *b,
                            struct QkElement **out);

// # Safety
// `e` is a live handle; `out` is writable.
enum QkStatus qk_element_is_zero(const struct QkElement *e, bool *out);

// # Safety
// `e` is a live handle; `out` is writable.
enum QkStatus qk_element_to_string(const struct QkElement *e, char **out);

// Nonzero idempotents, one literal per line. Over `z` the coefficients
// lie in `[-bound, bound]`; over `zmod:<m>` the search is complete and
// `bound` is ignored.
//
// # Safety
// `q` is a live handle; `ring_name` is NUL-terminated; the out-pointers
// are writable.
enum QkStatus qk_idempotents(const struct QkQuandle *q,
                             const char *ring_name,
                             int64_t bound,
                             uint64_t budget,
                             size_t *count,
                             char **listing);

// Verifies every certificate in `src`; `count` receives how many there
// were. Any rejected certificate gives `VerificationFailed` or `Parse`.
//
// # Safety
// `src` is NUL-terminated; `count` is writable.
enum QkStatus qk_verify_certificates(const char *src, size_t *count);

// Runs the command-line front end in-process. `argv` excludes the program
// name. Standard output and standard error come back as strings (free
// both); `exit_code` receives the process exit code the CLI would use.
//
// # Safety
// `argv` points to `argc` NUL-terminated strings; the out-pointers are
// writable.
enum QkStatus qk_cli_run(int argc,
                         const char *const *argv,
                         int *exit_code,
                         char **stdout_text,
                         char **stderr_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUANDLEKIT_H */
