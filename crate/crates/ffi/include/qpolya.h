#ifndef QPOLYA_H
#define QPOLYA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_NULL_POINTER = 1,
  QP_STATUS_INVALID_UTF8 = 2,
  QP_STATUS_SYNTAX = 3,
  QP_STATUS_DOMAIN = 4,
  QP_STATUS_OUT_OF_RANGE = 5,
  QP_STATUS_PANIC = 6,
} QpStatus;

// An element of a cyclotomic field.
typedef struct QpCyclotomic QpCyclotomic;

// A computed or loaded prefix of a line series.
typedef struct QpSeries QpSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses `expr` as an element of Q(ζ_order), `z` standing for ζ_order.
//
// # Safety
// `expr` must be a valid C string, `out` a valid pointer.
enum QpStatus qp_cyclotomic_parse(const char *expr, uint64_t order, struct QpCyclotomic **out);

// # Safety
// `h` must come from this library and not be freed twice. Null is ignored.
void qp_cyclotomic_free(struct QpCyclotomic *h);

// # Safety
// `h` must be a live handle, `out` a valid pointer.
enum QpStatus qp_cyclotomic_to_string(const struct QpCyclotomic *h, char **out);

// # Safety
// `h` must be a live handle, `out` a valid pointer.
enum QpStatus qp_cyclotomic_order(const struct QpCyclotomic *h, uint64_t *out);

// # Safety
// `h` must be a live handle, `out` a valid pointer.
enum QpStatus qp_is_root_of_unity(const struct QpCyclotomic *h, bool *out);

// First `len` coefficients of the line series through (n, k) with slope
// (a, b), evaluated at `q`.
//
// # Safety
// `q` must be a live handle, `out` a valid pointer.
enum QpStatus qp_series_new(int64_t n,
                            int64_t k,
                            int64_t a,
                            int64_t b,
                            const struct QpCyclotomic *q,
                            uintptr_t len,
                            struct QpSeries **out);

// # Safety
// `h` must come from this library and not be freed twice. Null is ignored.
void qp_series_free(struct QpSeries *h);

// # Safety
// `h` must be a live handle, `out` a valid pointer.
enum QpStatus qp_series_len(const struct QpSeries *h, uintptr_t *out);

// Copies coefficient `j` into a new handle.
//
// # Safety
// `h` must be a live handle, `out` a valid pointer.
enum QpStatus qp_series_term(const struct QpSeries *h, uintptr_t j, struct QpCyclotomic **out);

// Text dump of the prefix, in the same format the CLI writes.
//
// # Safety
// `h` must be a live handle, `out` a valid pointer.
enum QpStatus qp_series_dump(const struct QpSeries *h, char **out);

// # Safety
// `text` must be a valid C string, `out` a valid pointer.
enum QpStatus qp_series_load(const char *text, struct QpSeries **out);

// Runs the decision procedure and writes the verdict as JSON. A
// `max_degree` of 0 selects the default.
//
// # Safety
// `q` must be a live handle, `out` a valid pointer.
enum QpStatus qp_decide_json(int64_t n,
                             int64_t k,
                             int64_t a,
                             int64_t b,
                             const struct QpCyclotomic *q,
                             uint32_t max_degree,
                             char **out);

// The Gaussian binomial [n choose k]_q as a JSON array of coefficients.
//
// # Safety
// `out` must be a valid pointer.
enum QpStatus qp_qbinomial_json(int64_t n, int64_t k, char **out);

// Machine-readable code of the last error on this thread, or null.
char *qp_last_error_code(void);

// Message of the last error on this thread, or null.
char *qp_last_error_message(void);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void qp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPOLYA_H */
