#ifndef QSIGNALS_H
#define QSIGNALS_H

#include <stdbool.h>
#include <stddef.h>

// Result code of every fallible call.
typedef enum QsStatus {
  QS_STATUS_OK = 0,
  QS_STATUS_NULL_POINTER = 1,
  QS_STATUS_INVALID_ARGUMENT = 2,
  QS_STATUS_DIMENSION_MISMATCH = 3,
  QS_STATUS_NOT_HERMITIAN = 4,
  QS_STATUS_INVALID_DENSITY = 5,
  QS_STATUS_CLOSURE_VIOLATED = 6,
  QS_STATUS_NOT_UNITARY = 7,
  QS_STATUS_ZERO_PROBABILITY = 8,
  QS_STATUS_SCENARIO = 9,
  QS_STATUS_PANIC = 10,
} QsStatus;

typedef enum QsSubsystem {
  QS_SUBSYSTEM_A = 0,
  QS_SUBSYSTEM_B = 1,
} QsSubsystem;

// Kraus channel handle.
typedef struct QsChannel QsChannel;

// Bipartite state handle.
typedef struct QsComposite QsComposite;

// Validated density matrix handle.
typedef struct QsDensity QsDensity;

// Complex matrix handle.
typedef struct QsMatrix QsMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failed call on this thread; empty after a
// successful call. Valid until the next call into this library.
const char *qs_last_error_message(void);

// Creates a `rows x cols` matrix from `2 * rows * cols` interleaved doubles.
//
// # Safety
// `data` must point to `2 * rows * cols` readable doubles; `out` must be writable.
enum QsStatus qs_matrix_new(size_t rows, size_t cols, const double *data, struct QsMatrix **out);

// # Safety
// `m` must be null or a handle from this library not yet freed.
void qs_matrix_free(struct QsMatrix *m);

// Number of rows, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
size_t qs_matrix_rows(const struct QsMatrix *m);

// Number of columns, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
size_t qs_matrix_cols(const struct QsMatrix *m);

// Copies entries as interleaved doubles; `capacity` counts doubles.
//
// # Safety
// `m` must be a live handle; `out` must have room for `capacity` doubles.
enum QsStatus qs_matrix_copy_data(const struct QsMatrix *m, double *out, size_t capacity);

// Validates `matrix` as a density matrix within `tol`.
//
// # Safety
// `matrix` must be a live handle; `out` must be writable.
enum QsStatus qs_density_new(const struct QsMatrix *matrix, double tol, struct QsDensity **out);

// `|x><x|` from `dim` interleaved amplitudes.
//
// # Safety
// `amplitudes` must point to `2 * dim` doubles; `out` must be writable.
enum QsStatus qs_density_from_pure(size_t dim, const double *amplitudes, struct QsDensity **out);

// # Safety
// `d` must be null or a live handle.
void qs_density_free(struct QsDensity *d);

// Dimension, or 0 for a null handle.
//
// # Safety
// `d` must be null or a live handle.
size_t qs_density_dim(const struct QsDensity *d);

// Copies the density matrix into a new matrix handle.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum QsStatus qs_density_matrix(const struct QsDensity *d, struct QsMatrix **out);

// # Safety
// `d` must be a live handle; `out` must be writable.
enum QsStatus qs_density_purity(const struct QsDensity *d, double *out);

// # Safety
// `d` must be a live handle; `out` must be writable.
enum QsStatus qs_density_trace(const struct QsDensity *d, double *out);

// Builds a channel from `count` Kraus matrices, checking closure within `tol`.
//
// # Safety
// `matrices` must point to `count` live matrix handles; `out` must be writable.
enum QsStatus qs_channel_from_kraus(const struct QsMatrix *const *matrices,
                                    size_t count,
                                    double tol,
                                    struct QsChannel **out);

// Unitary channel `exp(-i H delta_tau)`; `h` must be Hermitian within `tol`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum QsStatus qs_channel_from_hamiltonian(const struct QsMatrix *h,
                                          double delta_tau,
                                          double tol,
                                          struct QsChannel **out);

// # Safety
// `c` must be null or a live handle.
void qs_channel_free(struct QsChannel *c);

// Dimension, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
size_t qs_channel_dim(const struct QsChannel *c);

// Number of Kraus operators, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
size_t qs_channel_kraus_count(const struct QsChannel *c);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum QsStatus qs_channel_closure_deviation(const struct QsChannel *c, double *out);

// # Safety
// Handles must be live; `out` must be writable.
enum QsStatus qs_channel_apply(const struct QsChannel *c,
                               const struct QsDensity *rho,
                               struct QsDensity **out);

// Channel applying `first` then `second`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum QsStatus qs_channel_compose(const struct QsChannel *first,
                                 const struct QsChannel *second,
                                 struct QsChannel **out);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum QsStatus qs_channel_is_unitary(const struct QsChannel *c, double tol, bool *out);

// `rho_a (x) rho_b`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum QsStatus qs_composite_tensor(const struct QsDensity *a,
                                  const struct QsDensity *b,
                                  struct QsComposite **out);

// Wraps a density matrix of dimension `dim_a * dim_b` as a composite.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum QsStatus qs_composite_new(const struct QsDensity *d,
                               size_t dim_a,
                               size_t dim_b,
                               struct QsComposite **out);

// # Safety
// `c` must be null or a live handle.
void qs_composite_free(struct QsComposite *c);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum QsStatus qs_composite_matrix(const struct QsComposite *c, struct QsMatrix **out);

// Reduced state after tracing out `over`.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum QsStatus qs_composite_partial_trace(const struct QsComposite *c,
                                         enum QsSubsystem over,
                                         struct QsDensity **out);

// `U rho U^dagger` for a global unitary `u`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum QsStatus qs_composite_apply_unitary(const struct QsMatrix *u,
                                         const struct QsComposite *c,
                                         struct QsComposite **out);

// Whether the state equals the product of its marginals within `tol`.
// `out_distance` may be null.
//
// # Safety
// `c` must be a live handle; `out_is_product` must be writable.
enum QsStatus qs_composite_is_product(const struct QsComposite *c,
                                      double tol,
                                      bool *out_is_product,
                                      double *out_distance);

// Born probabilities for the spectral projectors of `observable`, in
// ascending eigenvalue order. A non-positive `cluster_tol` selects the
// default. `out_count` receives the number of outcomes even when `capacity`
// is too small.
//
// # Safety
// Handles must be live; `out` must have room for `capacity` doubles;
// `out_count` must be writable.
enum QsStatus qs_outcome_probabilities(const struct QsDensity *rho,
                                       const struct QsMatrix *observable,
                                       double cluster_tol,
                                       double *out,
                                       size_t capacity,
                                       size_t *out_count);

// Parses and runs a scenario; `*out` receives the report, to be released
// with [`qs_string_free`].
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum QsStatus qs_scenario_run(const char *json, bool machine, char **out);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void qs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSIGNALS_H */
