#ifndef FRACOPS_H
#define FRACOPS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes shared by every entry point.
typedef enum FracStatus {
  FRAC_STATUS_OK = 0,
  FRAC_STATUS_NULL_POINTER = 1,
  FRAC_STATUS_INVALID_ARGUMENT = 2,
  FRAC_STATUS_INVALID_GRID = 3,
  FRAC_STATUS_GRID_MISMATCH = 4,
  FRAC_STATUS_INVALID_ORDER = 5,
  FRAC_STATUS_NON_FINITE = 6,
  FRAC_STATUS_NOT_REAL = 7,
  FRAC_STATUS_NON_POSITIVE = 8,
  FRAC_STATUS_UNKNOWN_FAMILY = 9,
  FRAC_STATUS_NOT_ADDITIVE = 10,
  FRAC_STATUS_INVALID_INTEGRATOR = 11,
  FRAC_STATUS_OUT_OF_DOMAIN = 12,
  FRAC_STATUS_BUFFER_TOO_SMALL = 13,
  FRAC_STATUS_IO = 14,
  FRAC_STATUS_JSON = 15,
  FRAC_STATUS_INTERNAL = 16,
} FracStatus;

// A strictly increasing integrator.
typedef struct FracIntegrator FracIntegrator;

// A sampled function on a uniform grid.
typedef struct FracSampled FracSampled;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *frac_last_error_message(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library that was not freed yet.
void frac_string_free(char *s);

// `Γ(x)`.
double frac_gamma(double x);

// Samples on the uniform grid of `[a, t]` with `n` intervals; `values` holds
// `n + 1` real parts and `imag` is null or holds `n + 1` imaginary parts.
//
// # Safety
// `values` (and `imag` when not null) must point to `n + 1` doubles; `out` must be writable.
enum FracStatus frac_sampled_new(double a,
                                 double t,
                                 size_t n,
                                 const double *values,
                                 const double *imag,
                                 struct FracSampled **out);

// # Safety
// `f` must be null or a handle from this library that was not freed yet.
void frac_sampled_free(struct FracSampled *f);

// Number of nodes, or 0 for a null handle.
//
// # Safety
// `f` must be null or a live handle.
size_t frac_sampled_len(const struct FracSampled *f);

// Copies node values into `re` and, when not null, `im`; both hold `capacity` doubles.
//
// # Safety
// `f` must be a live handle; `re` and `im` must point to `capacity` writable doubles.
enum FracStatus frac_sampled_values(const struct FracSampled *f,
                                    double *re,
                                    double *im,
                                    size_t capacity);

// `I^α f` with origin at the left endpoint.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum FracStatus frac_rl_integral(double alpha,
                                 const struct FracSampled *f,
                                 struct FracSampled **out);

// `J^α f` for the catalog family called `family`.
//
// # Safety
// `family` must be a nul-terminated string; `f` a live handle; `out` writable.
enum FracStatus frac_family_apply(const char *family,
                                  double alpha,
                                  const struct FracSampled *f,
                                  struct FracSampled **out);

// Effective order `β` of `g ≈ (t - a)^β / Γ(β + 1)`.
//
// # Safety
// `g` must be a live handle; `out` writable.
enum FracStatus frac_estimate_order(const struct FracSampled *g, double *out);

// Parses and validates an integrator from its JSON description.
//
// # Safety
// `json` must be a nul-terminated string; `out` writable.
enum FracStatus frac_integrator_from_json(const char *json, struct FracIntegrator **out);

// # Safety
// `phi` must be null or a handle from this library that was not freed yet.
void frac_integrator_free(struct FracIntegrator *phi);

// Lebesgue measure of `φ([u, v])`.
//
// # Safety
// `phi` must be a live handle; `out` writable.
enum FracStatus frac_pushforward_measure(const struct FracIntegrator *phi,
                                         double u,
                                         double v,
                                         double *out);

// `I_{a,φ}^α g` by quadrature on the image of `φ`.
//
// # Safety
// `phi` and `g` must be live handles; `out` writable.
enum FracStatus frac_rl_wrt_phi_direct(double alpha,
                                       const struct FracIntegrator *phi,
                                       const struct FracSampled *g,
                                       struct FracSampled **out);

// `I_{a,φ}^α g` by transmutation of the ordinary integral.
//
// # Safety
// `phi` and `g` must be live handles; `out` writable.
enum FracStatus frac_rl_wrt_phi_transmuted(double alpha,
                                           const struct FracIntegrator *phi,
                                           const struct FracSampled *g,
                                           struct FracSampled **out);

// One-dimensional Riesz potential of `m` periodic samples at `j / m`;
// writes the real part of the result to `out`.
//
// # Safety
// `values` must point to `m` doubles and `out` to `m` writable doubles.
enum FracStatus frac_riesz_potential_1d(double alpha, const double *values, size_t m, double *out);

// Runs the axiom checks with default settings at resolution `grid_n` for
// `family` (a catalog name or `"all"`). Writes the JSON report array to
// `out_json` and whether every verdict matched its profile to `all_match`.
//
// # Safety
// `family` must be a nul-terminated string; `out_json` and `all_match` writable.
enum FracStatus frac_axioms_json(const char *family,
                                 size_t grid_n,
                                 char **out_json,
                                 bool *all_match);

// Extends samples `h(k num/den)`, `0 < k num/den < bound`, additively over
// `doublings` doublings of the domain. Writes the extended samples to `out`
// (room for `capacity` doubles) and their count to `out_len`; when the buffer
// is too small only `out_len` is written.
//
// # Safety
// `values` must point to `len` doubles, `out` to `capacity` writable doubles,
// and `out_len` must be writable.
enum FracStatus frac_extend_additive(double bound,
                                     uint64_t step_num,
                                     uint64_t step_den,
                                     const double *values,
                                     size_t len,
                                     uint32_t doublings,
                                     double *out,
                                     size_t capacity,
                                     size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACOPS_H */
