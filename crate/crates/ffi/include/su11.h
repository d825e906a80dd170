#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Kerr treatment of the oracle.
 */
typedef enum Su11KerrVariant {
  Su11KerrVariant_Exact = 0,
  Su11KerrVariant_Linearized = 1,
} Su11KerrVariant;

/**
 * Which closed form evaluates the lossy second moment.
 */
typedef enum Su11LossyPath {
  Su11LossyPath_Corrected = 0,
  Su11LossyPath_Reference = 1,
} Su11LossyPath;

/**
 * Detection scheme selector.
 */
typedef enum Su11Scheme {
  Su11Scheme_Si = 0,
  Su11Scheme_Hd = 1,
} Su11Scheme;

/**
 * Status codes returned by every entry point.
 */
typedef enum Su11Status {
  Su11Status_Ok = 0,
  Su11Status_NullPointer = 1,
  Su11Status_InvalidArgument = 2,
  Su11Status_TruncationExceeded = 3,
  Su11Status_StationaryPoint = 4,
  Su11Status_DegenerateStatistics = 5,
  Su11Status_Internal = 6,
} Su11Status;

/**
 * Opaque oracle session carrying truncation options.
 */
typedef struct Su11Oracle Su11Oracle;

/**
 * All physical parameters of one experiment point.
 */
typedef struct Su11Config {
  double alpha;
  double gamma;
  double r1;
  double r2;
  double theta1;
  double theta2;
  double phi;
  double mu;
  double eta;
} Su11Config;

/**
 * A phase-sensitivity result.
 */
typedef struct Su11Sensitivity {
  double delta_phi;
  double derivative_mag;
} Su11Sensitivity;

/**
 * Output-mode moments; `n1` and `n2` are the (real) normally ordered
 * photon-number moments.
 */
typedef struct Su11MomentSet {
  double m1_re;
  double m1_im;
  double m2_re;
  double m2_im;
  double n1;
  double n2;
} Su11MomentSet;

/**
 * Photon-number statistics of the two internal modes.
 */
typedef struct Su11NumberStats {
  double var1;
  double var2;
  double cov;
} Su11NumberStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static C string.
 */
const char *su11_version(void);

/**
 * Human-readable description of a status code (static storage).
 */
const char *su11_status_message(enum Su11Status status);

/**
 * gamma = chi3 * length / velocity.
 */
enum Su11Status su11_kerr_gamma(double chi3, double length, double velocity, double *out);

/**
 * Validates every configuration invariant.
 */
enum Su11Status su11_validate(const struct Su11Config *cfg);

/**
 * Approximate Kerr-state mean photon number: alpha^2 + 4 alpha^4 (1+alpha^2) gamma^2.
 */
enum Su11Status su11_mean_photon_kerr(double alpha, double gamma, double *out);

/**
 * Shot-noise limit 1/sqrt(n).
 */
enum Su11Status su11_snl(double n, double *out);

/**
 * Heisenberg limit 1/n.
 */
enum Su11Status su11_hl(double n, double *out);

/**
 * Single-intensity phase sensitivity (lossless configurations).
 */
enum Su11Status su11_delta_phi_si(const struct Su11Config *cfg, struct Su11Sensitivity *out);

/**
 * Homodyne phase sensitivity (lossless configurations).
 */
enum Su11Status su11_delta_phi_hd(const struct Su11Config *cfg, struct Su11Sensitivity *out);

/**
 * Homodyne phase sensitivity with internal/external loss.
 */
enum Su11Status su11_delta_phi_hd_lossy(const struct Su11Config *cfg,
                                        enum Su11LossyPath path,
                                        struct Su11Sensitivity *out);

/**
 * Quantum Cramer-Rao bound of the Kerr-seeded interferometer.
 */
enum Su11Status su11_qcrb_kerr_seed(double alpha, double gamma, double r1, double *out);

/**
 * Minimizes the phase sensitivity over phi in [0, 2 pi).
 */
enum Su11Status su11_optimum_phi(const struct Su11Config *cfg,
                                 enum Su11Scheme scheme,
                                 enum Su11LossyPath path,
                                 double *out_phi,
                                 double *out_delta_phi);

/**
 * Closed-form output moments (the selected lossy path for lossy inputs).
 */
enum Su11Status su11_analytic_moments(const struct Su11Config *cfg,
                                      enum Su11LossyPath path,
                                      struct Su11MomentSet *out);

/**
 * Creates an oracle session. `n_max` = 0 selects the cutoff automatically;
 * `n_ancilla` = 0 keeps the default (16); `convergence_check` re-runs with
 * +25% headroom and fails if the moments move.
 */
struct Su11Oracle *su11_oracle_new(uintptr_t n_max, uintptr_t n_ancilla, bool convergence_check);

/**
 * Frees an oracle session. Null is a safe no-op.
 */
void su11_oracle_free(struct Su11Oracle *oracle);

/**
 * Runs the truncated Fock-space simulation and writes the output moments
 * and internal photon-number statistics. Either output pointer may be
 * null if that half is not wanted (but not both).
 */
enum Su11Status su11_oracle_moments(const struct Su11Oracle *oracle,
                                    const struct Su11Config *cfg,
                                    enum Su11KerrVariant variant,
                                    struct Su11MomentSet *out_moments,
                                    struct Su11NumberStats *out_internal);

/**
 * Oracle error-propagation sensitivity with a centered finite difference
 * of step `h` (1e-7 ..= 1e-3 radians).
 */
enum Su11Status su11_oracle_sensitivity(const struct Su11Oracle *oracle,
                                        const struct Su11Config *cfg,
                                        enum Su11Scheme scheme,
                                        enum Su11KerrVariant variant,
                                        double h,
                                        struct Su11Sensitivity *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
