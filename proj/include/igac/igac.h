/*
 * igac.h - C interface to the information-geometric chaos toolkit.
 *
 * Every fallible call returns an igac_status; on failure the message and the
 * offending field (if any) are available from igac_last_error_message() and
 * igac_last_error_field() on the calling thread until its next igac_ call.
 *
 * Objects are opaque handles created by *_create / producing calls and
 * released with the matching *_destroy. Handles are immutable after
 * creation and may be shared across threads for read-only calls.
 *
 * Matrices are row-major. Complex matrices interleave (re, im) pairs.
 * Output buffers are caller-owned; calls that take a length argument fail
 * with IGAC_ERR_ARGUMENT when the buffer is too small. A NULL buffer is
 * accepted when there is nothing to copy.
 */
#ifndef IGAC_IGAC_H
#define IGAC_IGAC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IGAC_BUILDING_LIBRARY)
#    define IGAC_API __declspec(dllexport)
#  else
#    define IGAC_API __declspec(dllimport)
#  endif
#else
#  define IGAC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum igac_status {
  IGAC_OK = 0,
  IGAC_ERR_ARGUMENT = 1,          /* null handle/pointer or undersized buffer */
  IGAC_ERR_DOMAIN = 2,
  IGAC_ERR_SHAPE = 3,
  IGAC_ERR_UNSUPPORTED = 4,
  IGAC_ERR_ACCURACY = 5,
  IGAC_ERR_SINGULARITY = 6,
  IGAC_ERR_INVERSION = 7,
  IGAC_ERR_INSUFFICIENT_DATA = 8,
  IGAC_ERR_INAPPLICABLE = 9,
  IGAC_ERR_FIT = 10,
  IGAC_ERR_VALIDATION = 11,
  IGAC_ERR_RESOURCE = 12,
  IGAC_ERR_INTERNAL = 13
} igac_status;

IGAC_API const char* igac_version(void);
IGAC_API const char* igac_status_name(igac_status status);
IGAC_API const char* igac_last_error_message(void);
IGAC_API const char* igac_last_error_field(void);

/* ---------------------------------------------------------------- families */

typedef struct igac_family igac_family;

/* exponential | gaussian | wigner_dyson | poisson_spacing |
 * composite_integrable | composite_chaotic */
IGAC_API igac_status igac_family_create(const char* name, igac_family** out);
/* Independent product of univariate families. */
IGAC_API igac_status igac_family_create_product(const igac_family* const* factors, size_t count, igac_family** out);
IGAC_API void igac_family_destroy(igac_family* family);

IGAC_API const char* igac_family_label(const igac_family* family);
IGAC_API size_t igac_family_param_count(const igac_family* family);
IGAC_API size_t igac_family_micro_count(const igac_family* family);
IGAC_API const char* igac_family_param_name(const igac_family* family, size_t index);

IGAC_API igac_status igac_family_density(const igac_family* family, const double* theta, size_t n_theta,
                                         const double* x, size_t n_x, double* out);
/* mean and variance each hold micro_count values */
IGAC_API igac_status igac_family_moments(const igac_family* family, const double* theta, size_t n_theta,
                                         double* mean, double* variance, size_t n_micro);
/* out holds count * micro_count values, one microstate per row */
IGAC_API igac_status igac_family_sample(const igac_family* family, const double* theta, size_t n_theta,
                                        size_t count, uint64_t seed, double* out, size_t out_len);

typedef struct igac_quad_spec {
  int nodes;
  int max_nodes;
  double tol;
} igac_quad_spec;

IGAC_API void igac_quad_spec_default(igac_quad_spec* spec);

/* out holds n_theta * n_theta values */
IGAC_API igac_status igac_fisher_metric_closed_form(const igac_family* family, const double* theta, size_t n_theta,
                                                    double* out);
/* spec may be NULL; error_estimate and nodes may be NULL */
IGAC_API igac_status igac_fisher_metric_quadrature(const igac_family* family, const double* theta, size_t n_theta,
                                                   const igac_quad_spec* spec, double* out, double* error_estimate,
                                                   int* nodes);

/* --------------------------------------------------------------- manifolds */

typedef struct igac_model igac_model;

/* integrable | chaotic | gaussian | euclidean2 | euclidean3 */
IGAC_API igac_status igac_model_create(const char* name, igac_model** out);
IGAC_API igac_status igac_model_from_family(const igac_family* family, igac_model** out);
/* Copy with every closed-form override removed (finite-difference geometry only). */
IGAC_API igac_status igac_model_generic(const igac_model* model, igac_model** out);
IGAC_API void igac_model_destroy(igac_model* model);

IGAC_API const char* igac_model_name(const igac_model* model);
IGAC_API size_t igac_model_dim(const igac_model* model);
IGAC_API const char* igac_model_coord_name(const igac_model* model, size_t index);

IGAC_API igac_status igac_model_metric(const igac_model* model, const double* theta, size_t n, double* out);
IGAC_API igac_status igac_line_element(const igac_model* model, const double* theta, const double* dtheta, size_t n,
                                       double* out);

/* ---------------------------------------------------------------- geometry */

/* fd_step <= 0 selects the default. out holds n^3 values, index (rho*n + mu)*n + nu */
IGAC_API igac_status igac_christoffel(const igac_model* model, const double* theta, size_t n, double fd_step,
                                      double* out);

typedef struct igac_curvature_options {
  double fd_step;
  int use_overrides;
  int richardson_check;
  double richardson_tol;
} igac_curvature_options;

IGAC_API void igac_curvature_options_default(igac_curvature_options* options);

typedef struct igac_curvature_summary {
  double scalar;
  double scalar_half_step;
  double richardson_delta;
  double sectional_sum;
} igac_curvature_summary;

/* options may be NULL. riemann (n^4), ricci (n^2) and sectional (n^2) may be NULL. */
IGAC_API igac_status igac_curvature(const igac_model* model, const double* theta, size_t n,
                                    const igac_curvature_options* options, igac_curvature_summary* summary,
                                    double* riemann, double* ricci, double* sectional);

typedef enum igac_scalar_sign {
  IGAC_SIGN_NEGATIVE = 0,
  IGAC_SIGN_NON_NEGATIVE = 1,
  IGAC_SIGN_MIXED = 2
} igac_scalar_sign;

IGAC_API const char* igac_scalar_sign_name(igac_scalar_sign sign);
/* points holds count rows of n coordinates */
IGAC_API igac_status igac_scalar_sign_classification(const igac_model* model, const double* points, size_t count,
                                                     size_t n, const igac_curvature_options* options,
                                                     double zero_tol, igac_scalar_sign* sign, double* min_scalar,
                                                     double* max_scalar);

/* ---------------------------------------------------------------- dynamics */

typedef struct igac_integrate_options {
  double tol;
  double max_step;     /* 0 selects tau_max / 1000 */
  double boundary_tol;
  double fd_step;
} igac_integrate_options;

IGAC_API void igac_integrate_options_default(igac_integrate_options* options);

typedef struct igac_trajectory igac_trajectory;

IGAC_API igac_status igac_integrate_geodesic(const igac_model* model, const double* theta0, const double* v0,
                                             size_t n, double tau_max, const igac_integrate_options* options,
                                             igac_trajectory** out);
IGAC_API igac_status igac_integrate_jacobi(const igac_model* model, const igac_trajectory* geodesic,
                                           const double* j0, const double* dj0, size_t n,
                                           const igac_integrate_options* options, igac_trajectory** out);
IGAC_API void igac_trajectory_destroy(igac_trajectory* traj);

IGAC_API size_t igac_trajectory_size(const igac_trajectory* traj);
IGAC_API size_t igac_trajectory_dim(const igac_trajectory* traj);
IGAC_API int igac_trajectory_has_jacobi(const igac_trajectory* traj);
IGAC_API int igac_trajectory_hit_boundary(const igac_trajectory* traj);
IGAC_API const char* igac_trajectory_boundary_coordinate(const igac_trajectory* traj);

/* tau, speed, jacobi_norm: size values. coords, velocity: size * dim values. */
IGAC_API igac_status igac_trajectory_tau(const igac_trajectory* traj, double* out, size_t len);
IGAC_API igac_status igac_trajectory_coords(const igac_trajectory* traj, double* out, size_t len);
IGAC_API igac_status igac_trajectory_velocity(const igac_trajectory* traj, double* out, size_t len);
IGAC_API igac_status igac_trajectory_speed(const igac_trajectory* traj, double* out, size_t len);
IGAC_API igac_status igac_trajectory_jacobi_norm(const igac_trajectory* traj, double* out, size_t len);

IGAC_API igac_status igac_estimate_lambda_j(const igac_trajectory* traj, double w0, double w1, double* lambda_j,
                                            double* r2);

/* --------------------------------------------------------------------- IGE */

typedef struct igac_ige_series igac_ige_series;

IGAC_API igac_status igac_volume_series(const igac_model* model, const igac_trajectory* traj, int quad_nodes,
                                        igac_ige_series** out);
IGAC_API igac_status igac_ige_series_from_entropy(const double* tau, const double* entropy, size_t n,
                                                  igac_ige_series** out);
IGAC_API void igac_ige_series_destroy(igac_ige_series* series);

IGAC_API size_t igac_ige_series_size(const igac_ige_series* series);
IGAC_API int igac_ige_series_is_degenerate(const igac_ige_series* series);
IGAC_API igac_status igac_ige_series_tau(const igac_ige_series* series, double* out, size_t len);
IGAC_API igac_status igac_ige_series_volume(const igac_ige_series* series, double* out, size_t len);
IGAC_API igac_status igac_ige_series_entropy(const igac_ige_series* series, double* out, size_t len);

typedef enum igac_growth_model {
  IGAC_GROWTH_LOGARITHMIC = 0,
  IGAC_GROWTH_LINEAR = 1
} igac_growth_model;

IGAC_API const char* igac_growth_model_name(igac_growth_model model);

typedef struct igac_fit_report {
  igac_growth_model selected;
  double c_ig;       /* S ~ c_ig log(tau) + c_ig_prime */
  double c_ig_prime;
  double k_ig;       /* S ~ k_ig tau + log_c_ig */
  double log_c_ig;
  double r2_log;
  double r2_linear;
  double aic_log;
  double aic_linear;
  double window_lo;
  double window_hi;
  size_t samples;
} igac_fit_report;

IGAC_API igac_status igac_fit_growth(const igac_ige_series* series, double w0, double w1, igac_fit_report* out);

typedef struct igac_rate_comparison {
  double k_ig;
  double lambda_j;
  double ratio;
  double abs_diff;
  int consistent;
} igac_rate_comparison;

IGAC_API igac_status igac_compare_rates(const igac_fit_report* fit, double lambda_j, igac_rate_comparison* out);

/* -------------------------------------------------------------- spin chain */

typedef enum igac_sector {
  IGAC_SECTOR_FULL = 0,
  IGAC_SECTOR_REFLECTION_EVEN = 1,
  IGAC_SECTOR_REFLECTION_ODD = 2
} igac_sector;

IGAC_API const char* igac_sector_name(igac_sector sector);

typedef struct igac_chain_spec {
  int n;
  double hx;
  double hy;
  igac_sector sector;
} igac_chain_spec;

/* Spin-count ceiling: 14 unless IGAC_MAX_N overrides it. */
IGAC_API int igac_max_spins(void);
IGAC_API igac_status igac_chain_dimension(const igac_chain_spec* spec, size_t* out);
/* out holds 2 * dim * dim values */
IGAC_API igac_status igac_build_hamiltonian(const igac_chain_spec* spec, double* out, size_t len);
/* h holds 2 * dim * dim values; eigenvalues receives dim values, ascending */
IGAC_API igac_status igac_diagonalize(const double* h, size_t dim, double* eigenvalues);

typedef struct igac_unfold_options {
  int poly_degree;
  double trim_fraction;
  double max_condition;
} igac_unfold_options;

IGAC_API void igac_unfold_options_default(igac_unfold_options* options);
/* Writes up to capacity spacings; *count receives the number produced. */
IGAC_API igac_status igac_unfold(const double* eigenvalues, size_t n, const igac_unfold_options* options,
                                 double* out, size_t capacity, size_t* count);

typedef enum igac_verdict {
  IGAC_VERDICT_POISSON_LIKE = 0,
  IGAC_VERDICT_WIGNER_LIKE = 1,
  IGAC_VERDICT_INCONCLUSIVE = 2
} igac_verdict;

IGAC_API const char* igac_verdict_name(igac_verdict verdict);

typedef struct igac_lsd_options {
  double margin;
  double max_ks;
} igac_lsd_options;

IGAC_API void igac_lsd_options_default(igac_lsd_options* options);

typedef struct igac_lsd_result {
  double ks_poisson;
  double ks_wigner;
  igac_verdict verdict;
} igac_lsd_result;

IGAC_API igac_status igac_lsd_verdict(const double* spacings, size_t n, const igac_lsd_options* options,
                                      igac_lsd_result* out);
/* edges: bins + 1 values; density, poisson_ref, wigner_ref: bins values (each may be NULL) */
IGAC_API igac_status igac_spacing_histogram(const double* spacings, size_t n, int bins, double* edges,
                                            double* density, double* poisson_ref, double* wigner_ref);

typedef struct igac_spectrum igac_spectrum;

/* Build, diagonalize, unfold and classify in one call; options may be NULL. */
IGAC_API igac_status igac_analyze_chain(const igac_chain_spec* spec, const igac_unfold_options* unfold_options,
                                        const igac_lsd_options* lsd_options, igac_spectrum** out);
IGAC_API void igac_spectrum_destroy(igac_spectrum* spectrum);
IGAC_API size_t igac_spectrum_eigenvalue_count(const igac_spectrum* spectrum);
IGAC_API size_t igac_spectrum_spacing_count(const igac_spectrum* spectrum);
IGAC_API igac_status igac_spectrum_eigenvalues(const igac_spectrum* spectrum, double* out, size_t len);
IGAC_API igac_status igac_spectrum_spacings(const igac_spectrum* spectrum, double* out, size_t len);
IGAC_API igac_status igac_spectrum_lsd(const igac_spectrum* spectrum, igac_lsd_result* out);

#ifdef __cplusplus
}
#endif

#endif /* IGAC_IGAC_H */
