/* fracred — fractional-order model reduction and synthesis for lumped
 * mass-spring-damper chains.
 *
 * C interface of the shared library. All objects are opaque handles owned
 * by the library and released with the matching *_free function. Every
 * fallible call returns a fracred_status; on failure the handle/output
 * arguments are left untouched and fracred_last_error() describes what
 * went wrong (thread-local). DOF indices are 1-based throughout.
 */

#ifndef FRACRED_FRACRED_H
#define FRACRED_FRACRED_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fracred_status {
  FRACRED_OK = 0,
  FRACRED_ERR_INVALID_ARGUMENT = 1,
  FRACRED_ERR_LENGTH_MISMATCH = 2,
  FRACRED_ERR_NONPOSITIVE_PARAMETER = 3,
  FRACRED_ERR_INDEX_OUT_OF_RANGE = 4,
  FRACRED_ERR_SINGULAR_SYSTEM = 5,
  FRACRED_ERR_POLE_HIT = 6,
  FRACRED_ERR_ANTIRESONANCE = 7,
  FRACRED_ERR_DEGENERATE_ARGUMENT = 8,
  FRACRED_ERR_NO_CONVERGENCE = 9,
  FRACRED_ERR_PARTITION_MISMATCH = 10,
  FRACRED_ERR_GRID_MISMATCH = 11,
  FRACRED_ERR_STEP_TOO_LARGE = 12,
  FRACRED_ERR_RANK_DEFICIENT = 13,
  FRACRED_ERR_UNBOUNDED_RESPONSE = 14,
  FRACRED_ERR_ILL_CONDITIONED_FIT = 15,
  FRACRED_ERR_VALIDATION = 16,
  FRACRED_ERR_PARSE = 17,
  FRACRED_ERR_IO = 18,
  FRACRED_ERR_DOMAIN = 19,
  FRACRED_ERR_INTERNAL = 20
} fracred_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* fracred_last_error(void);

const char* fracred_version(void);

/* ---- opaque handles ---------------------------------------------------- */

typedef struct fracred_chain fracred_chain;
typedef struct fracred_grid fracred_grid;
typedef struct fracred_reduction fracred_reduction;
typedef struct fracred_bode fracred_bode;
typedef struct fracred_identified fracred_identified;
typedef struct fracred_trajectory fracred_trajectory;

/* ---- solver options ---------------------------------------------------- */

typedef struct fracred_solver_options {
  double tol;       /* residual inf-norm tolerance            */
  int max_iter;     /* Newton iteration cap                   */
  double fd_step;   /* relative central-difference step       */
} fracred_solver_options;

/* Defaults: tol 1e-12, max_iter 100, fd_step 1e-7. */
void fracred_solver_options_default(fracred_solver_options* options);

/* ---- integer chain models ---------------------------------------------- */

/* masses/stiffnesses > 0, dampers >= 0, all of length count >= 1. */
fracred_status fracred_chain_create(const double* masses,
                                    const double* stiffnesses,
                                    const double* dampers, size_t count,
                                    fracred_chain** out);
void fracred_chain_free(fracred_chain* chain);

size_t fracred_chain_size(const fracred_chain* chain);

/* Ascending undamped natural frequencies; out must hold chain size. */
fracred_status fracred_chain_natural_frequencies(const fracred_chain* chain,
                                                 double* out);

/* H(i omega) between force_dof and output_dof. */
fracred_status fracred_chain_tf(const fracred_chain* chain, int force_dof,
                                int output_dof, double omega, double* re,
                                double* im);

/* m_bar = total mass, k_bar = series-equivalent stiffness. */
fracred_status fracred_chain_lump(const fracred_chain* chain, double* m_bar,
                                  double* k_bar);

/* ---- frequency grids ---------------------------------------------------- */

/* Strictly increasing positive omegas. */
fracred_status fracred_grid_create(const double* omegas, size_t count,
                                   fracred_grid** out);
/* count >= 1; lo == hi only when count == 1. */
fracred_status fracred_grid_logspace(double lo, double hi, size_t count,
                                     fracred_grid** out);
fracred_status fracred_grid_linspace(double lo, double hi, size_t count,
                                     fracred_grid** out);
void fracred_grid_free(fracred_grid* grid);
size_t fracred_grid_size(const fracred_grid* grid);
fracred_status fracred_grid_get(const fracred_grid* grid, size_t index,
                                double* omega);

/* ---- fractional model evaluation ---------------------------------------- */

/* gamma = (i omega)^(a + i b) on the principal branch. */
fracred_status fracred_gamma(double omega, double alpha_re, double alpha_im,
                             double* re, double* im);

/* Complex value, magnitude and phase of the F-SDOF transfer function. Any
 * output pointer may be NULL. */
fracred_status fracred_fsdof_response(double omega, double m_bar, double k_bar,
                                      double alpha_re, double alpha_im,
                                      double* g_re, double* g_im,
                                      double* magnitude, double* phase);

/* F-NDOF transfer functions G_1..G_N for unit force on forced_dof.
 * betas holds (count-1) interleaved re/im pairs; out holds count pairs. */
fracred_status fracred_fndof_tf(double omega, const double* masses,
                                size_t count, double k_total,
                                const double* betas, double alpha_re,
                                double alpha_im, int forced_dof, double* out);

/* x(t) = f0 * magnitude * sin(omega t + phase). */
double fracred_steady_state(double t, double omega, double f0,
                            double magnitude, double phase);

/* ---- reduction ---------------------------------------------------------- */

/* Exact I-SDOF -> F-SDOF order at one frequency. */
fracred_status fracred_alpha_isdof(double m, double c, double k, double omega,
                                   double* re, double* im);

/* Order reproducing an arbitrary transfer-function value H. */
fracred_status fracred_alpha_from_tf(double h_re, double h_im, double m_bar,
                                     double k_bar, double omega, double* re,
                                     double* im);

/* Closed-form F-SDOF sweep over a grid. */
fracred_status fracred_sweep_fsdof(const fracred_chain* chain, int force_dof,
                                   int active_dof, const fracred_grid* grid,
                                   int parallel, fracred_reduction** out);

/* Newton/continuation reduction to N = n_active fractional DOFs.
 * partition lists the 1-based inclusive end index of each mass block
 * (n_active entries, last equal to the chain size). options may be NULL. */
fracred_status fracred_reduce_to_fndof(const fracred_chain* chain,
                                       int force_dof, const int* active_dofs,
                                       size_t n_active, const int* partition,
                                       const fracred_grid* grid,
                                       const fracred_solver_options* options,
                                       fracred_reduction** out);

void fracred_reduction_free(fracred_reduction* reduction);
size_t fracred_reduction_size(const fracred_reduction* reduction);
size_t fracred_reduction_n_betas(const fracred_reduction* reduction);
fracred_status fracred_reduction_point(const fracred_reduction* reduction,
                                       size_t index, double* omega,
                                       double* alpha_re, double* alpha_im,
                                       double* residual, int* converged);
/* beta_index in [0, n_betas). */
fracred_status fracred_reduction_beta(const fracred_reduction* reduction,
                                      size_t index, size_t beta_index,
                                      double* re, double* im);
fracred_status fracred_reduction_write_csv(const fracred_reduction* reduction,
                                           const char* path);

/* ---- Bode datasets and identification ----------------------------------- */

fracred_status fracred_bode_create(const double* omegas,
                                   const double* magnitudes,
                                   const double* phases, size_t count,
                                   fracred_bode** out);
/* Samples an integer chain over a grid. */
fracred_status fracred_bode_from_chain(const fracred_chain* chain,
                                       int force_dof, int output_dof,
                                       const fracred_grid* grid, int parallel,
                                       fracred_bode** out);
fracred_status fracred_bode_read_csv(const char* path, fracred_bode** out);
fracred_status fracred_bode_write_csv(const fracred_bode* bode,
                                      const char* path);
void fracred_bode_free(fracred_bode* bode);
size_t fracred_bode_size(const fracred_bode* bode);
fracred_status fracred_bode_point(const fracred_bode* bode, size_t index,
                                  double* omega, double* magnitude,
                                  double* phase);

/* F-SDOF synthesis; pass k_bar <= 0 to estimate it from the static limit. */
fracred_status fracred_identify_fsdof(const fracred_bode* data, double m_bar,
                                      double k_bar,
                                      const fracred_solver_options* options,
                                      fracred_identified** out);

/* F-NDOF synthesis from n datasets sharing one grid; masses has n entries. */
fracred_status fracred_identify_fndof(const fracred_bode* const* datasets,
                                      size_t n, const double* masses,
                                      double k_bar,
                                      const fracred_solver_options* options,
                                      fracred_identified** out);

void fracred_identified_free(fracred_identified* identified);
size_t fracred_identified_size(const fracred_identified* identified);
size_t fracred_identified_n_betas(const fracred_identified* identified);
fracred_status fracred_identified_point(const fracred_identified* identified,
                                        size_t index, double* omega,
                                        double* alpha_re, double* alpha_im,
                                        double* residual, int* converged);
fracred_status fracred_identified_beta(const fracred_identified* identified,
                                       size_t index, size_t beta_index,
                                       double* re, double* im);
/* k_bar actually used, and whether it was estimated. */
fracred_status fracred_identified_kbar(const fracred_identified* identified,
                                       double* k_bar, int* estimated);
double fracred_identified_max_error(const fracred_identified* identified);
fracred_status fracred_identified_write_csv(
    const fracred_identified* identified, const char* path);

/* Single-peak second-order fit (magnitude+phase at omega_fit plus the
 * quasi-static magnitude). */
fracred_status fracred_fit_integer_peak(const fracred_bode* data,
                                        double omega_fit, double* m, double* c,
                                        double* k);

/* ---- time-domain oracle -------------------------------------------------- */

fracred_status fracred_integrate_chain(const fracred_chain* chain,
                                       int force_dof, double f0, double omega,
                                       int periods, int steps_per_period,
                                       fracred_trajectory** out);
void fracred_trajectory_free(fracred_trajectory* trajectory);
size_t fracred_trajectory_samples(const fracred_trajectory* trajectory);
size_t fracred_trajectory_dofs(const fracred_trajectory* trajectory);
fracred_status fracred_trajectory_sample(const fracred_trajectory* trajectory,
                                         size_t index, double* t,
                                         double* displacements,
                                         double* velocities);
fracred_status fracred_trajectory_write_csv(
    const fracred_trajectory* trajectory, const char* path);

/* Steady-state amplitude/phase of one DOF: integrates `periods` cycles and
 * least-squares fits a sine to the trailing `tail_periods`. fit_residual
 * (optional) reports the rms misfit of the fit. */
fracred_status fracred_chain_steady_oracle(const fracred_chain* chain,
                                           int force_dof, int output_dof,
                                           double f0, double omega,
                                           int periods, int steps_per_period,
                                           int tail_periods, double* amplitude,
                                           double* phase,
                                           double* fit_residual);

/* Smallest steps_per_period accepted by the integrator at this frequency. */
fracred_status fracred_min_steps_per_period(const fracred_chain* chain,
                                            double omega, int* out);

/* Closed-form damped-oscillator steady state: X, phi with
 * x = X sin(omega t - phi). */
fracred_status fracred_analytic_sdof_steady(double m, double c, double k,
                                            double f0, double omega, double* x,
                                            double* phi);

/* Least-squares sine fit of samples (t[i], x[i]): amplitude and phase of
 * x ~ A sin(omega t + phase). */
fracred_status fracred_fit_sine(const double* t, const double* x, size_t count,
                                double omega, double* amplitude, double* phase,
                                double* fit_residual);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FRACRED_FRACRED_H */
