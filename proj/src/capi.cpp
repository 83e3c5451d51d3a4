#include "fracred/fracred.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "fracred/chain_model.hpp"
#include "fracred/frac_model.hpp"
#include "fracred/oracle.hpp"
#include "fracred/reduction.hpp"
#include "fracred/sysid.hpp"

using fracred::ChainModel;
using fracred::Complex;
using fracred::Error;
using fracred::ErrorCode;
using fracred::FrequencyGrid;

struct fracred_chain {
  ChainModel model;
};
struct fracred_grid {
  FrequencyGrid grid;
};
struct fracred_reduction {
  fracred::ReductionResult result;
};
struct fracred_bode {
  fracred::BodeDataset data;
};
struct fracred_identified {
  fracred::IdentifiedModel model;
};
struct fracred_trajectory {
  fracred::Trajectory trajectory;
};

namespace {

thread_local std::string t_last_error = "no error";

fracred_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::length_mismatch: return FRACRED_ERR_LENGTH_MISMATCH;
    case ErrorCode::nonpositive_parameter:
      return FRACRED_ERR_NONPOSITIVE_PARAMETER;
    case ErrorCode::index_out_of_range: return FRACRED_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::singular_system: return FRACRED_ERR_SINGULAR_SYSTEM;
    case ErrorCode::pole_hit: return FRACRED_ERR_POLE_HIT;
    case ErrorCode::antiresonance: return FRACRED_ERR_ANTIRESONANCE;
    case ErrorCode::degenerate_argument:
      return FRACRED_ERR_DEGENERATE_ARGUMENT;
    case ErrorCode::no_convergence: return FRACRED_ERR_NO_CONVERGENCE;
    case ErrorCode::partition_mismatch: return FRACRED_ERR_PARTITION_MISMATCH;
    case ErrorCode::grid_mismatch: return FRACRED_ERR_GRID_MISMATCH;
    case ErrorCode::step_too_large: return FRACRED_ERR_STEP_TOO_LARGE;
    case ErrorCode::rank_deficient: return FRACRED_ERR_RANK_DEFICIENT;
    case ErrorCode::unbounded_response: return FRACRED_ERR_UNBOUNDED_RESPONSE;
    case ErrorCode::ill_conditioned_fit:
      return FRACRED_ERR_ILL_CONDITIONED_FIT;
    case ErrorCode::validation: return FRACRED_ERR_VALIDATION;
    case ErrorCode::parse: return FRACRED_ERR_PARSE;
    case ErrorCode::io: return FRACRED_ERR_IO;
    case ErrorCode::domain: return FRACRED_ERR_DOMAIN;
  }
  return FRACRED_ERR_INTERNAL;
}

fracred_status fail(fracred_status status, const char* message) {
  t_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
fracred_status guarded(Fn&& fn) {
  try {
    fn();
    return FRACRED_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return FRACRED_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return FRACRED_ERR_INTERNAL;
  }
}

fracred::NewtonConfig newton_config(const fracred_solver_options* options) {
  fracred::NewtonConfig config;
  if (options) {
    if (options->tol > 0.0) config.tol = options->tol;
    if (options->max_iter > 0) config.max_iter = options->max_iter;
    if (options->fd_step > 0.0) config.fd_step = options->fd_step;
  }
  return config;
}

void write_file(const char* path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fracred::raise(ErrorCode::io,
                   "cannot open '" + std::string(path) + "' for writing");
  }
  out << contents;
  if (!out) {
    fracred::raise(ErrorCode::io, "write failed: " + std::string(path));
  }
}

}  // namespace

extern "C" {

const char* fracred_last_error(void) { return t_last_error.c_str(); }

const char* fracred_version(void) { return "fracred 1.0.0"; }

void fracred_solver_options_default(fracred_solver_options* options) {
  if (!options) return;
  options->tol = 1e-12;
  options->max_iter = 100;
  options->fd_step = 1e-7;
}

/* ---- chain ---- */

fracred_status fracred_chain_create(const double* masses,
                                    const double* stiffnesses,
                                    const double* dampers, size_t count,
                                    fracred_chain** out) {
  if (!masses || !stiffnesses || !dampers || !out || count == 0) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT,
                "fracred_chain_create: null argument or zero count");
  }
  return guarded([&] {
    ChainModel model = fracred::build_chain(
        std::vector<double>(masses, masses + count),
        std::vector<double>(stiffnesses, stiffnesses + count),
        std::vector<double>(dampers, dampers + count));
    *out = new fracred_chain{std::move(model)};
  });
}

void fracred_chain_free(fracred_chain* chain) { delete chain; }

size_t fracred_chain_size(const fracred_chain* chain) {
  return chain ? chain->model.size() : 0;
}

fracred_status fracred_chain_natural_frequencies(const fracred_chain* chain,
                                                 double* out) {
  if (!chain || !out) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const std::vector<double> wn = fracred::natural_frequencies(chain->model);
    std::memcpy(out, wn.data(), wn.size() * sizeof(double));
  });
}

fracred_status fracred_chain_tf(const fracred_chain* chain, int force_dof,
                                int output_dof, double omega, double* re,
                                double* im) {
  if (!chain || !re || !im) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const Complex h =
        fracred::integer_tf(chain->model, force_dof, output_dof, omega);
    *re = h.real();
    *im = h.imag();
  });
}

fracred_status fracred_chain_lump(const fracred_chain* chain, double* m_bar,
                                  double* k_bar) {
  if (!chain || !m_bar || !k_bar) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  const fracred::LumpedParameters lumped =
      fracred::lump_parameters(chain->model);
  *m_bar = lumped.m_bar;
  *k_bar = lumped.k_bar;
  return FRACRED_OK;
}

/* ---- grid ---- */

fracred_status fracred_grid_create(const double* omegas, size_t count,
                                   fracred_grid** out) {
  if (!omegas || !out || count == 0) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument or zero count");
  }
  return guarded([&] {
    *out = new fracred_grid{
        FrequencyGrid::from(std::vector<double>(omegas, omegas + count))};
  });
}

fracred_status fracred_grid_logspace(double lo, double hi, size_t count,
                                     fracred_grid** out) {
  if (!out) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null out");
  return guarded(
      [&] { *out = new fracred_grid{FrequencyGrid::log_spaced(lo, hi, count)}; });
}

fracred_status fracred_grid_linspace(double lo, double hi, size_t count,
                                     fracred_grid** out) {
  if (!out) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null out");
  return guarded(
      [&] { *out = new fracred_grid{FrequencyGrid::linear(lo, hi, count)}; });
}

void fracred_grid_free(fracred_grid* grid) { delete grid; }

size_t fracred_grid_size(const fracred_grid* grid) {
  return grid ? grid->grid.size() : 0;
}

fracred_status fracred_grid_get(const fracred_grid* grid, size_t index,
                                double* omega) {
  if (!grid || !omega) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (index >= grid->grid.size()) {
    return fail(FRACRED_ERR_INDEX_OUT_OF_RANGE, "grid index out of range");
  }
  *omega = grid->grid.omegas[index];
  return FRACRED_OK;
}

/* ---- fractional evaluation ---- */

fracred_status fracred_gamma(double omega, double alpha_re, double alpha_im,
                             double* re, double* im) {
  if (!re || !im) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null output");
  return guarded([&] {
    const Complex g = fracred::gamma(omega, {alpha_re, alpha_im});
    *re = g.real();
    *im = g.imag();
  });
}

fracred_status fracred_fsdof_response(double omega, double m_bar, double k_bar,
                                      double alpha_re, double alpha_im,
                                      double* g_re, double* g_im,
                                      double* magnitude, double* phase) {
  return guarded([&] {
    if (!(m_bar > 0.0) || !(k_bar > 0.0)) {
      fracred::raise(ErrorCode::nonpositive_parameter,
                     "fsdof_response: m_bar and k_bar must be positive");
    }
    const fracred::SdofResponse r = fracred::fsdof_response(
        omega, {m_bar, k_bar, {alpha_re, alpha_im}});
    if (g_re) *g_re = r.g.real();
    if (g_im) *g_im = r.g.imag();
    if (magnitude) *magnitude = r.polar.magnitude;
    if (phase) *phase = r.polar.phase;
  });
}

fracred_status fracred_fndof_tf(double omega, const double* masses,
                                size_t count, double k_total,
                                const double* betas, double alpha_re,
                                double alpha_im, int forced_dof, double* out) {
  if (!masses || !out || (count > 1 && !betas)) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    fracred::FractionalNDOF model;
    model.masses.assign(masses, masses + count);
    model.k_total = k_total;
    model.alpha = {alpha_re, alpha_im};
    for (size_t j = 0; j + 1 < count; ++j) {
      model.betas.emplace_back(betas[2 * j], betas[2 * j + 1]);
    }
    const std::vector<Complex> g = fracred::fndof_tf(omega, model, forced_dof);
    for (size_t j = 0; j < count; ++j) {
      out[2 * j] = g[j].real();
      out[2 * j + 1] = g[j].imag();
    }
  });
}

double fracred_steady_state(double t, double omega, double f0,
                            double magnitude, double phase) {
  return fracred::steady_state(t, omega, f0, {magnitude, phase});
}

/* ---- reduction ---- */

fracred_status fracred_alpha_isdof(double m, double c, double k, double omega,
                                   double* re, double* im) {
  if (!re || !im) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null output");
  return guarded([&] {
    const Complex alpha = fracred::alpha_isdof(m, c, k, omega);
    *re = alpha.real();
    *im = alpha.imag();
  });
}

fracred_status fracred_alpha_from_tf(double h_re, double h_im, double m_bar,
                                     double k_bar, double omega, double* re,
                                     double* im) {
  if (!re || !im) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null output");
  return guarded([&] {
    const Complex alpha = fracred::alpha_imdof_to_fsdof(
        Complex(h_re, h_im), {m_bar, k_bar}, omega);
    *re = alpha.real();
    *im = alpha.imag();
  });
}

fracred_status fracred_sweep_fsdof(const fracred_chain* chain, int force_dof,
                                   int active_dof, const fracred_grid* grid,
                                   int parallel, fracred_reduction** out) {
  if (!chain || !grid || !out) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *out = new fracred_reduction{fracred::sweep_fsdof(
        chain->model, force_dof, active_dof, grid->grid, parallel != 0)};
  });
}

fracred_status fracred_reduce_to_fndof(const fracred_chain* chain,
                                       int force_dof, const int* active_dofs,
                                       size_t n_active, const int* partition,
                                       const fracred_grid* grid,
                                       const fracred_solver_options* options,
                                       fracred_reduction** out) {
  if (!chain || !active_dofs || !partition || !grid || !out || n_active == 0) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *out = new fracred_reduction{fracred::reduce_to_fndof(
        chain->model, force_dof,
        std::vector<int>(active_dofs, active_dofs + n_active),
        std::vector<int>(partition, partition + n_active), grid->grid,
        newton_config(options))};
  });
}

void fracred_reduction_free(fracred_reduction* reduction) { delete reduction; }

size_t fracred_reduction_size(const fracred_reduction* reduction) {
  return reduction ? reduction->result.grid.size() : 0;
}

size_t fracred_reduction_n_betas(const fracred_reduction* reduction) {
  return reduction ? reduction->result.n_betas() : 0;
}

fracred_status fracred_reduction_point(const fracred_reduction* reduction,
                                       size_t index, double* omega,
                                       double* alpha_re, double* alpha_im,
                                       double* residual, int* converged) {
  if (!reduction) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null handle");
  const fracred::ReductionResult& r = reduction->result;
  if (index >= r.grid.size()) {
    return fail(FRACRED_ERR_INDEX_OUT_OF_RANGE, "result index out of range");
  }
  if (omega) *omega = r.grid.omegas[index];
  if (alpha_re) *alpha_re = r.alphas[index].real();
  if (alpha_im) *alpha_im = r.alphas[index].imag();
  if (residual) *residual = r.residuals[index];
  if (converged) *converged = r.converged[index] ? 1 : 0;
  return FRACRED_OK;
}

fracred_status fracred_reduction_beta(const fracred_reduction* reduction,
                                      size_t index, size_t beta_index,
                                      double* re, double* im) {
  if (!reduction || !re || !im) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  const fracred::ReductionResult& r = reduction->result;
  if (index >= r.grid.size() || beta_index >= r.n_betas()) {
    return fail(FRACRED_ERR_INDEX_OUT_OF_RANGE, "beta index out of range");
  }
  *re = r.betas[index][beta_index].real();
  *im = r.betas[index][beta_index].imag();
  return FRACRED_OK;
}

fracred_status fracred_reduction_write_csv(const fracred_reduction* reduction,
                                           const char* path) {
  if (!reduction || !path) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    std::ostringstream buffer;
    fracred::write_reduction_csv(reduction->result, buffer);
    write_file(path, buffer.str());
  });
}

/* ---- bode / identification ---- */

fracred_status fracred_bode_create(const double* omegas,
                                   const double* magnitudes,
                                   const double* phases, size_t count,
                                   fracred_bode** out) {
  if (!omegas || !magnitudes || !phases || !out || count == 0) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument or zero count");
  }
  return guarded([&] {
    *out = new fracred_bode{fracred::BodeDataset::from(
        std::vector<double>(omegas, omegas + count),
        std::vector<double>(magnitudes, magnitudes + count),
        std::vector<double>(phases, phases + count))};
  });
}

fracred_status fracred_bode_from_chain(const fracred_chain* chain,
                                       int force_dof, int output_dof,
                                       const fracred_grid* grid, int parallel,
                                       fracred_bode** out) {
  if (!chain || !grid || !out) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *out = new fracred_bode{fracred::bode_from_chain(
        chain->model, force_dof, output_dof, grid->grid, parallel != 0)};
  });
}

fracred_status fracred_bode_read_csv(const char* path, fracred_bode** out) {
  if (!path || !out) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      fracred::raise(ErrorCode::io,
                     "cannot open '" + std::string(path) + "' for reading");
    }
    *out = new fracred_bode{fracred::read_bode_csv(in)};
  });
}

fracred_status fracred_bode_write_csv(const fracred_bode* bode,
                                      const char* path) {
  if (!bode || !path) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ostringstream buffer;
    fracred::write_bode_csv(bode->data, buffer);
    write_file(path, buffer.str());
  });
}

void fracred_bode_free(fracred_bode* bode) { delete bode; }

size_t fracred_bode_size(const fracred_bode* bode) {
  return bode ? bode->data.size() : 0;
}

fracred_status fracred_bode_point(const fracred_bode* bode, size_t index,
                                  double* omega, double* magnitude,
                                  double* phase) {
  if (!bode) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null handle");
  if (index >= bode->data.size()) {
    return fail(FRACRED_ERR_INDEX_OUT_OF_RANGE, "dataset index out of range");
  }
  if (omega) *omega = bode->data.omegas[index];
  if (magnitude) *magnitude = bode->data.magnitudes[index];
  if (phase) *phase = bode->data.phases[index];
  return FRACRED_OK;
}

fracred_status fracred_identify_fsdof(const fracred_bode* data, double m_bar,
                                      double k_bar,
                                      const fracred_solver_options* options,
                                      fracred_identified** out) {
  if (!data || !out) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::optional<double> kb;
    if (k_bar > 0.0) kb = k_bar;
    *out = new fracred_identified{fracred::identify_fsdof(
        data->data, m_bar, kb, newton_config(options))};
  });
}

fracred_status fracred_identify_fndof(const fracred_bode* const* datasets,
                                      size_t n, const double* masses,
                                      double k_bar,
                                      const fracred_solver_options* options,
                                      fracred_identified** out) {
  if (!datasets || !masses || !out || n == 0) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    std::vector<fracred::BodeDataset> sets;
    sets.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (!datasets[i]) {
        fracred::raise(ErrorCode::validation, "null dataset handle");
      }
      sets.push_back(datasets[i]->data);
    }
    *out = new fracred_identified{fracred::identify_fndof(
        sets, std::vector<double>(masses, masses + n), k_bar,
        newton_config(options))};
  });
}

void fracred_identified_free(fracred_identified* identified) {
  delete identified;
}

size_t fracred_identified_size(const fracred_identified* identified) {
  return identified ? identified->model.grid.size() : 0;
}

size_t fracred_identified_n_betas(const fracred_identified* identified) {
  if (!identified || identified->model.betas.empty()) return 0;
  return identified->model.betas.front().size();
}

fracred_status fracred_identified_point(const fracred_identified* identified,
                                        size_t index, double* omega,
                                        double* alpha_re, double* alpha_im,
                                        double* residual, int* converged) {
  if (!identified) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null handle");
  const fracred::IdentifiedModel& m = identified->model;
  if (index >= m.grid.size()) {
    return fail(FRACRED_ERR_INDEX_OUT_OF_RANGE, "result index out of range");
  }
  if (omega) *omega = m.grid.omegas[index];
  if (alpha_re) *alpha_re = m.alphas[index].real();
  if (alpha_im) *alpha_im = m.alphas[index].imag();
  if (residual) *residual = m.fit_residuals[index];
  if (converged) *converged = m.converged[index] ? 1 : 0;
  return FRACRED_OK;
}

fracred_status fracred_identified_beta(const fracred_identified* identified,
                                       size_t index, size_t beta_index,
                                       double* re, double* im) {
  if (!identified || !re || !im) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  const fracred::IdentifiedModel& m = identified->model;
  if (index >= m.grid.size() || m.betas.empty() ||
      beta_index >= m.betas.front().size()) {
    return fail(FRACRED_ERR_INDEX_OUT_OF_RANGE, "beta index out of range");
  }
  *re = m.betas[index][beta_index].real();
  *im = m.betas[index][beta_index].imag();
  return FRACRED_OK;
}

fracred_status fracred_identified_kbar(const fracred_identified* identified,
                                       double* k_bar, int* estimated) {
  if (!identified) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null handle");
  if (k_bar) *k_bar = identified->model.k_bar;
  if (estimated) *estimated = identified->model.k_bar_estimated ? 1 : 0;
  return FRACRED_OK;
}

double fracred_identified_max_error(const fracred_identified* identified) {
  return identified ? identified->model.max_reconstruction_error : 0.0;
}

fracred_status fracred_identified_write_csv(
    const fracred_identified* identified, const char* path) {
  if (!identified || !path) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    std::ostringstream buffer;
    fracred::write_identified_csv(identified->model, buffer);
    write_file(path, buffer.str());
  });
}

fracred_status fracred_fit_integer_peak(const fracred_bode* data,
                                        double omega_fit, double* m, double* c,
                                        double* k) {
  if (!data || !m || !c || !k) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const fracred::SecondOrderFit fit =
        fracred::fit_integer_peak(data->data, omega_fit);
    *m = fit.m;
    *c = fit.c;
    *k = fit.k;
  });
}

/* ---- oracle ---- */

fracred_status fracred_integrate_chain(const fracred_chain* chain,
                                       int force_dof, double f0, double omega,
                                       int periods, int steps_per_period,
                                       fracred_trajectory** out) {
  if (!chain || !out) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new fracred_trajectory{fracred::integrate_chain(
        chain->model, force_dof, f0, omega, periods, steps_per_period)};
  });
}

void fracred_trajectory_free(fracred_trajectory* trajectory) {
  delete trajectory;
}

size_t fracred_trajectory_samples(const fracred_trajectory* trajectory) {
  return trajectory ? trajectory->trajectory.times.size() : 0;
}

size_t fracred_trajectory_dofs(const fracred_trajectory* trajectory) {
  return trajectory ? trajectory->trajectory.dofs() : 0;
}

fracred_status fracred_trajectory_sample(const fracred_trajectory* trajectory,
                                         size_t index, double* t,
                                         double* displacements,
                                         double* velocities) {
  if (!trajectory) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null handle");
  const fracred::Trajectory& traj = trajectory->trajectory;
  if (index >= traj.times.size()) {
    return fail(FRACRED_ERR_INDEX_OUT_OF_RANGE, "sample index out of range");
  }
  const std::size_t m = traj.dofs();
  if (t) *t = traj.times[index];
  if (displacements) {
    std::memcpy(displacements, traj.states[index].data(), m * sizeof(double));
  }
  if (velocities) {
    std::memcpy(velocities, traj.states[index].data() + m, m * sizeof(double));
  }
  return FRACRED_OK;
}

fracred_status fracred_trajectory_write_csv(
    const fracred_trajectory* trajectory, const char* path) {
  if (!trajectory || !path) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    std::ostringstream buffer;
    fracred::write_trajectory_csv(trajectory->trajectory, buffer);
    write_file(path, buffer.str());
  });
}

fracred_status fracred_chain_steady_oracle(const fracred_chain* chain,
                                           int force_dof, int output_dof,
                                           double f0, double omega,
                                           int periods, int steps_per_period,
                                           int tail_periods, double* amplitude,
                                           double* phase,
                                           double* fit_residual) {
  if (!chain || !amplitude || !phase) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    if (output_dof < 1 ||
        static_cast<size_t>(output_dof) > chain->model.size()) {
      fracred::raise(ErrorCode::index_out_of_range,
                     "steady_oracle: output_dof out of range");
    }
    if (tail_periods < 1 || tail_periods >= periods) {
      fracred::raise(ErrorCode::validation,
                     "steady_oracle: need 1 <= tail_periods < periods");
    }
    const fracred::Trajectory traj = fracred::integrate_chain(
        chain->model, force_dof, f0, omega, periods, steps_per_period);
    const std::size_t tail =
        static_cast<std::size_t>(tail_periods) *
            static_cast<std::size_t>(steps_per_period) + 1;
    const std::size_t start = traj.times.size() - tail;
    std::vector<double> t(traj.times.begin() + start, traj.times.end());
    std::vector<double> x(tail);
    for (std::size_t i = 0; i < tail; ++i) {
      x[i] = traj.states[start + i][output_dof - 1];
    }
    const fracred::SineFit fit = fracred::fit_sine(t, x, omega);
    *amplitude = fit.amplitude;
    *phase = fit.phase;
    if (fit_residual) *fit_residual = fit.residual;
  });
}

fracred_status fracred_min_steps_per_period(const fracred_chain* chain,
                                            double omega, int* out) {
  if (!chain || !out) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (!(omega > 0.0)) {
      fracred::raise(ErrorCode::validation, "omega must be positive");
    }
    *out = fracred::min_steps_per_period(chain->model, omega);
  });
}

fracred_status fracred_analytic_sdof_steady(double m, double c, double k,
                                            double f0, double omega, double* x,
                                            double* phi) {
  if (!x || !phi) return fail(FRACRED_ERR_INVALID_ARGUMENT, "null output");
  return guarded([&] {
    const auto [amplitude, lag] =
        fracred::analytic_sdof_steady(m, c, k, f0, omega);
    *x = amplitude;
    *phi = lag;
  });
}

fracred_status fracred_fit_sine(const double* t, const double* x, size_t count,
                                double omega, double* amplitude, double* phase,
                                double* fit_residual) {
  if (!t || !x || !amplitude || !phase) {
    return fail(FRACRED_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const fracred::SineFit fit =
        fracred::fit_sine(std::vector<double>(t, t + count),
                          std::vector<double>(x, x + count), omega);
    *amplitude = fit.amplitude;
    *phase = fit.phase;
    if (fit_residual) *fit_residual = fit.residual;
  });
}

} /* extern "C" */
