#include "fracred/oracle.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "csv_util.hpp"

namespace fracred {

namespace {

// Spectral-radius bound of A via Gershgorin row sums.
double gershgorin_bound(const StateSpace& ss) {
  double bound = 0.0;
  for (std::size_t i = 0; i < ss.dim; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < ss.dim; ++j) row += std::abs(ss.A(i, j));
    bound = std::max(bound, row);
  }
  return bound;
}

void derivative(const StateSpace& ss, const std::vector<double>& x,
                double force, std::vector<double>& dx) {
  const std::size_t n = ss.dim;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = ss.b[i] * force;
    const double* row = &ss.a[i * n];
    for (std::size_t j = 0; j < n; ++j) sum += row[j] * x[j];
    dx[i] = sum;
  }
}

}  // namespace

int min_steps_per_period(const ChainModel& model, double omega) {
  const StateSpace ss = assemble_state_space(model, 1);
  const double bound = gershgorin_bound(ss);
  const double period = 2.0 * M_PI / omega;
  if (bound <= 0.0) return 1;
  return static_cast<int>(std::ceil(period * bound / 0.1)) + 1;
}

Trajectory integrate_chain_from(const ChainModel& model, int force_dof,
                                double f0, double omega, int periods,
                                int steps_per_period,
                                std::vector<double> initial_state) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    raise(ErrorCode::validation, "integrate_chain: omega must be positive");
  }
  if (periods < 1 || steps_per_period < 1) {
    raise(ErrorCode::validation,
          "integrate_chain: periods and steps_per_period must be >= 1");
  }
  const StateSpace ss = assemble_state_space(model, force_dof);
  const std::size_t n = ss.dim;
  if (initial_state.size() != n) {
    raise(ErrorCode::length_mismatch,
          "integrate_chain: initial state must have 2M entries");
  }

  const double dt = (2.0 * M_PI / omega) / steps_per_period;
  const double bound = gershgorin_bound(ss);
  if (bound > 0.0 && dt > 0.1 / bound) {
    raise(ErrorCode::step_too_large,
          "integrate_chain: dt = " + std::to_string(dt) +
              " exceeds stability guard " + std::to_string(0.1 / bound) +
              "; increase steps_per_period");
  }

  const std::size_t m = model.size();
  const std::size_t steps =
      static_cast<std::size_t>(periods) *
      static_cast<std::size_t>(steps_per_period);

  Trajectory traj;
  traj.dt = dt;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);

  std::vector<double> x = std::move(initial_state);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

  auto sample = [&](double t, const std::vector<double>& state) {
    std::vector<double> row(n);
    for (std::size_t i = 0; i < m; ++i) {
      row[i] = state[2 * i];          // displacements
      row[m + i] = state[2 * i + 1];  // velocities
    }
    traj.times.push_back(t);
    traj.states.push_back(std::move(row));
  };

  sample(0.0, x);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    derivative(ss, x, f0 * std::sin(omega * t), k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    derivative(ss, tmp, f0 * std::sin(omega * (t + 0.5 * dt)), k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    derivative(ss, tmp, f0 * std::sin(omega * (t + 0.5 * dt)), k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    derivative(ss, tmp, f0 * std::sin(omega * (t + dt)), k4);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    sample(static_cast<double>(step + 1) * dt, x);
  }
  return traj;
}

Trajectory integrate_chain(const ChainModel& model, int force_dof, double f0,
                           double omega, int periods, int steps_per_period) {
  return integrate_chain_from(model, force_dof, f0, omega, periods,
                              steps_per_period,
                              std::vector<double>(2 * model.size(), 0.0));
}

SineFit fit_sine(const std::vector<double>& times,
                 const std::vector<double>& values, double omega) {
  if (times.size() != values.size()) {
    raise(ErrorCode::length_mismatch, "fit_sine: times/values size mismatch");
  }
  if (times.size() < 3) {
    raise(ErrorCode::rank_deficient, "fit_sine: need at least 3 samples");
  }
  const double span = times.back() - times.front();
  if (span < 2.0 * M_PI / omega) {
    raise(ErrorCode::rank_deficient,
          "fit_sine: samples span less than one period");
  }

  // normal equations for x ~ A sin(wt) + B cos(wt) + C
  double s_ss = 0, s_sc = 0, s_cc = 0, s_s = 0, s_c = 0;
  double r_s = 0, r_c = 0, r_1 = 0;
  const std::size_t n = times.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sin(omega * times[i]);
    const double c = std::cos(omega * times[i]);
    s_ss += s * s;
    s_sc += s * c;
    s_cc += c * c;
    s_s += s;
    s_c += c;
    r_s += s * values[i];
    r_c += c * values[i];
    r_1 += values[i];
  }
  const double nn = static_cast<double>(n);
  const std::vector<double> lhs = {s_ss, s_sc, s_s,  //
                                   s_sc, s_cc, s_c,  //
                                   s_s,  s_c,  nn};
  std::vector<double> coef;
  try {
    coef = lu_solve_real(lhs, {r_s, r_c, r_1});
  } catch (const Error&) {
    raise(ErrorCode::rank_deficient, "fit_sine: normal equations singular");
  }

  SineFit fit;
  fit.amplitude = std::hypot(coef[0], coef[1]);
  fit.phase = std::atan2(coef[1], coef[0]);
  fit.offset = coef[2];
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double model = coef[0] * std::sin(omega * times[i]) +
                         coef[1] * std::cos(omega * times[i]) + coef[2];
    ss_res += (values[i] - model) * (values[i] - model);
  }
  fit.residual = std::sqrt(ss_res / nn);
  return fit;
}

std::pair<double, double> analytic_sdof_steady(double m, double c, double k,
                                               double f0, double omega) {
  const double elastic = k - m * omega * omega;
  const double viscous = c * omega;
  if (elastic == 0.0 && viscous == 0.0) {
    raise(ErrorCode::unbounded_response,
          "analytic_sdof_steady: undamped system driven at resonance");
  }
  const double x = f0 / std::hypot(elastic, viscous);
  const double phi = std::atan2(viscous, elastic);
  return {x, phi};
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  const std::size_t m = trajectory.dofs();
  out << "t";
  for (std::size_t i = 1; i <= m; ++i) out << ",x" << i;
  for (std::size_t i = 1; i <= m; ++i) out << ",v" << i;
  out << "\n";
  for (std::size_t row = 0; row < trajectory.times.size(); ++row) {
    out << detail::g17(trajectory.times[row]);
    for (double v : trajectory.states[row]) out << "," << detail::g17(v);
    out << "\n";
  }
}

}  // namespace fracred
