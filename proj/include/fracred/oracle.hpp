#pragma once

#include <iosfwd>
#include <vector>

#include "fracred/chain_model.hpp"

namespace fracred {

/// Fixed-step trajectory; states are sampled as [x1..xM, v1..vM] per row.
struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> states;

  std::size_t dofs() const {
    return states.empty() ? 0 : states.front().size() / 2;
  }
};

/// Classical RK4 on the first-order chain system under f0 sin(omega t),
/// zero initial conditions, dt = (2 pi / omega) / steps_per_period.
/// Throws step_too_large when dt exceeds 0.1 / (Gershgorin bound of A).
Trajectory integrate_chain(const ChainModel& model, int force_dof, double f0,
                           double omega, int periods, int steps_per_period);

/// Same integrator from an arbitrary initial state [x1, v1, x2, v2, ...].
Trajectory integrate_chain_from(const ChainModel& model, int force_dof,
                                double f0, double omega, int periods,
                                int steps_per_period,
                                std::vector<double> initial_state);

/// Smallest steps_per_period passing the integrator's stability guard.
int min_steps_per_period(const ChainModel& model, double omega);

struct SineFit {
  double amplitude = 0.0;
  double phase = 0.0;     // x ~ amplitude * sin(omega t + phase)
  double offset = 0.0;
  double residual = 0.0;  // rms misfit
};

/// Least squares on {sin wt, cos wt, 1}. Needs at least one full period.
SineFit fit_sine(const std::vector<double>& times,
                 const std::vector<double>& values, double omega);

/// Steady state of m x'' + c x' + k x = f0 sin(omega t):
/// x = X sin(omega t - phi), X = f0 / sqrt((k - m w^2)^2 + (c w)^2).
std::pair<double, double> analytic_sdof_steady(double m, double c, double k,
                                               double f0, double omega);

/// CSV header t,x1,...,xM,v1,...,vM.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace fracred
