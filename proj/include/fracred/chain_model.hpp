#pragma once

#include <cstddef>
#include <vector>

#include "fracred/numerics.hpp"

namespace fracred {

/// Grounded mass-spring-damper chain. Spring/damper pair i (1-based)
/// connects mass i to mass i+1; pair M connects mass M to ground.
/// External force acts on a single DOF. All DOF indices are 1-based.
struct ChainModel {
  std::vector<double> masses;
  std::vector<double> stiffnesses;
  std::vector<double> dampers;

  std::size_t size() const noexcept { return masses.size(); }
};

/// Validates the three parameter lists and returns the model.
ChainModel build_chain(std::vector<double> masses,
                       std::vector<double> stiffnesses,
                       std::vector<double> dampers);

/// First-order form dx/dt = A x + B u, y = C x + D u with the state
/// interleaved as [x1, v1, x2, v2, ...].
struct StateSpace {
  std::size_t dim = 0;  // 2M
  std::vector<double> a;  // row-major dim x dim
  std::vector<double> b;
  std::vector<double> c;
  double d = 0.0;

  double& A(std::size_t i, std::size_t j) { return a[i * dim + j]; }
  double A(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
};

StateSpace assemble_state_space(const ChainModel& model, int force_dof);

/// M x M stiffness (or damping) matrix implied by the chain topology.
std::vector<double> stiffness_matrix(const ChainModel& model);
std::vector<double> damping_matrix(const ChainModel& model);

/// H(s) = C (sI - A)^{-1} B + D at arbitrary complex s.
Complex tf_at_s(const ChainModel& model, int force_dof, int output_dof,
                Complex s);

/// H(i omega); throws singular_system at an exact undamped resonance.
Complex integer_tf(const ChainModel& model, int force_dof, int output_dof,
                   double omega);

/// The M positive roots of det(K - w^2 M) = 0, ascending.
std::vector<double> natural_frequencies(const ChainModel& model);

/// Strictly increasing positive frequencies (rad/s).
struct FrequencyGrid {
  std::vector<double> omegas;

  std::size_t size() const noexcept { return omegas.size(); }

  static FrequencyGrid from(std::vector<double> omegas);
  static FrequencyGrid log_spaced(double lo, double hi, std::size_t count);
  static FrequencyGrid linear(double lo, double hi, std::size_t count);
};

}  // namespace fracred
