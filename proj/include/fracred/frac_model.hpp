#pragma once

#include <utility>
#include <vector>

#include "fracred/numerics.hpp"

namespace fracred {

/// Derivative order alpha = a + ib. No range restriction.
struct ComplexOrder {
  double a = 2.0;
  double b = 0.0;

  Complex value() const noexcept { return {a, b}; }
  static ComplexOrder from(Complex z) { return {z.real(), z.imag()}; }
};

/// Undamped single-DOF model m d^alpha x / dt^alpha + k x = f.
struct FractionalSDOF {
  double m_bar;
  double k_bar;
  ComplexOrder alpha;
};

/// Undamped N-DOF chain sharing one order alpha. Link j carries stiffness
/// betas[j-1] * k_total for j < N; link N carries (1 - sum betas) * k_total,
/// so the link stiffnesses always sum to k_total.
struct FractionalNDOF {
  std::vector<double> masses;        // length N
  double k_total;
  std::vector<Complex> betas;        // length N-1
  ComplexOrder alpha;

  std::size_t size() const noexcept { return masses.size(); }
};

/// Magnitude/phase pair of a transfer-function value. Phase in [-pi, pi].
struct PolarResponse {
  double magnitude;
  double phase;
};

/// gamma = (i omega)^alpha on the principal branch, evaluated as
/// w^a e^{-b pi/2} [cos(a pi/2 + b ln w) + i sin(a pi/2 + b ln w)].
Complex gamma(double omega, ComplexOrder alpha);

/// tau = k/m + Re gamma, xi = Im gamma via the trigonometric expansions.
std::pair<double, double> tau_xi(double omega, ComplexOrder alpha,
                                 double m_bar, double k_bar);

struct SdofResponse {
  Complex g;            // complex transfer-function value
  PolarResponse polar;  // |G| and full-quadrant phase -atan2(xi, tau)
};

SdofResponse fsdof_response(double omega, const FractionalSDOF& model);

/// G_j(i omega) for every DOF j, unit force on forced_dof (1-based).
std::vector<Complex> fndof_tf(double omega, const FractionalNDOF& model,
                              int forced_dof);

/// x(t) = f0 * M * sin(omega t + psi).
double steady_state(double t, double omega, double f0,
                    const PolarResponse& polar);

}  // namespace fracred
