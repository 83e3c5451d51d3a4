#include "fracred/frac_model.hpp"

#include <cmath>
#include <string>

namespace fracred {

Complex gamma(double omega, ComplexOrder alpha) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    raise(ErrorCode::validation, "gamma: omega must be positive");
  }
  const double scale =
      std::pow(omega, alpha.a) * std::exp(-alpha.b * M_PI / 2.0);
  const double angle = alpha.a * M_PI / 2.0 + alpha.b * std::log(omega);
  return {scale * std::cos(angle), scale * std::sin(angle)};
}

std::pair<double, double> tau_xi(double omega, ComplexOrder alpha,
                                 double m_bar, double k_bar) {
  const double scale =
      std::pow(omega, alpha.a) * std::exp(-alpha.b * M_PI / 2.0);
  const double ca = std::cos(alpha.a * M_PI / 2.0);
  const double sa = std::sin(alpha.a * M_PI / 2.0);
  const double cb = std::cos(alpha.b * std::log(omega));
  const double sb = std::sin(alpha.b * std::log(omega));
  const double tau = k_bar / m_bar + scale * (ca * cb - sa * sb);
  const double xi = scale * (ca * sb + sa * cb);
  return {tau, xi};
}

SdofResponse fsdof_response(double omega, const FractionalSDOF& model) {
  const auto [tau, xi] = tau_xi(omega, model.alpha, model.m_bar, model.k_bar);
  const double denom = std::hypot(tau, xi);
  if (denom == 0.0) {
    raise(ErrorCode::pole_hit,
          "fsdof_response: evaluation exactly at a model pole");
  }
  SdofResponse response;
  response.g = Complex(1.0 / model.m_bar, 0.0) / Complex(tau, xi);
  response.polar.magnitude = 1.0 / (model.m_bar * denom);
  response.polar.phase = -std::atan2(xi, tau);
  return response;
}

std::vector<Complex> fndof_tf(double omega, const FractionalNDOF& model,
                              int forced_dof) {
  const std::size_t n = model.size();
  if (n == 0) {
    raise(ErrorCode::validation, "fndof_tf: empty model");
  }
  if (model.betas.size() + 1 != n) {
    raise(ErrorCode::length_mismatch,
          "fndof_tf: expected " + std::to_string(n - 1) +
              " coupling parameters, got " + std::to_string(model.betas.size()));
  }
  if (forced_dof < 1 || static_cast<std::size_t>(forced_dof) > n) {
    raise(ErrorCode::index_out_of_range, "fndof_tf: forced_dof out of range");
  }

  // link stiffnesses: beta_j * k_total, last takes the remainder
  std::vector<Complex> links(n);
  Complex used{};
  for (std::size_t j = 0; j + 1 < n; ++j) {
    links[j] = model.betas[j] * model.k_total;
    used += model.betas[j];
  }
  links[n - 1] = (Complex(1.0, 0.0) - used) * model.k_total;

  const Complex s_alpha = gamma(omega, model.alpha);
  ComplexMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    z(i, i) = model.masses[i] * s_alpha + links[i];
    if (i > 0) z(i, i) += links[i - 1];
    if (i + 1 < n) {
      z(i, i + 1) = -links[i];
      z(i + 1, i) = -links[i];
    }
  }
  std::vector<Complex> f(n);
  f[forced_dof - 1] = 1.0;
  try {
    return lu_solve(std::move(z), std::move(f));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::singular_system) {
      raise(ErrorCode::singular_system,
            "fndof_tf: dynamic-stiffness matrix is singular");
    }
    throw;
  }
}

double steady_state(double t, double omega, double f0,
                    const PolarResponse& polar) {
  return f0 * polar.magnitude * std::sin(omega * t + polar.phase);
}

}  // namespace fracred
