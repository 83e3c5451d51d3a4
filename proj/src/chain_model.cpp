#include "fracred/chain_model.hpp"

#include <cmath>
#include <string>

namespace fracred {

namespace {

void check_dof(const ChainModel& model, int dof, const char* name) {
  if (dof < 1 || static_cast<std::size_t>(dof) > model.size()) {
    raise(ErrorCode::index_out_of_range,
          std::string(name) + " " + std::to_string(dof) +
              " out of range 1.." + std::to_string(model.size()));
  }
}

std::vector<double> chain_matrix(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> mat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    mat[i * n + i] += values[i];
    if (i + 1 < n) {
      mat[i * n + (i + 1)] -= values[i];
      mat[(i + 1) * n + i] -= values[i];
      mat[(i + 1) * n + (i + 1)] += values[i];
    }
  }
  return mat;
}

}  // namespace

ChainModel build_chain(std::vector<double> masses,
                       std::vector<double> stiffnesses,
                       std::vector<double> dampers) {
  if (masses.size() != stiffnesses.size() || masses.size() != dampers.size()) {
    raise(ErrorCode::length_mismatch,
          "build_chain: masses, stiffnesses and dampers must have equal "
          "length (got " +
              std::to_string(masses.size()) + ", " +
              std::to_string(stiffnesses.size()) + ", " +
              std::to_string(dampers.size()) + ")");
  }
  if (masses.empty()) {
    raise(ErrorCode::nonpositive_parameter,
          "build_chain: at least one mass is required");
  }
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] > 0.0) || !std::isfinite(masses[i])) {
      raise(ErrorCode::nonpositive_parameter,
            "build_chain: mass " + std::to_string(i + 1) +
                " must be positive");
    }
    if (!(stiffnesses[i] > 0.0) || !std::isfinite(stiffnesses[i])) {
      raise(ErrorCode::nonpositive_parameter,
            "build_chain: stiffness " + std::to_string(i + 1) +
                " must be positive");
    }
    if (dampers[i] < 0.0 || !std::isfinite(dampers[i])) {
      raise(ErrorCode::nonpositive_parameter,
            "build_chain: damper " + std::to_string(i + 1) +
                " must be non-negative");
    }
  }
  return ChainModel{std::move(masses), std::move(stiffnesses),
                    std::move(dampers)};
}

std::vector<double> stiffness_matrix(const ChainModel& model) {
  return chain_matrix(model.stiffnesses);
}

std::vector<double> damping_matrix(const ChainModel& model) {
  return chain_matrix(model.dampers);
}

StateSpace assemble_state_space(const ChainModel& model, int force_dof) {
  check_dof(model, force_dof, "force_dof");
  const std::size_t m = model.size();
  const std::size_t dim = 2 * m;
  const std::vector<double> k = stiffness_matrix(model);
  const std::vector<double> c = damping_matrix(model);

  StateSpace ss;
  ss.dim = dim;
  ss.a.assign(dim * dim, 0.0);
  ss.b.assign(dim, 0.0);
  ss.c.assign(dim, 0.0);
  ss.d = 0.0;

  for (std::size_t i = 0; i < m; ++i) {
    ss.A(2 * i, 2 * i + 1) = 1.0;  // d x_i / dt = v_i
    for (std::size_t j = 0; j < m; ++j) {
      ss.A(2 * i + 1, 2 * j) = -k[i * m + j] / model.masses[i];
      ss.A(2 * i + 1, 2 * j + 1) = -c[i * m + j] / model.masses[i];
    }
  }
  ss.b[2 * (force_dof - 1) + 1] = 1.0 / model.masses[force_dof - 1];
  ss.c[0] = 1.0;  // output defaults to DOF 1; callers select via tf_at_s
  return ss;
}

Complex tf_at_s(const ChainModel& model, int force_dof, int output_dof,
                Complex s) {
  check_dof(model, force_dof, "force_dof");
  check_dof(model, output_dof, "output_dof");
  const StateSpace ss = assemble_state_space(model, force_dof);
  const std::size_t n = ss.dim;

  ComplexMatrix lhs(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lhs(i, j) = (i == j ? s : Complex{}) - ss.A(i, j);
    }
  }
  std::vector<Complex> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = ss.b[i];

  const std::vector<Complex> x = lu_solve(std::move(lhs), std::move(rhs));
  return x[2 * (output_dof - 1)] + ss.d;
}

Complex integer_tf(const ChainModel& model, int force_dof, int output_dof,
                   double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    raise(ErrorCode::validation, "integer_tf: omega must be positive");
  }
  return tf_at_s(model, force_dof, output_dof, Complex(0.0, omega));
}

std::vector<double> natural_frequencies(const ChainModel& model) {
  // M^{-1/2} K M^{-1/2} is symmetric tridiagonal with the same spectrum
  // as M^{-1} K.
  const std::size_t n = model.size();
  const std::vector<double> k = stiffness_matrix(model);
  std::vector<double> diag(n), offdiag(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = k[i * n + i] / model.masses[i];
    if (i + 1 < n) {
      offdiag[i] = k[i * n + (i + 1)] /
                   std::sqrt(model.masses[i] * model.masses[i + 1]);
    }
  }
  std::vector<double> eig = sym_tridiag_eigenvalues(diag, offdiag);
  for (double& lambda : eig) lambda = std::sqrt(std::max(lambda, 0.0));
  return eig;
}

FrequencyGrid FrequencyGrid::from(std::vector<double> omegas) {
  if (omegas.empty()) {
    raise(ErrorCode::validation, "FrequencyGrid: at least one frequency");
  }
  double prev = 0.0;
  for (double w : omegas) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      raise(ErrorCode::validation,
            "FrequencyGrid: frequencies must be positive and finite");
    }
    if (w <= prev) {
      raise(ErrorCode::validation,
            "FrequencyGrid: frequencies must be strictly increasing");
    }
    prev = w;
  }
  FrequencyGrid grid;
  grid.omegas = std::move(omegas);
  return grid;
}

FrequencyGrid FrequencyGrid::log_spaced(double lo, double hi,
                                        std::size_t count) {
  if (count == 0 || !(lo > 0.0) || hi < lo || (count > 1 && hi == lo)) {
    raise(ErrorCode::validation, "FrequencyGrid: bad log grid spec");
  }
  std::vector<double> w(count);
  if (count == 1) {
    w[0] = lo;
  } else {
    const double la = std::log10(lo), lb = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i) {
      w[i] = std::pow(10.0, la + (lb - la) * static_cast<double>(i) /
                                static_cast<double>(count - 1));
    }
    w.front() = lo;
    w.back() = hi;
  }
  return from(std::move(w));
}

FrequencyGrid FrequencyGrid::linear(double lo, double hi, std::size_t count) {
  if (count == 0 || !(lo > 0.0) || hi < lo || (count > 1 && hi == lo)) {
    raise(ErrorCode::validation, "FrequencyGrid: bad linear grid spec");
  }
  std::vector<double> w(count);
  if (count == 1) {
    w[0] = lo;
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      w[i] = lo + (hi - lo) * static_cast<double>(i) /
                      static_cast<double>(count - 1);
    }
    w.front() = lo;
    w.back() = hi;
  }
  return from(std::move(w));
}

}  // namespace fracred
