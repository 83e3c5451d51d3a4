#include "fracred/sysid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "csv_util.hpp"
#include "parallel_util.hpp"

namespace fracred {

namespace {

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * M_PI);
  if (phi <= -M_PI) phi += 2.0 * M_PI;
  return phi;
}

}  // namespace

BodeDataset BodeDataset::from(std::vector<double> omegas,
                              std::vector<double> magnitudes,
                              std::vector<double> phases) {
  if (omegas.size() != magnitudes.size() || omegas.size() != phases.size()) {
    raise(ErrorCode::length_mismatch,
          "BodeDataset: columns must have equal length");
  }
  if (omegas.empty()) {
    raise(ErrorCode::validation, "BodeDataset: empty dataset");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!(omegas[i] > prev) || !std::isfinite(omegas[i])) {
      raise(ErrorCode::validation,
            "BodeDataset: frequencies must be positive, finite and strictly "
            "increasing");
    }
    if (!(magnitudes[i] > 0.0) || !std::isfinite(magnitudes[i])) {
      raise(ErrorCode::validation, "BodeDataset: magnitudes must be positive");
    }
    if (!std::isfinite(phases[i])) {
      raise(ErrorCode::validation, "BodeDataset: phases must be finite");
    }
    prev = omegas[i];
  }
  BodeDataset data;
  data.omegas = std::move(omegas);
  data.magnitudes = std::move(magnitudes);
  data.phases = std::move(phases);
  return data;
}

BodeDataset bode_from_chain(const ChainModel& model, int force_dof,
                            int output_dof, const FrequencyGrid& grid,
                            bool parallel) {
  const std::size_t n = grid.size();
  std::vector<double> mags(n), phases(n);
  detail::for_each_index(n, parallel, [&](std::size_t i) {
    const Complex h = integer_tf(model, force_dof, output_dof,
                                 grid.omegas[i]);
    mags[i] = std::abs(h);
    phases[i] = std::arg(h);
  });
  return BodeDataset::from(grid.omegas, std::move(mags), std::move(phases));
}

std::pair<double, double> tau_xi_from_bode(double magnitude, double psi,
                                           double m_bar) {
  if (!(magnitude > 0.0) || !(m_bar > 0.0)) {
    raise(ErrorCode::validation,
          "tau_xi_from_bode: magnitude and m_bar must be positive");
  }
  const double radius = 1.0 / (m_bar * magnitude);
  return {std::cos(-psi) * radius, std::sin(-psi) * radius};
}

Complex alpha_from_tau_xi(double tau, double xi, double omega, double m_bar,
                          double k_bar) {
  const double re = tau - k_bar / m_bar;
  // pin numerically-real arguments onto the +pi side of the branch cut
  constexpr double kEps = 8.0 * 2.220446049250313e-16;
  const Complex argument(re, std::abs(xi) <= kEps * std::abs(re) ? 0.0 : xi);
  if (argument == Complex(0.0, 0.0)) {
    raise(ErrorCode::degenerate_argument,
          "alpha_from_tau_xi: tau - k/m + i xi vanishes");
  }
  return principal_log(argument) / principal_log(Complex(0.0, omega));
}

Complex identify_alpha_sdof(double tau, double xi, double omega, double m_bar,
                            double k_bar, Complex guess,
                            const NewtonConfig& config) {
  if (tau - k_bar / m_bar == 0.0 && xi == 0.0) {
    raise(ErrorCode::degenerate_argument,
          "identify_alpha_sdof: degenerate tau/xi target");
  }
  const double scale = std::max(std::hypot(tau - k_bar / m_bar, xi), 1e-30);
  auto residual = [&](const std::vector<double>& x) {
    const auto [t, s] = tau_xi(omega, {x[0], x[1]}, m_bar, k_bar);
    return std::vector<double>{(t - tau) / scale, (s - xi) / scale};
  };
  const NewtonResult solved =
      newton_solve(residual, {guess.real(), guess.imag()}, config);
  if (!solved.converged) {
    raise(ErrorCode::no_convergence,
          "identify_alpha_sdof: Newton failed at omega = " +
              std::to_string(omega));
  }
  return {solved.x[0], solved.x[1]};
}

namespace {

// reconstruction mismatch: relative in magnitude, absolute in phase
double polar_mismatch(const PolarResponse& got, double magnitude,
                      double phase) {
  const double dm = std::abs(got.magnitude - magnitude) / magnitude;
  const double dp = std::abs(wrap_phase(got.phase - phase));
  return std::max(dm, dp);
}

}  // namespace

IdentifiedModel identify_fsdof(const BodeDataset& data, double m_bar,
                               std::optional<double> k_bar,
                               const NewtonConfig& config) {
  if (!(m_bar > 0.0)) {
    raise(ErrorCode::validation, "identify_fsdof: m_bar must be positive");
  }
  const std::size_t n = data.size();

  IdentifiedModel model;
  model.grid = FrequencyGrid::from(data.omegas);
  model.m_bar = m_bar;
  if (k_bar.has_value()) {
    if (!(*k_bar > 0.0)) {
      raise(ErrorCode::validation, "identify_fsdof: k_bar must be positive");
    }
    model.k_bar = *k_bar;
  } else {
    // quasi-static estimate from the lowest-frequency magnitude
    model.k_bar = 1.0 / data.magnitudes.front();
    model.k_bar_estimated = true;
  }
  model.alphas.assign(n, Complex{});
  model.betas.assign(n, {});
  model.fit_residuals.assign(n, std::numeric_limits<double>::quiet_NaN());
  model.converged.assign(n, false);

  bool have_seed = false;
  Complex seed;
  for (std::size_t idx = n; idx-- > 0;) {
    const double omega = data.omegas[idx];
    const auto [tau, xi] =
        tau_xi_from_bode(data.magnitudes[idx], data.phases[idx], m_bar);
    try {
      const Complex closed =
          alpha_from_tau_xi(tau, xi, omega, m_bar, model.k_bar);
      const Complex alpha = identify_alpha_sdof(
          tau, xi, omega, m_bar, model.k_bar, have_seed ? seed : closed,
          config);
      model.alphas[idx] = alpha;
      const SdofResponse rebuilt = fsdof_response(
          omega, {m_bar, model.k_bar, ComplexOrder::from(alpha)});
      model.fit_residuals[idx] =
          polar_mismatch(rebuilt.polar, data.magnitudes[idx],
                         data.phases[idx]);
      model.converged[idx] = true;
      seed = alpha;
      have_seed = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_convergence &&
          e.code() != ErrorCode::degenerate_argument) {
        throw;
      }
    }
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (model.converged[i]) worst = std::max(worst, model.fit_residuals[i]);
  }
  model.max_reconstruction_error = worst;
  return model;
}

IdentifiedModel identify_fndof(const std::vector<BodeDataset>& datasets,
                               const std::vector<double>& masses,
                               double k_bar, const NewtonConfig& config) {
  const std::size_t n_dof = datasets.size();
  if (n_dof < 2) {
    raise(ErrorCode::validation, "identify_fndof: need at least 2 datasets");
  }
  if (masses.size() != n_dof) {
    raise(ErrorCode::length_mismatch,
          "identify_fndof: one mass per dataset");
  }
  if (!(k_bar > 0.0)) {
    raise(ErrorCode::validation, "identify_fndof: k_bar must be positive");
  }
  const std::size_t n = datasets.front().size();
  for (const BodeDataset& d : datasets) {
    if (d.size() != n || d.omegas != datasets.front().omegas) {
      raise(ErrorCode::grid_mismatch,
            "identify_fndof: datasets must share one frequency grid");
    }
  }

  IdentifiedModel model;
  model.grid = FrequencyGrid::from(datasets.front().omegas);
  model.m_bar = 0.0;
  for (double m : masses) model.m_bar += m;
  model.k_bar = k_bar;
  model.alphas.assign(n, Complex{});
  model.betas.assign(n, std::vector<Complex>(n_dof - 1));
  model.fit_residuals.assign(n, std::numeric_limits<double>::quiet_NaN());
  model.converged.assign(n, false);

  FractionalNDOF frac;
  frac.masses = masses;
  frac.k_total = k_bar;

  const std::size_t n_unknowns = 2 * n_dof;
  std::vector<double> seed(n_unknowns, 0.0);
  seed[0] = 2.0;  // integer-order, uniform-split start at the top frequency
  for (std::size_t j = 0; j + 1 < n_dof; ++j) {
    seed[2 + 2 * j] = 1.0 / static_cast<double>(n_dof);
  }

  for (std::size_t idx = n; idx-- > 0;) {
    const double omega = model.grid.omegas[idx];

    auto residual = [&](const std::vector<double>& x) {
      FractionalNDOF trial = frac;
      trial.alpha = {x[0], x[1]};
      trial.betas.resize(n_dof - 1);
      for (std::size_t j = 0; j + 1 < n_dof; ++j) {
        trial.betas[j] = {x[2 + 2 * j], x[3 + 2 * j]};
      }
      std::vector<double> r(n_unknowns,
                            std::numeric_limits<double>::infinity());
      try {
        const std::vector<Complex> g = fndof_tf(omega, trial, 1);
        for (std::size_t j = 0; j < n_dof; ++j) {
          r[2 * j] = std::abs(g[j]) / datasets[j].magnitudes[idx] - 1.0;
          r[2 * j + 1] =
              wrap_phase(std::arg(g[j]) - datasets[j].phases[idx]);
        }
      } catch (const Error&) {
      }
      return r;
    };

    const NewtonResult solved = newton_solve(residual, seed, config);
    model.fit_residuals[idx] = solved.residual_norm;
    model.converged[idx] = solved.converged;
    model.alphas[idx] = {solved.x[0], solved.x[1]};
    for (std::size_t j = 0; j + 1 < n_dof; ++j) {
      model.betas[idx][j] = {solved.x[2 + 2 * j], solved.x[3 + 2 * j]};
    }
    if (solved.converged) seed = solved.x;
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (model.converged[i]) worst = std::max(worst, model.fit_residuals[i]);
  }
  model.max_reconstruction_error = worst;
  return model;
}

SecondOrderFit fit_integer_peak(const BodeDataset& data, double omega_fit) {
  const std::size_t n = data.size();
  if (omega_fit < data.omegas.front() || omega_fit > data.omegas.back()) {
    raise(ErrorCode::validation,
          "fit_integer_peak: omega_fit outside the dataset range");
  }
  // nearest sample to the requested fit frequency
  std::size_t pick = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(data.omegas[i] - omega_fit);
    if (d < best) {
      best = d;
      pick = i;
    }
  }
  const double wf = data.omegas[pick];
  const double mf = data.magnitudes[pick];
  const double pf = data.phases[pick];
  const double w0 = data.omegas.front();
  const double m0 = data.magnitudes.front();

  // 1/H at the fit point: k - m w^2 = u, c w = v
  const double u = std::cos(pf) / mf;
  const double v = -std::sin(pf) / mf;
  const double c = v / wf;

  // quasi-static magnitude pins k - m w0^2 (positive root)
  const double root_sq = 1.0 / (m0 * m0) - (v * w0 / wf) * (v * w0 / wf);
  const double denom = wf * wf - w0 * w0;
  if (root_sq <= 0.0 || std::abs(denom) < 1e-12 * wf * wf) {
    raise(ErrorCode::ill_conditioned_fit,
          "fit_integer_peak: fit frequency is in the static plateau");
  }
  const double w_root = std::sqrt(root_sq);
  const double m = (w_root - u) / denom;
  const double k = u + m * wf * wf;
  if (!(m > 0.0) || !(k > 0.0) || c < 0.0) {
    raise(ErrorCode::ill_conditioned_fit,
          "fit_integer_peak: fit produced non-physical parameters");
  }
  return {m, c, k};
}

void write_bode_csv(const BodeDataset& data, std::ostream& out, bool degrees) {
  out << (degrees ? "omega,magnitude,phase_deg" : "omega,magnitude,phase_rad")
      << "\n";
  const double factor = degrees ? 180.0 / M_PI : 1.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << detail::g17(data.omegas[i]) << ","
        << detail::g17(data.magnitudes[i]) << ","
        << detail::g17(data.phases[i] * factor) << "\n";
  }
}

BodeDataset read_bode_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCode::parse, "bode CSV: missing header");
  }
  const std::vector<std::string> header = detail::split_csv_line(line);
  bool degrees = false;
  if (header.size() == 3 && header[0] == "omega" &&
      header[1] == "magnitude") {
    if (header[2] == "phase_deg") {
      degrees = true;
    } else if (header[2] != "phase_rad") {
      raise(ErrorCode::parse,
            "bode CSV: phase column must be phase_rad or phase_deg");
    }
  } else {
    raise(ErrorCode::parse, "bode CSV: expected omega,magnitude,phase_rad");
  }

  std::vector<double> omegas, mags, phases;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = detail::split_csv_line(line);
    if (fields.size() != 3) {
      raise(ErrorCode::parse, "bode CSV: wrong field count on line " +
                                  std::to_string(line_no));
    }
    omegas.push_back(detail::parse_double(fields[0], line_no));
    mags.push_back(detail::parse_double(fields[1], line_no));
    double phase = detail::parse_double(fields[2], line_no);
    if (degrees) phase *= M_PI / 180.0;
    phases.push_back(phase);
  }
  return BodeDataset::from(std::move(omegas), std::move(mags),
                           std::move(phases));
}

void write_identified_csv(const IdentifiedModel& model, std::ostream& out) {
  ReductionResult as_result;
  as_result.grid = model.grid;
  as_result.alphas = model.alphas;
  as_result.betas = model.betas;
  as_result.residuals = model.fit_residuals;
  as_result.converged = model.converged;
  write_reduction_csv(as_result, out);
  if (model.k_bar_estimated) {
    out << "# k_bar_estimated," << detail::g17(model.k_bar) << "\n";
  }
  out << "# max_reconstruction_error,"
      << detail::g17(model.max_reconstruction_error) << "\n";
}

}  // namespace fracred
