#include "fracred/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "csv_util.hpp"
#include "parallel_util.hpp"

namespace fracred {

LumpedParameters lump_parameters(const ChainModel& model) {
  double m_bar = 0.0;
  double compliance = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    m_bar += model.masses[i];
    compliance += 1.0 / model.stiffnesses[i];
  }
  return {m_bar, 1.0 / compliance};
}

Complex alpha_isdof(double m, double c, double k, double omega) {
  if (!(m > 0.0) || !(k > 0.0) || c < 0.0) {
    raise(ErrorCode::nonpositive_parameter,
          "alpha_isdof: require m > 0, k > 0, c >= 0");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    raise(ErrorCode::validation, "alpha_isdof: omega must be positive");
  }
  if (c == 0.0) return {2.0, 0.0};  // undamped: integer order, exactly
  const Complex s(0.0, omega);
  return 1.0 + principal_log(s + c / m) / principal_log(s);
}

namespace {

// A log argument within rounding distance of the real axis is pinned onto
// it, so numerically-real inputs always land on the +pi side of the cut.
Complex snap_to_real_axis(Complex z) {
  constexpr double kEps = 8.0 * 2.220446049250313e-16;
  if (std::abs(z.imag()) <= kEps * std::abs(z.real())) {
    return {z.real(), 0.0};
  }
  return z;
}

}  // namespace

Complex alpha_imdof_to_fsdof(Complex h, const LumpedParameters& lumped,
                             double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    raise(ErrorCode::validation,
          "alpha_imdof_to_fsdof: omega must be positive");
  }
  if (h == Complex(0.0, 0.0)) {
    raise(ErrorCode::antiresonance,
          "alpha_imdof_to_fsdof: transfer function is zero (antiresonance)");
  }
  const Complex argument = snap_to_real_axis(
      1.0 / (lumped.m_bar * h) - lumped.k_bar / lumped.m_bar);
  if (argument == Complex(0.0, 0.0)) {
    raise(ErrorCode::degenerate_argument,
          "alpha_imdof_to_fsdof: logarithm argument is zero");
  }
  return principal_log(argument) / principal_log(Complex(0.0, omega));
}

namespace {

constexpr double kBranchJumpThreshold = 0.5;

void flag_branch_jumps(ReductionResult& result) {
  for (std::size_t i = 0; i + 1 < result.alphas.size(); ++i) {
    if (!result.converged[i] || !result.converged[i + 1]) continue;
    if (std::abs(result.alphas[i + 1] - result.alphas[i]) >
        kBranchJumpThreshold) {
      result.branch_jumps.push_back(i + 1);
    }
  }
}

// relative mismatch of the reconstructed SDOF response against H
double sdof_residual(double omega, double m_bar, double k_bar, Complex alpha,
                     Complex h) {
  const FractionalSDOF model{m_bar, k_bar, ComplexOrder::from(alpha)};
  const Complex g = fsdof_response(omega, model).g;
  return std::abs(g - h) / std::abs(h);
}

}  // namespace

ReductionResult sweep_fsdof(const ChainModel& model, int force_dof,
                            int active_dof, const FrequencyGrid& grid,
                            bool parallel) {
  const LumpedParameters lumped = lump_parameters(model);
  const std::size_t n = grid.size();

  ReductionResult result;
  result.grid = grid;
  result.alphas.assign(n, Complex{});
  result.betas.assign(n, {});
  result.residuals.assign(n, std::numeric_limits<double>::quiet_NaN());
  result.converged.assign(n, false);

  detail::for_each_index(n, parallel, [&](std::size_t i) {
    const double omega = grid.omegas[i];
    try {
      const Complex h = integer_tf(model, force_dof, active_dof, omega);
      const Complex alpha = alpha_imdof_to_fsdof(h, lumped, omega);
      result.alphas[i] = alpha;
      result.residuals[i] = sdof_residual(omega, lumped.m_bar, lumped.k_bar,
                                          alpha, h);
      result.converged[i] = result.residuals[i] < 1e-10;
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::antiresonance:
        case ErrorCode::degenerate_argument:
        case ErrorCode::singular_system:
          result.converged[i] = false;  // flagged point, sweep continues
          break;
        default:
          throw;
      }
    }
  });

  flag_branch_jumps(result);
  return result;
}

namespace {

struct Partition {
  std::vector<double> block_masses;  // length N
  int forced_block = 0;              // 1-based fractional DOF
};

Partition resolve_partition(const ChainModel& model, int force_dof,
                            const std::vector<int>& boundaries) {
  const int m = static_cast<int>(model.size());
  const std::size_t n = boundaries.size();
  if (n == 0 || boundaries.back() != m) {
    raise(ErrorCode::partition_mismatch,
          "mass partition must cover all masses (last boundary == M)");
  }
  int prev = 0;
  Partition part;
  part.block_masses.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int end = boundaries[j];
    if (end <= prev) {
      raise(ErrorCode::partition_mismatch,
            "mass partition boundaries must be strictly increasing");
    }
    double sum = 0.0;
    for (int i = prev; i < end; ++i) sum += model.masses[i];
    part.block_masses.push_back(sum);
    if (force_dof > prev && force_dof <= end) {
      part.forced_block = static_cast<int>(j) + 1;
    }
    prev = end;
  }
  return part;
}

std::vector<double> pack_unknowns(Complex alpha,
                                  const std::vector<Complex>& betas) {
  std::vector<double> x;
  x.reserve(2 + 2 * betas.size());
  x.push_back(alpha.real());
  x.push_back(alpha.imag());
  for (const Complex& beta : betas) {
    x.push_back(beta.real());
    x.push_back(beta.imag());
  }
  return x;
}

void unpack_unknowns(const std::vector<double>& x, Complex& alpha,
                     std::vector<Complex>& betas) {
  alpha = {x[0], x[1]};
  betas.resize(x.size() / 2 - 1);
  for (std::size_t j = 0; j < betas.size(); ++j) {
    betas[j] = {x[2 + 2 * j], x[3 + 2 * j]};
  }
}

}  // namespace

ReductionResult reduce_to_fndof(const ChainModel& model, int force_dof,
                                const std::vector<int>& active_dofs,
                                const std::vector<int>& mass_partition,
                                const FrequencyGrid& grid,
                                const NewtonConfig& config) {
  const std::size_t n_active = active_dofs.size();
  if (n_active == 0 || n_active > model.size()) {
    raise(ErrorCode::validation,
          "reduce_to_fndof: need 1..M active DOFs");
  }
  for (std::size_t j = 0; j + 1 < n_active; ++j) {
    if (active_dofs[j] >= active_dofs[j + 1]) {
      raise(ErrorCode::validation,
            "reduce_to_fndof: active DOFs must be strictly increasing");
    }
  }
  if (mass_partition.size() != n_active) {
    raise(ErrorCode::partition_mismatch,
          "reduce_to_fndof: one mass block per active DOF");
  }
  const Partition part = resolve_partition(model, force_dof, mass_partition);
  const double k_bar = lump_parameters(model).k_bar;
  const std::size_t n = grid.size();
  const std::size_t n_unknowns = 2 * n_active;

  ReductionResult result;
  result.grid = grid;
  result.alphas.assign(n, Complex{});
  result.betas.assign(n, std::vector<Complex>(n_active - 1));
  result.residuals.assign(n, std::numeric_limits<double>::quiet_NaN());
  result.converged.assign(n, false);

  // high-frequency seed: integer order, uniform stiffness split
  std::vector<Complex> seed_betas(n_active - 1,
                                  Complex(1.0 / static_cast<double>(n_active),
                                          0.0));
  std::vector<double> seed = pack_unknowns(Complex(2.0, 0.0), seed_betas);

  FractionalNDOF frac;
  frac.masses = part.block_masses;
  frac.k_total = k_bar;

  // descending continuation: the integer-order limit anchors the top
  for (std::size_t idx = n; idx-- > 0;) {
    const double omega = grid.omegas[idx];
    std::vector<Complex> targets(n_active);
    std::vector<double> scales(n_active);
    bool target_ok = true;
    for (std::size_t j = 0; j < n_active; ++j) {
      try {
        targets[j] = integer_tf(model, force_dof, active_dofs[j], omega);
      } catch (const Error&) {
        target_ok = false;
        break;
      }
      scales[j] = std::abs(targets[j]);
      if (scales[j] == 0.0) target_ok = false;
    }
    if (!target_ok) continue;  // flagged unconverged, sweep continues

    auto residual = [&](const std::vector<double>& x) {
      FractionalNDOF trial = frac;
      Complex alpha;
      unpack_unknowns(x, alpha, trial.betas);
      trial.alpha = ComplexOrder::from(alpha);
      std::vector<double> r(n_unknowns,
                            std::numeric_limits<double>::infinity());
      try {
        const std::vector<Complex> g =
            fndof_tf(omega, trial, part.forced_block);
        for (std::size_t j = 0; j < n_active; ++j) {
          const Complex mismatch = (g[j] - targets[j]) / scales[j];
          r[2 * j] = mismatch.real();
          r[2 * j + 1] = mismatch.imag();
        }
      } catch (const Error&) {
        // leave infinite residual; the line search backs off
      }
      return r;
    };

    const NewtonResult solved = newton_solve(residual, seed, config);
    result.residuals[idx] = solved.residual_norm;
    result.converged[idx] = solved.converged;
    Complex alpha;
    std::vector<Complex> betas;
    unpack_unknowns(solved.x, alpha, betas);
    result.alphas[idx] = alpha;
    result.betas[idx] = std::move(betas);
    if (solved.converged) {
      seed = solved.x;  // continuation: carry the last converged solution
    }
  }

  flag_branch_jumps(result);
  return result;
}

void write_reduction_csv(const ReductionResult& result, std::ostream& out) {
  const std::size_t n_betas = result.n_betas();
  out << "omega,re_alpha,im_alpha";
  for (std::size_t j = 1; j <= n_betas; ++j) {
    out << ",re_beta" << j << ",im_beta" << j;
  }
  out << ",residual,converged\n";
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    out << detail::g17(result.grid.omegas[i]) << ","
        << detail::g17(result.alphas[i].real()) << ","
        << detail::g17(result.alphas[i].imag());
    for (std::size_t j = 0; j < n_betas; ++j) {
      out << "," << detail::g17(result.betas[i][j].real()) << ","
          << detail::g17(result.betas[i][j].imag());
    }
    out << "," << detail::g17(result.residuals[i]) << ","
        << (result.converged[i] ? 1 : 0) << "\n";
  }
}

ReductionResult read_reduction_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCode::parse, "reduction CSV: missing header");
  }
  const std::vector<std::string> header = detail::split_csv_line(line);
  if (header.size() < 5 || header[0] != "omega" || header[1] != "re_alpha" ||
      header[2] != "im_alpha" || header.back() != "converged" ||
      header[header.size() - 2] != "residual" || header.size() % 2 == 0) {
    raise(ErrorCode::parse, "reduction CSV: unexpected header");
  }
  const std::size_t n_betas = (header.size() - 5) / 2;

  std::vector<double> omegas;
  ReductionResult result;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = detail::split_csv_line(line);
    if (fields.size() != header.size()) {
      raise(ErrorCode::parse, "reduction CSV: wrong field count on line " +
                                  std::to_string(line_no));
    }
    omegas.push_back(detail::parse_double(fields[0], line_no));
    result.alphas.emplace_back(detail::parse_double(fields[1], line_no),
                               detail::parse_double(fields[2], line_no));
    std::vector<Complex> betas(n_betas);
    for (std::size_t j = 0; j < n_betas; ++j) {
      betas[j] = {detail::parse_double(fields[3 + 2 * j], line_no),
                  detail::parse_double(fields[4 + 2 * j], line_no)};
    }
    result.betas.push_back(std::move(betas));
    result.residuals.push_back(
        detail::parse_double(fields[fields.size() - 2], line_no));
    result.converged.push_back(fields.back() == "1");
  }
  result.grid = FrequencyGrid::from(std::move(omegas));
  return result;
}

}  // namespace fracred
