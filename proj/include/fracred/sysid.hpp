#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "fracred/chain_model.hpp"
#include "fracred/reduction.hpp"

namespace fracred {

/// Measured (omega, magnitude, phase) triples; omegas strictly increasing,
/// magnitudes positive, phases in radians.
struct BodeDataset {
  std::vector<double> omegas;
  std::vector<double> magnitudes;
  std::vector<double> phases;

  std::size_t size() const noexcept { return omegas.size(); }

  static BodeDataset from(std::vector<double> omegas,
                          std::vector<double> magnitudes,
                          std::vector<double> phases);
};

/// Samples |H| and arg H of an integer chain over a grid.
BodeDataset bode_from_chain(const ChainModel& model, int force_dof,
                            int output_dof, const FrequencyGrid& grid,
                            bool parallel = false);

/// tau = cos(-psi)/(m M), xi = sin(-psi)/(m M) (positive root).
std::pair<double, double> tau_xi_from_bode(double magnitude, double psi,
                                           double m_bar);

/// Solves the tau/xi equations for alpha = a + ib by damped Newton from
/// `guess`; the k_bar/m_bar ratio enters through the tau equation.
Complex identify_alpha_sdof(double tau, double xi, double omega, double m_bar,
                            double k_bar, Complex guess,
                            const NewtonConfig& config = {});

/// Closed-form counterpart: alpha = Ln(tau - k/m + i xi) / Ln(i omega).
Complex alpha_from_tau_xi(double tau, double xi, double omega, double m_bar,
                          double k_bar);

/// Per-frequency schedules synthesized from Bode data, with the
/// reconstruction error of each point (relative magnitude, absolute phase).
struct IdentifiedModel {
  FrequencyGrid grid;
  double m_bar = 0.0;
  double k_bar = 0.0;
  bool k_bar_estimated = false;  // true when k_bar came from the static limit
  std::vector<Complex> alphas;
  std::vector<std::vector<Complex>> betas;
  std::vector<double> fit_residuals;
  std::vector<bool> converged;
  double max_reconstruction_error = 0.0;
};

/// F-SDOF synthesis. When k_bar is absent it is estimated as the inverse
/// of the magnitude at the lowest grid frequency and flagged.
IdentifiedModel identify_fsdof(const BodeDataset& data, double m_bar,
                               std::optional<double> k_bar = std::nullopt,
                               const NewtonConfig& config = {});

/// F-NDOF synthesis from N datasets on a shared grid: per frequency the
/// 2N real equations (relative magnitude and wrapped phase of each G_j)
/// are solved for (Re alpha, Im alpha, Re beta_j, Im beta_j). Force on
/// fractional DOF 1.
IdentifiedModel identify_fndof(const std::vector<BodeDataset>& datasets,
                               const std::vector<double>& masses,
                               double k_bar, const NewtonConfig& config = {});

struct SecondOrderFit {
  double m;
  double c;
  double k;
};

/// Classical single-peak fit: matches magnitude and phase at omega_fit plus
/// the quasi-static magnitude at the lowest grid frequency.
SecondOrderFit fit_integer_peak(const BodeDataset& data, double omega_fit);

/// CSV header omega,magnitude,phase_rad (phase_deg accepted on read).
void write_bode_csv(const BodeDataset& data, std::ostream& out,
                    bool degrees = false);
BodeDataset read_bode_csv(std::istream& in);

/// ReductionResult layout plus a `# max_reconstruction_error,...` footer.
void write_identified_csv(const IdentifiedModel& model, std::ostream& out);

}  // namespace fracred
