#pragma once

#include <iosfwd>
#include <vector>

#include "fracred/chain_model.hpp"
#include "fracred/frac_model.hpp"

namespace fracred {

/// m_bar = sum of masses, k_bar = series-equivalent stiffness.
struct LumpedParameters {
  double m_bar;
  double k_bar;
};

LumpedParameters lump_parameters(const ChainModel& model);

/// Order making an undamped fractional oscillator match a damped integer
/// one: alpha = 1 + Ln(i omega + c/m) / Ln(i omega).
Complex alpha_isdof(double m, double c, double k, double omega);

/// Order making the SDOF fractional model reproduce an arbitrary
/// transfer-function value H: alpha = Ln(1/(m H) - k/m) / Ln(i omega).
Complex alpha_imdof_to_fsdof(Complex h, const LumpedParameters& lumped,
                             double omega);

/// Per-frequency orders and coupling parameters plus solver diagnostics.
/// residuals hold the inf-norm of the relative matching equations.
struct ReductionResult {
  FrequencyGrid grid;
  std::vector<Complex> alphas;
  std::vector<std::vector<Complex>> betas;  // empty inner lists for SDOF
  std::vector<double> residuals;
  std::vector<bool> converged;
  std::vector<std::size_t> branch_jumps;  // indices where |d alpha| > 0.5

  std::size_t n_betas() const {
    return betas.empty() ? 0 : betas.front().size();
  }
};

/// Closed-form alpha(omega) sweep reducing one active DOF to an F-SDOF.
/// Points are independent; `parallel` fans them out across threads.
ReductionResult sweep_fsdof(const ChainModel& model, int force_dof,
                            int active_dof, const FrequencyGrid& grid,
                            bool parallel = false);

/// Newton/continuation reduction to an F-NDOF matching the active DOFs.
/// mass_partition lists the 1-based inclusive end index of each contiguous
/// mass block (e.g. {2, 4} splits four masses into pairs). The sweep runs
/// from the highest frequency down, seeding each solve with the previous
/// solution; unconverged points are flagged and the sweep continues.
ReductionResult reduce_to_fndof(const ChainModel& model, int force_dof,
                                const std::vector<int>& active_dofs,
                                const std::vector<int>& mass_partition,
                                const FrequencyGrid& grid,
                                const NewtonConfig& config = {});

/// CSV with header omega,re_alpha,im_alpha[,re_beta1,im_beta1,...],
/// residual,converged; 17 significant digits.
void write_reduction_csv(const ReductionResult& result, std::ostream& out);
ReductionResult read_reduction_csv(std::istream& in);

}  // namespace fracred
