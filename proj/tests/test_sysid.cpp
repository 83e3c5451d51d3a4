#include "fracred/sysid.hpp"

#include <cmath>
#include <doctest.h>
#include <sstream>

#include "test_util.hpp"

using namespace fracred;

namespace {

ChainModel paper_4dof() {
  return build_chain({1, 2, 1, 2}, {1, 2, 1, 2}, {1, 2, 1, 2});
}

// 8-mass stand-in for the measured-data examples: total mass 12,
// series stiffness 0.41667
ChainModel source_8dof() {
  return build_chain({1, 2, 1, 2, 1, 2, 1, 2},
                     {10.0 / 3, 10.0 / 3, 10.0 / 3, 10.0 / 3, 10.0 / 3,
                      10.0 / 3, 10.0 / 3, 10.0 / 3},
                     {0.5, 1.0, 0.5, 1.0, 0.5, 1.0, 0.5, 1.0});
}

}  // namespace

TEST_CASE("tau_xi_from_bode special phases and the radius identity") {
  const double m_bar = 6.0, mag = 0.02;
  const auto [t0, x0] = tau_xi_from_bode(mag, 0.0, m_bar);
  CHECK(t0 == doctest::Approx(1.0 / (m_bar * mag)).epsilon(1e-15));
  CHECK(x0 == 0.0);

  const auto [t1, x1] = tau_xi_from_bode(mag, -M_PI / 2, m_bar);
  CHECK(std::abs(t1) < 1e-14 / (m_bar * mag));
  CHECK(x1 == doctest::Approx(1.0 / (m_bar * mag)).epsilon(1e-15));

  auto rng = testutil::make_rng(50);
  std::uniform_real_distribution<double> mags(1e-4, 10.0);
  std::uniform_real_distribution<double> psis(-M_PI, M_PI);
  for (int i = 0; i < 200; ++i) {
    const double m = mags(rng), psi = psis(rng);
    const auto [tau, xi] = tau_xi_from_bode(m, psi, m_bar);
    const double want = 1.0 / (m * m_bar) / (m * m_bar);
    CHECK(testutil::rel_err(tau * tau + xi * xi, want) < 1e-14);
    // xi = tau tan(-psi) where tau does not vanish
    if (std::abs(std::cos(psi)) > 1e-3) {
      CHECK(std::abs(xi - tau * std::tan(-psi)) <
            1e-12 * (std::abs(xi) + std::abs(tau)));
    }
  }
}

TEST_CASE("tau_xi_from_bode inverts the forward polar response") {
  auto rng = testutil::make_rng(51);
  std::uniform_real_distribution<double> logw(-2.0, 2.0);
  std::uniform_real_distribution<double> ra(0.5, 2.5);
  std::uniform_real_distribution<double> rb(-1.0, 1.0);
  std::uniform_real_distribution<double> par(0.3, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double w = std::pow(10.0, logw(rng));
    const FractionalSDOF model{par(rng), par(rng), {ra(rng), rb(rng)}};
    const SdofResponse r = fsdof_response(w, model);
    const auto [tau_want, xi_want] =
        tau_xi(w, model.alpha, model.m_bar, model.k_bar);
    const auto [tau, xi] = tau_xi_from_bode(r.polar.magnitude, r.polar.phase,
                                            model.m_bar);
    const double scale = std::hypot(tau_want, xi_want);
    CHECK(std::abs(tau - tau_want) < 1e-12 * scale);
    CHECK(std::abs(xi - xi_want) < 1e-12 * scale);
  }
}

TEST_CASE("identify_alpha_sdof round trip from a known order") {
  const double w = 2.0, m_bar = 1.3, k_bar = 0.7;
  const Complex alpha0(1.5, 0.3);
  const auto [tau, xi] = tau_xi(w, ComplexOrder::from(alpha0), m_bar, k_bar);
  const Complex got = identify_alpha_sdof(tau, xi, w, m_bar, k_bar,
                                          alpha0 + Complex(0.1, -0.05));
  CHECK(std::abs(got - alpha0) < 1e-10);
}

TEST_CASE("identify_alpha_sdof agrees with the closed form") {
  auto rng = testutil::make_rng(52);
  std::uniform_real_distribution<double> re(-3.0, 3.0);
  std::uniform_real_distribution<double> logw(-1.5, 1.5);
  const double m_bar = 2.0, k_bar = 10.0;
  int tested = 0;
  for (int i = 0; i < 200 && tested < 100; ++i) {
    const Complex g{re(rng), re(rng)};
    if (std::abs(g) < 0.05) continue;
    // keep clear of the branch cut where Newton's target is ambiguous
    if (g.real() < 0.0 && std::abs(g.imag()) < 0.05 * std::abs(g.real()))
      continue;
    const double w = std::pow(10.0, logw(rng));
    if (std::abs(std::log(w)) < 0.02) continue;
    const double tau = k_bar / m_bar + g.real();
    const double xi = g.imag();
    const Complex closed = alpha_from_tau_xi(tau, xi, w, m_bar, k_bar);
    const Complex newton = identify_alpha_sdof(
        tau, xi, w, m_bar, k_bar, closed + Complex(0.02, -0.01));
    CHECK(std::abs(newton - closed) < 1e-10 * std::max(1.0, std::abs(closed)));
    ++tested;
  }
  CHECK(tested == 100);
}

TEST_CASE("identify_alpha_sdof via the full Bode pipeline hits the "
          "damped-oscillator order") {
  const double m = 2.0, c = 1.0, k = 10.0, w = 10.0;
  const ChainModel sdof = build_chain({m}, {k}, {c});
  const Complex h = integer_tf(sdof, 1, 1, w);
  const auto [tau, xi] = tau_xi_from_bode(std::abs(h), std::arg(h), m);
  const Complex alpha =
      identify_alpha_sdof(tau, xi, w, m, k, Complex(2.0, 0.0));
  CHECK(alpha.real() == doctest::Approx(1.990269415184081).epsilon(1e-9));
  CHECK(alpha.imag() == doctest::Approx(-0.015058565670832393).epsilon(1e-7));
}

TEST_CASE("identify_alpha_sdof rejects a degenerate target") {
  CHECK_THROWS_AS(identify_alpha_sdof(5.0, 0.0, 1.0, 2.0, 10.0, {2.0, 0.0}),
                  Error);
}

TEST_CASE("identify_fsdof on 4-DOF data recovers the reference order") {
  const ChainModel model = paper_4dof();
  std::vector<double> omegas = FrequencyGrid::log_spaced(0.01, 100.0, 100).omegas;
  omegas.push_back(1.04);
  std::sort(omegas.begin(), omegas.end());
  const FrequencyGrid grid = FrequencyGrid::from(omegas);
  const BodeDataset data = bode_from_chain(model, 1, 1, grid);

  const IdentifiedModel ident = identify_fsdof(data, 6.0, 1.0 / 3.0);
  CHECK_FALSE(ident.k_bar_estimated);
  CHECK(ident.max_reconstruction_error < 1e-8);

  std::size_t demo = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(ident.converged[i]);
    if (grid.omegas[i] == 1.04) demo = i;
  }
  CHECK(std::abs(ident.alphas[demo].real() - 1.3807) < 5e-5);
  CHECK(std::abs(ident.alphas[demo].imag() - 0.7731) < 5e-5);
}

TEST_CASE("identify_fsdof equals the reduction sweep pointwise") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 100);
  const BodeDataset data = bode_from_chain(model, 1, 1, grid);
  const IdentifiedModel ident = identify_fsdof(data, 6.0, 1.0 / 3.0);
  const ReductionResult sweep = sweep_fsdof(model, 1, 1, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(ident.alphas[i] - sweep.alphas[i]) < 1e-9);
  }
}

TEST_CASE("identify_fsdof of undamped SDOF data returns order 2") {
  const ChainModel sdof = build_chain({3.0}, {1.2}, {0.0});
  const FrequencyGrid grid = FrequencyGrid::from({0.02, 0.1, 0.3, 2.0, 9.0});
  const BodeDataset data = bode_from_chain(sdof, 1, 1, grid);
  const IdentifiedModel ident = identify_fsdof(data, 3.0, 1.2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(ident.alphas[i] - Complex(2.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("identify_fsdof estimates k_bar from the static limit when absent") {
  const ChainModel model = source_8dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 60);
  const BodeDataset data = bode_from_chain(model, 1, 1, grid);

  const IdentifiedModel ident = identify_fsdof(data, 12.0);
  CHECK(ident.k_bar_estimated);
  // quasi-static estimate lands near the series stiffness 0.41667
  CHECK(testutil::rel_err(ident.k_bar, 5.0 / 12.0) < 1e-2);
  // the per-frequency order absorbs any k_bar offset: match stays exact
  CHECK(ident.max_reconstruction_error < 1e-8);
}

TEST_CASE("identification is idempotent on its own reconstruction") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 50);
  const BodeDataset data = bode_from_chain(model, 1, 1, grid);
  const IdentifiedModel first = identify_fsdof(data, 6.0, 1.0 / 3.0);

  // rebuild a dataset from the identified schedules, identify again
  std::vector<double> mags(grid.size()), phases(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SdofResponse r = fsdof_response(
        grid.omegas[i],
        {6.0, 1.0 / 3.0, ComplexOrder::from(first.alphas[i])});
    mags[i] = r.polar.magnitude;
    phases[i] = r.polar.phase;
  }
  const BodeDataset rebuilt =
      BodeDataset::from(grid.omegas, std::move(mags), std::move(phases));
  const IdentifiedModel second = identify_fsdof(rebuilt, 6.0, 1.0 / 3.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(second.alphas[i] - first.alphas[i]) < 1e-8);
  }
}

TEST_CASE("identify_fndof recovers known schedules") {
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 100);
  const std::vector<double> masses{6.0, 6.0};
  const double k_bar = 0.4167;

  // smooth synthetic schedules
  std::vector<Complex> alphas(grid.size()), betas(grid.size());
  std::vector<double> mag1(grid.size()), ph1(grid.size());
  std::vector<double> mag2(grid.size()), ph2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lw = std::log(grid.omegas[i]);
    alphas[i] = {1.7 + 0.05 * lw, 0.2};
    betas[i] = {0.6 + 0.02 * lw, 0.1};
    FractionalNDOF model{masses, k_bar, {betas[i]},
                         ComplexOrder::from(alphas[i])};
    const std::vector<Complex> g = fndof_tf(grid.omegas[i], model, 1);
    mag1[i] = std::abs(g[0]);
    ph1[i] = std::arg(g[0]);
    mag2[i] = std::abs(g[1]);
    ph2[i] = std::arg(g[1]);
  }
  const std::vector<BodeDataset> sets{
      BodeDataset::from(grid.omegas, mag1, ph1),
      BodeDataset::from(grid.omegas, mag2, ph2)};

  const IdentifiedModel ident = identify_fndof(sets, masses, k_bar);
  std::size_t converged = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!ident.converged[i]) continue;
    ++converged;
    CHECK(std::abs(ident.alphas[i] - alphas[i]) < 1e-8);
    CHECK(std::abs(ident.betas[i][0] - betas[i]) < 1e-8);
    CHECK(ident.fit_residuals[i] < 1e-10);
  }
  CHECK(converged == grid.size());
}

TEST_CASE("identify_fndof captures measured chain data at converged points") {
  const ChainModel model = source_8dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 100);
  const std::vector<BodeDataset> sets{bode_from_chain(model, 1, 1, grid),
                                      bode_from_chain(model, 1, 5, grid)};
  const IdentifiedModel ident = identify_fndof(sets, {6.0, 6.0}, 0.4167);

  std::size_t converged = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!ident.converged[i]) continue;
    ++converged;
    FractionalNDOF frac{{6.0, 6.0}, 0.4167, ident.betas[i],
                        ComplexOrder::from(ident.alphas[i])};
    const std::vector<Complex> g = fndof_tf(grid.omegas[i], frac, 1);
    worst = std::max(worst, std::abs(std::abs(g[0]) - sets[0].magnitudes[i]) /
                                sets[0].magnitudes[i]);
    worst = std::max(worst, std::abs(std::abs(g[1]) - sets[1].magnitudes[i]) /
                                sets[1].magnitudes[i]);
  }
  CHECK(converged >= 95);
  CHECK(worst < 1e-6);
}

TEST_CASE("identify_fndof rejects mismatched grids") {
  const ChainModel model = paper_4dof();
  const BodeDataset a =
      bode_from_chain(model, 1, 1, FrequencyGrid::from({1.0, 2.0, 3.0}));
  const BodeDataset b =
      bode_from_chain(model, 1, 3, FrequencyGrid::from({1.0, 2.0, 4.0}));
  CHECK_THROWS_AS(identify_fndof({a, b}, {3.0, 3.0}, 1.0 / 3.0), Error);
}

TEST_CASE("fit_integer_peak recovers an exact second-order system") {
  const double m = 2.0, c = 0.4, k = 10.0;
  const ChainModel sdof = build_chain({m}, {k}, {c});
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 200);
  const BodeDataset data = bode_from_chain(sdof, 1, 1, grid);

  // fit on the resonance peak sample
  std::size_t peak = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.magnitudes[i] > data.magnitudes[peak]) peak = i;
  }
  const SecondOrderFit fit = fit_integer_peak(data, data.omegas[peak]);
  CHECK(testutil::rel_err(fit.m, m) < 1e-6);
  CHECK(testutil::rel_err(fit.c, c) < 1e-6);
  CHECK(testutil::rel_err(fit.k, k) < 1e-6);
}

TEST_CASE("fit_integer_peak rejects static-plateau fit points") {
  const ChainModel sdof = build_chain({2.0}, {10.0}, {0.4});
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 100);
  const BodeDataset data = bode_from_chain(sdof, 1, 1, grid);
  CHECK_THROWS_AS(fit_integer_peak(data, 0.01), Error);
  CHECK_THROWS_AS(fit_integer_peak(data, 1e4), Error);  // outside the range
}

TEST_CASE("fractional synthesis dominates the single-peak integer fit") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 100);
  const BodeDataset data = bode_from_chain(model, 1, 1, grid);

  const IdentifiedModel frac = identify_fsdof(data, 6.0, 1.0 / 3.0);
  CHECK(frac.max_reconstruction_error <= 1e-6);

  std::size_t peak = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.magnitudes[i] > data.magnitudes[peak]) peak = i;
  }
  const SecondOrderFit fit = fit_integer_peak(data, data.omegas[peak]);
  double integer_err = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double w = data.omegas[i];
    const Complex h = 1.0 / Complex(fit.k - fit.m * w * w, fit.c * w);
    integer_err = std::max(integer_err, std::abs(std::abs(h) -
                                                 data.magnitudes[i]) /
                                            data.magnitudes[i]);
  }
  CHECK(integer_err > 1e-2);
  CHECK(integer_err > 10.0 * std::max(frac.max_reconstruction_error, 1e-12));
}

TEST_CASE("bode CSV round trip and degree input") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.1, 10.0, 12);
  const BodeDataset data = bode_from_chain(model, 1, 1, grid);

  std::ostringstream out;
  write_bode_csv(data, out);
  std::istringstream in(out.str());
  const BodeDataset back = read_bode_csv(in);
  REQUIRE(back.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(back.omegas[i] == data.omegas[i]);
    CHECK(back.magnitudes[i] == data.magnitudes[i]);
    CHECK(back.phases[i] == data.phases[i]);
  }

  std::istringstream deg(
      "omega,magnitude,phase_deg\n1,0.5,-90\n2,0.25,-180\n");
  const BodeDataset from_deg = read_bode_csv(deg);
  CHECK(from_deg.phases[0] == doctest::Approx(-M_PI / 2));
  CHECK(from_deg.phases[1] == doctest::Approx(-M_PI));

  std::istringstream bad("omega,magnitude,phase\n1,0.5,0\n");
  CHECK_THROWS_AS(read_bode_csv(bad), Error);
}

TEST_CASE("identified CSV carries the reconstruction-error footer") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.1, 10.0, 8);
  const BodeDataset data = bode_from_chain(model, 1, 1, grid);
  const IdentifiedModel ident = identify_fsdof(data, 6.0);

  std::ostringstream out;
  write_identified_csv(ident, out);
  const std::string text = out.str();
  CHECK(text.find("# max_reconstruction_error,") != std::string::npos);
  CHECK(text.find("# k_bar_estimated,") != std::string::npos);
}
