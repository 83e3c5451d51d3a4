#include "fracred/reduction.hpp"

#include <cmath>
#include <doctest.h>
#include <sstream>

#include "fracred/oracle.hpp"
#include "test_util.hpp"

using namespace fracred;

namespace {

ChainModel paper_4dof() {
  return build_chain({1, 2, 1, 2}, {1, 2, 1, 2}, {1, 2, 1, 2});
}

// the tabulated reference values were generated at this grid frequency
constexpr double kDemoOmega = 1.04;

}  // namespace

TEST_CASE("alpha_isdof matches the tabulated SDOF order") {
  const Complex a10 = alpha_isdof(2.0, 1.0, 10.0, 10.0);
  CHECK(a10.real() == doctest::Approx(1.990269415184081).epsilon(1e-13));
  CHECK(a10.imag() == doctest::Approx(-0.015058565670832393).epsilon(1e-13));
  // four-decimal print
  CHECK(std::abs(a10.real() - 1.9903) < 5e-5);
  CHECK(std::abs(a10.imag() - (-0.0151)) < 5e-5);

  const Complex a1 = alpha_isdof(2.0, 1.0, 10.0, 1.0);
  CHECK(a1.real() == doctest::Approx(1.7048327646991335).epsilon(1e-13));
  CHECK(a1.imag() == doctest::Approx(-0.071028798421472972).epsilon(1e-13));
}

TEST_CASE("alpha_isdof of an undamped oscillator is exactly 2") {
  for (double w : {0.01, 0.5, 3.0, 250.0}) {
    const Complex a = alpha_isdof(1.7, 0.0, 9.1, w);
    CHECK(a.real() == 2.0);
    CHECK(a.imag() == 0.0);
  }
}

TEST_CASE("alpha_isdof satisfies m s^alpha = m s^2 + c s") {
  auto rng = testutil::make_rng(40);
  std::uniform_real_distribution<double> par(0.2, 5.0);
  std::uniform_real_distribution<double> logw(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double m = par(rng), c = par(rng), k = par(rng);
    const double w = std::pow(10.0, logw(rng));
    const Complex alpha = alpha_isdof(m, c, k, w);
    const Complex s(0.0, w);
    const Complex lhs = m * principal_pow(s, alpha);
    const Complex rhs = m * s * s + c * s;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("lump_parameters sums masses and series-combines springs") {
  const LumpedParameters paper = lump_parameters(paper_4dof());
  CHECK(paper.m_bar == 6.0);
  CHECK(paper.k_bar == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const LumpedParameters single =
      lump_parameters(build_chain({2.5}, {7.0}, {0.1}));
  CHECK(single.m_bar == 2.5);
  CHECK(single.k_bar == 7.0);

  // N uniform blocks: m_bar = N m, k_bar = k / N
  const LumpedParameters uniform =
      lump_parameters(build_chain({1.5, 1.5, 1.5, 1.5}, {2, 2, 2, 2},
                                  {0, 0, 0, 0}));
  CHECK(uniform.m_bar == 6.0);
  CHECK(uniform.k_bar == 0.5);
}

TEST_CASE("alpha_imdof_to_fsdof reproduces H by construction") {
  auto rng = testutil::make_rng(41);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  std::uniform_real_distribution<double> logw(-2.0, 2.0);
  const LumpedParameters lumped{6.0, 1.0 / 3.0};
  for (int i = 0; i < 100; ++i) {
    const Complex h{re(rng), re(rng)};
    if (std::abs(h) < 1e-3) continue;
    const double w = std::pow(10.0, logw(rng));
    const Complex alpha = alpha_imdof_to_fsdof(h, lumped, w);
    const SdofResponse r = fsdof_response(
        w, {lumped.m_bar, lumped.k_bar, ComplexOrder::from(alpha)});
    CHECK(std::abs(r.g - h) <= 1e-12 * std::abs(h));
  }
}

TEST_CASE("alpha_imdof_to_fsdof specializes to alpha_isdof for SDOF input") {
  auto rng = testutil::make_rng(42);
  std::uniform_real_distribution<double> par(0.3, 4.0);
  std::uniform_real_distribution<double> logw(-1.5, 1.5);
  for (int i = 0; i < 30; ++i) {
    const double m = par(rng), c = par(rng), k = par(rng);
    const double w = std::pow(10.0, logw(rng));
    const ChainModel sdof = build_chain({m}, {k}, {c});
    const Complex h = integer_tf(sdof, 1, 1, w);
    const Complex via_tf = alpha_imdof_to_fsdof(h, lump_parameters(sdof), w);
    const Complex direct = alpha_isdof(m, c, k, w);
    CHECK(std::abs(via_tf - direct) <= 1e-13 * std::abs(direct));
  }
}

TEST_CASE("alpha_imdof_to_fsdof at the 4-DOF reference frequencies") {
  const ChainModel model = paper_4dof();
  const LumpedParameters lumped = lump_parameters(model);

  const Complex h_demo = integer_tf(model, 1, 1, kDemoOmega);
  const Complex a_demo = alpha_imdof_to_fsdof(h_demo, lumped, kDemoOmega);
  CHECK(a_demo.real() == doctest::Approx(1.3806779689001853).epsilon(1e-12));
  CHECK(a_demo.imag() == doctest::Approx(0.77311446053476973).epsilon(1e-12));
  CHECK(std::abs(a_demo.real() - 1.3807) < 5e-5);
  CHECK(std::abs(a_demo.imag() - 0.7731) < 5e-5);

  const Complex h_one = integer_tf(model, 1, 1, 1.0);
  const Complex a_one = alpha_imdof_to_fsdof(h_one, lumped, 1.0);
  CHECK(a_one.real() == doctest::Approx(1.3912179475206801).epsilon(1e-12));
  CHECK(a_one.imag() == doctest::Approx(0.75221336719776422).epsilon(1e-12));
}

TEST_CASE("alpha_imdof_to_fsdof flags degenerate inputs") {
  const LumpedParameters lumped{6.0, 1.0 / 3.0};
  CHECK_THROWS_AS(alpha_imdof_to_fsdof({0.0, 0.0}, lumped, 1.0), Error);
  try {
    alpha_imdof_to_fsdof({0.0, 0.0}, lumped, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::antiresonance);
  }
  // H = 1/k_bar makes the log argument vanish
  try {
    alpha_imdof_to_fsdof({1.0 / lumped.k_bar, 0.0}, lumped, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_argument);
  }
}

TEST_CASE("sweep_fsdof of an undamped SDOF returns order 2 everywhere") {
  const ChainModel sdof = build_chain({2}, {10}, {0});
  std::vector<double> omegas = FrequencyGrid::log_spaced(0.01, 100.0, 100).omegas;
  const ReductionResult sweep = sweep_fsdof(sdof, 1, 1, FrequencyGrid::from(omegas));
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    REQUIRE(sweep.converged[i]);
    // forming 1/(m H) - k/m cancels to -w^2 at low frequency, which
    // amplifies the eps-level error of H by k/(m w^2); 2e-11 covers the
    // floor at w = 0.01 with margin
    CHECK(std::abs(sweep.alphas[i] - Complex(2.0, 0.0)) < 2e-11);
  }

  // the direct SDOF conversion has no such cancellation: exactly 2
  for (double w : omegas) {
    CHECK(alpha_isdof(2.0, 0.0, 10.0, w) == Complex(2.0, 0.0));
  }
}

TEST_CASE("sweep_fsdof of an undamped chain still matches exactly") {
  // with several masses the order absorbs the modal structure instead of
  // collapsing to 2, but the reconstruction stays exact
  const ChainModel model = build_chain({1, 2, 1}, {2, 1, 2}, {0, 0, 0});
  const LumpedParameters lumped = lump_parameters(model);
  const FrequencyGrid grid = FrequencyGrid::from({0.02, 0.11, 3.3, 17.0});
  const ReductionResult sweep = sweep_fsdof(model, 1, 1, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(sweep.converged[i]);
    const Complex h = integer_tf(model, 1, 1, grid.omegas[i]);
    const SdofResponse g = fsdof_response(
        grid.omegas[i],
        {lumped.m_bar, lumped.k_bar, ComplexOrder::from(sweep.alphas[i])});
    CHECK(std::abs(g.g - h) <= 1e-10 * std::abs(h));
  }
}

TEST_CASE("sweep_fsdof on a single mass reproduces alpha_isdof") {
  const ChainModel sdof = build_chain({2}, {10}, {1});
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 50);
  const ReductionResult sweep = sweep_fsdof(sdof, 1, 1, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex direct = alpha_isdof(2.0, 1.0, 10.0, grid.omegas[i]);
    CHECK(std::abs(sweep.alphas[i] - direct) <= 1e-13 * std::abs(direct));
  }
}

TEST_CASE("sweep_fsdof exactness across the full grid") {
  const ChainModel model = paper_4dof();
  const LumpedParameters lumped = lump_parameters(model);
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 100);
  const ReductionResult sweep = sweep_fsdof(model, 1, 1, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(sweep.converged[i]);
    const Complex h = integer_tf(model, 1, 1, grid.omegas[i]);
    const SdofResponse g = fsdof_response(
        grid.omegas[i],
        {lumped.m_bar, lumped.k_bar, ComplexOrder::from(sweep.alphas[i])});
    worst = std::max(worst, std::abs(g.g - h) / std::abs(h));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("sweep_fsdof alpha stays on a smooth branch") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 1000);
  const ReductionResult sweep = sweep_fsdof(model, 1, 1, grid);
  double max_jump = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    max_jump = std::max(max_jump,
                        std::abs(sweep.alphas[i + 1] - sweep.alphas[i]));
  }
  CHECK(max_jump < 0.5);
  CHECK(sweep.branch_jumps.empty());
}

TEST_CASE("sweep_fsdof approaches order 2 only logarithmically") {
  const ChainModel model = paper_4dof();
  const LumpedParameters lumped = lump_parameters(model);
  const Complex a100 =
      alpha_imdof_to_fsdof(integer_tf(model, 1, 1, 100.0), lumped, 100.0);
  CHECK(a100.real() == doctest::Approx(1.65081672050355).epsilon(1e-10));
  CHECK(a100.imag() == doctest::Approx(0.11693286188422139).epsilon(1e-10));

  // the mass-lumping mismatch leaves a ln(m_bar/m_1)/ln(w) offset, so the
  // approach to 2 is slow but monotone in the decades
  const Complex a1e6 =
      alpha_imdof_to_fsdof(integer_tf(model, 1, 1, 1e6), lumped, 1e6);
  CHECK(std::abs(a1e6 - Complex(2.0, 0.0)) <
        std::abs(a100 - Complex(2.0, 0.0)));
}

TEST_CASE("sweep_fsdof parallel evaluation is identical to serial") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 64);
  const ReductionResult serial = sweep_fsdof(model, 1, 1, grid, false);
  const ReductionResult parallel = sweep_fsdof(model, 1, 1, grid, true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(serial.alphas[i] == parallel.alphas[i]);
    CHECK(serial.residuals[i] == parallel.residuals[i]);
  }
}

TEST_CASE("reduce_to_fndof validates the mass partition") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::from({1.0, 2.0});
  CHECK_THROWS_AS(
      reduce_to_fndof(model, 1, {1, 3}, {2, 3}, grid), Error);  // not covering
  CHECK_THROWS_AS(
      reduce_to_fndof(model, 1, {1, 3}, {3, 2}, grid), Error);  // not increasing
  CHECK_THROWS_AS(
      reduce_to_fndof(model, 1, {1, 3}, {2}, grid), Error);  // wrong count
  CHECK_THROWS_AS(
      reduce_to_fndof(model, 1, {3, 1}, {2, 4}, grid), Error);  // active order
}

TEST_CASE("reduce_to_fndof reproduces the tabulated F-2DOF pair") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(kDemoOmega, 100.0, 60);
  const ReductionResult red = reduce_to_fndof(model, 1, {1, 3}, {2, 4}, grid);

  REQUIRE(red.converged.front());
  const Complex alpha = red.alphas.front();
  const Complex beta = red.betas.front().front();
  CHECK(alpha.real() == doctest::Approx(1.5833555099435555).epsilon(1e-8));
  CHECK(alpha.imag() == doctest::Approx(0.49826813819610949).epsilon(1e-8));
  CHECK(beta.real() == doctest::Approx(1.589628990198956).epsilon(1e-8));
  CHECK(beta.imag() == doctest::Approx(1.0439565006808407).epsilon(1e-8));
  CHECK(std::abs(alpha.real() - 1.5834) < 5e-5);
  CHECK(std::abs(alpha.imag() - 0.4983) < 5e-5);
  CHECK(std::abs(beta.real() - 1.5896) < 5e-5);
  CHECK(std::abs(beta.imag() - 1.0440) < 5e-5);

  // top of the sweep: coupling parameter is essentially real
  REQUIRE(red.converged.back());
  const Complex a100 = red.alphas.back();
  const Complex b100 = red.betas.back().front();
  CHECK(a100.real() == doctest::Approx(1.7856581909998648).epsilon(1e-7));
  CHECK(a100.imag() == doctest::Approx(0.070939703746575558).epsilon(1e-6));
  CHECK(b100.real() == doctest::Approx(2.999075352995145).epsilon(1e-7));
  CHECK(std::abs(b100.imag()) < 0.05);
}

TEST_CASE("reduce_to_fndof matches both active transfer functions") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.01, 100.0, 100);
  const ReductionResult red = reduce_to_fndof(model, 1, {1, 3}, {2, 4}, grid);

  std::size_t n_conv = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!red.converged[i]) continue;
    ++n_conv;
    FractionalNDOF frac{{3.0, 3.0}, 1.0 / 3.0, red.betas[i],
                        ComplexOrder::from(red.alphas[i])};
    const std::vector<Complex> g = fndof_tf(grid.omegas[i], frac, 1);
    const Complex h1 = integer_tf(model, 1, 1, grid.omegas[i]);
    const Complex h3 = integer_tf(model, 1, 3, grid.omegas[i]);
    worst = std::max(worst, std::abs(g[0] - h1) / std::abs(h1));
    worst = std::max(worst, std::abs(g[1] - h3) / std::abs(h3));
  }
  CHECK(n_conv == grid.size());
  CHECK(worst < 1e-10);
}

TEST_CASE("reduced steady-state waveforms overlay the time-domain oracle") {
  const ChainModel model = paper_4dof();
  const double w = 1.0, f0 = 1.0;
  const FrequencyGrid grid = FrequencyGrid::log_spaced(w, 100.0, 40);
  const ReductionResult red = reduce_to_fndof(model, 1, {1, 3}, {2, 4}, grid);
  REQUIRE(red.converged.front());
  FractionalNDOF frac{{3.0, 3.0}, 1.0 / 3.0, red.betas.front(),
                      ComplexOrder::from(red.alphas.front())};
  const std::vector<Complex> g = fndof_tf(w, frac, 1);

  const int spp = std::max(400, min_steps_per_period(model, w));
  const Trajectory traj = integrate_chain(model, 1, f0, w, 200, spp);
  const std::size_t start = traj.times.size() - (spp + 1);
  const int actives[2] = {1, 3};
  for (int j = 0; j < 2; ++j) {
    const PolarResponse polar{std::abs(g[j]), std::arg(g[j])};
    double worst = 0.0;
    for (std::size_t i = start; i < traj.times.size(); ++i) {
      const double model_x = steady_state(traj.times[i], w, f0, polar);
      const double oracle_x = traj.states[i][actives[j] - 1];
      worst = std::max(worst, std::abs(model_x - oracle_x));
    }
    CHECK(worst < 1e-3 * polar.magnitude * f0);
  }
}

TEST_CASE("reduction CSV round trip reproduces the stored schedules") {
  const ChainModel model = paper_4dof();
  const FrequencyGrid grid = FrequencyGrid::log_spaced(0.5, 50.0, 20);
  const ReductionResult red = reduce_to_fndof(model, 1, {1, 3}, {2, 4}, grid);

  std::ostringstream out;
  write_reduction_csv(red, out);
  std::istringstream in(out.str());
  const ReductionResult back = read_reduction_csv(in);

  REQUIRE(back.grid.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(back.grid.omegas[i] == grid.omegas[i]);  // %.17g is lossless
    CHECK(back.alphas[i] == red.alphas[i]);
    CHECK(back.betas[i] == red.betas[i]);
    CHECK(back.converged[i] == red.converged[i]);

    // re-run the matching equations from the parsed schedules
    FractionalNDOF frac{{3.0, 3.0}, 1.0 / 3.0, back.betas[i],
                        ComplexOrder::from(back.alphas[i])};
    const std::vector<Complex> g = fndof_tf(back.grid.omegas[i], frac, 1);
    const Complex h1 = integer_tf(model, 1, 1, back.grid.omegas[i]);
    const Complex h3 = integer_tf(model, 1, 3, back.grid.omegas[i]);
    const double residual =
        std::max(std::abs(g[0] - h1) / std::abs(h1),
                 std::abs(g[1] - h3) / std::abs(h3));
    CHECK(std::abs(residual - back.residuals[i]) < 1e-13);
  }
}

TEST_CASE("sweep CSV has the documented SDOF header") {
  const ChainModel sdof = build_chain({2}, {10}, {1});
  const ReductionResult sweep =
      sweep_fsdof(sdof, 1, 1, FrequencyGrid::from({1.0, 2.0, 4.0}));
  std::ostringstream out;
  write_reduction_csv(sweep, out);
  const std::string text = out.str();
  CHECK(text.substr(0, text.find('\n')) ==
        "omega,re_alpha,im_alpha,residual,converged");
}
