#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "graphbell/bell.hpp"
#include "graphbell/noise.hpp"
#include "graphbell/state.hpp"
#include "test_util.hpp"

using namespace graphbell;
using doctest::Approx;

namespace {

// Both 16-term operators split into eight weight-5 and eight weight-6 terms
// with ideal expectation +1, so uniform damping gives 8(p^5 + p^6).
double graph_bell_law(double p) { return 8.0 * (std::pow(p, 5) + std::pow(p, 6)); }

double mermin_law(double p) { return 32.0 * std::pow(p, 6); }

// Independent bisection of 8(p^5 + p^6) = 4 for the crossing point.
double oracle_lc6_threshold() {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (graph_bell_law(mid) > 4.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("depolarizing damping multiplies retention over non-identity sites") {
  const DepolarizingNoise uniform = DepolarizingNoise::uniform(0.9, 6);
  const QubitOrder order = QubitOrder::identity(6);

  const PauliString full = parse_observable("XZZXXZ", order);
  CHECK(noisy_expectation(1.0, full, uniform) == Approx(0.531441).epsilon(1e-12));

  const PauliString weight5 = parse_observable("XIZYYX", order);
  CHECK(noisy_expectation(1.0, weight5, uniform) == Approx(std::pow(0.9, 5)).epsilon(1e-12));
  CHECK(noisy_expectation(-0.5, weight5, uniform) == Approx(-0.5 * std::pow(0.9, 5)));

  CHECK(noisy_expectation(0.75, PauliString::identity(6), uniform) == Approx(0.75));
  CHECK(noisy_expectation(1.0, full, DepolarizingNoise::uniform(1.0, 6)) == Approx(1.0));
  CHECK(noisy_expectation(1.0, full, DepolarizingNoise::uniform(0.0, 6)) == Approx(0.0));

  // Per-qubit values hit only the sites the string touches.
  const DepolarizingNoise mixed({1.0, 0.5, 1.0, 1.0, 1.0, 0.25});
  const PauliString z2 = PauliString::from_sites(6, {{2, 'Z'}});
  CHECK(noisy_expectation(1.0, z2, mixed) == Approx(0.5));
  const PauliString z2x6 = PauliString::from_sites(6, {{2, 'Z'}, {6, 'X'}});
  CHECK(noisy_expectation(1.0, z2x6, mixed) == Approx(0.125));
}

TEST_CASE("noise construction and lookups are validated") {
  CHECK_THROWS_AS(DepolarizingNoise({0.5, 1.2}), std::invalid_argument);
  CHECK_THROWS_AS(DepolarizingNoise({-0.1}), std::invalid_argument);
  CHECK_THROWS_AS(DepolarizingNoise(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(DepolarizingNoise::uniform(0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(DepolarizingNoise::uniform(1.5, 4), std::invalid_argument);

  const DepolarizingNoise noise({0.1, 0.2, 0.3});
  CHECK(noise.size() == 3);
  CHECK(noise.retention(2) == Approx(0.2));
  CHECK_THROWS_AS(noise.retention(0), std::out_of_range);
  CHECK_THROWS_AS(noise.retention(4), std::out_of_range);

  const PauliString x1 = PauliString::from_sites(2, {{1, 'X'}});
  CHECK_THROWS_AS(noisy_expectation(1.0, x1, noise), std::invalid_argument);  // size mismatch
  CHECK_THROWS_AS(noisy_expectation(1.5, x1, DepolarizingNoise::uniform(0.5, 2)),
                  std::invalid_argument);  // |ideal| > 1
}

TEST_CASE("noisy Bell values follow the closed-form decay laws") {
  const BellOperator lc6 = lc6_bell();
  const std::vector<double> lc6_ideal = ideal_term_values(lc6, build_named_state(NamedState::LC6));

  CHECK(noisy_bell_value(lc6, lc6_ideal, DepolarizingNoise::uniform(0.9, 6)) ==
        Approx(8.975448).epsilon(1e-12));
  CHECK(noisy_bell_value(lc6, lc6_ideal, DepolarizingNoise::uniform(1.0, 6)) == Approx(16.0));
  CHECK(noisy_bell_value(lc6, lc6_ideal, DepolarizingNoise::uniform(0.0, 6)) ==
        Approx(0.0).epsilon(1e-15));

  const BellOperator y6 = y6_bell();
  const std::vector<double> y6_ideal = ideal_term_values(y6, build_named_state(NamedState::Y6));
  const BellOperator mermin = mermin_ghz6();
  const std::vector<double> mermin_ideal =
      ideal_term_values(mermin, build_named_state(NamedState::GHZ6));

  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    const DepolarizingNoise noise = DepolarizingNoise::uniform(p, 6);
    CHECK(noisy_bell_value(lc6, lc6_ideal, noise) == Approx(graph_bell_law(p)).epsilon(1e-10));
    CHECK(noisy_bell_value(y6, y6_ideal, noise) == Approx(graph_bell_law(p)).epsilon(1e-10));
    CHECK(noisy_bell_value(mermin, mermin_ideal, noise) == Approx(mermin_law(p)).epsilon(1e-10));
  }

  std::vector<double> short_ideal(15, 1.0);
  CHECK_THROWS_AS(noisy_bell_value(lc6, short_ideal, DepolarizingNoise::uniform(0.5, 6)),
                  std::invalid_argument);
}

TEST_CASE("sweep grids hit both endpoints and decay monotonically") {
  const BellOperator b = lc6_bell();
  const std::vector<double> ideal = ideal_term_values(b, build_named_state(NamedState::LC6));
  const DecayCurve curve = sweep_uniform(b, ideal, 0.0, 1.0, 11);

  REQUIRE(curve.samples.size() == 11);
  CHECK(curve.samples.front().p == 0.0);
  CHECK(curve.samples.back().p == 1.0);
  CHECK(curve.samples.back().value == Approx(16.0));
  CHECK(curve.operator_label == "B_LC6");
  CHECK(curve.grid == "0,1,11");
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    CHECK(curve.samples[i].value > curve.samples[i - 1].value);
    CHECK(curve.samples[i].p == Approx(i / 10.0).epsilon(1e-15));
  }

  std::ostringstream out;
  write_csv(out, curve);
  std::istringstream lines(out.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "p,value,operator");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",B_LC6") != std::string::npos);
  }
  CHECK(rows == 11);
  CHECK(out.str().find("1,16,B_LC6") != std::string::npos);

  CHECK_THROWS_AS(sweep_uniform(b, ideal, 0.8, 0.2, 5), std::invalid_argument);
  CHECK_THROWS_AS(sweep_uniform(b, ideal, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sweep_uniform(b, ideal, -0.2, 1.0, 5), std::invalid_argument);
}

TEST_CASE("analytic damping matches the density-operator channel") {
  for (const BellOperator& b : {lc6_bell(), y6_bell()}) {
    const NamedState which = b.label == "B_LC6" ? NamedState::LC6 : NamedState::Y6;
    const StateVector s = build_named_state(which);
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
      const DepolarizingNoise noise = DepolarizingNoise::uniform(p, 6);
      const DensityOperator rho = apply_depolarizing_dm(s, noise);
      for (const PauliString& term : b.terms) {
        const double analytic = noisy_expectation(expectation(s, term), term, noise);
        CHECK(expectation(rho, term) == Approx(analytic).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("the density-operator channel is a valid quantum channel") {
  auto rng = testutil::make_rng(0xD0B5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);  // 2..5 qubits
    const StateVector s = graph_state(testutil::random_graph(rng, n));
    std::vector<double> retention(static_cast<std::size_t>(n));
    for (double& p : retention) p = (rng() % 1000) / 999.0;
    const DepolarizingNoise noise(retention);
    const DensityOperator rho = apply_depolarizing_dm(s, noise);

    CHECK(rho.trace().real() == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rho.trace().imag()) < 1e-12);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<DensityOperator> solver(rho);
    CHECK(solver.eigenvalues().minCoeff() > -1e-10);

    // Analytic damping for arbitrary per-qubit strengths on random strings.
    for (int check = 0; check < 8; ++check) {
      const PauliString term = testutil::random_pauli(rng, static_cast<std::size_t>(n));
      const double ideal = expectation(s, term);
      CHECK(expectation(rho, term) == Approx(noisy_expectation(ideal, term, noise)).epsilon(1e-10));
    }
  }

  // Endpoint channels: p = 1 is the identity map, p = 0 fully mixes.
  const StateVector lc6 = build_named_state(NamedState::LC6);
  const DensityOperator kept = apply_depolarizing_dm(lc6, DepolarizingNoise::uniform(1.0, 6));
  CHECK((kept - pure_density(lc6)).cwiseAbs().maxCoeff() < 1e-12);
  const DensityOperator mixed = apply_depolarizing_dm(lc6, DepolarizingNoise::uniform(0.0, 6));
  DensityOperator maximally_mixed = DensityOperator::Identity(64, 64) / 64.0;
  CHECK((mixed - maximally_mixed).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(apply_depolarizing_dm(lc6, DepolarizingNoise::uniform(0.5, 2)),
                  std::invalid_argument);
}

TEST_CASE("violation thresholds match independent bisections") {
  BellOperator lc6 = lc6_bell();
  lc6.lhv_bound = 4.0;
  const std::vector<double> lc6_ideal = ideal_term_values(lc6, build_named_state(NamedState::LC6));
  const ThresholdResult lc6_result = violation_threshold(lc6, lc6_ideal);
  CHECK(lc6_result.p_star == Approx(oracle_lc6_threshold()).epsilon(1e-8));
  CHECK(lc6_result.bound == Approx(4.0));
  CHECK(std::abs(graph_bell_law(lc6_result.p_star) - 4.0) < 1e-7);
  CHECK(std::abs(lc6_result.value_at_p_star - 4.0) < 1e-7);
  CHECK(lc6_result.iterations >= 25);
  CHECK(lc6_result.iterations <= 40);

  BellOperator mermin = mermin_ghz6();
  mermin.lhv_bound = 8.0;
  const std::vector<double> mermin_ideal =
      ideal_term_values(mermin, build_named_state(NamedState::GHZ6));
  const ThresholdResult mermin_result = violation_threshold(mermin, mermin_ideal);
  // 32 p^6 = 8 crosses at p = 4^(-1/6).
  CHECK(mermin_result.p_star == Approx(std::pow(4.0, -1.0 / 6.0)).epsilon(1e-6));
  CHECK(std::abs(mermin_result.value_at_p_star - 8.0) < 1e-7);

  // The graph-state operators lose violation before the GHZ Mermin test does.
  CHECK(lc6_result.p_star < mermin_result.p_star);
}

TEST_CASE("violation_threshold rejects unusable inputs") {
  BellOperator b = lc6_bell();
  const std::vector<double> ideal = ideal_term_values(b, build_named_state(NamedState::LC6));
  CHECK_THROWS_AS(violation_threshold(b, ideal), std::invalid_argument);  // no bound attached
  b.lhv_bound = 20.0;  // unattainable: quantum value is 16
  CHECK_THROWS_AS(violation_threshold(b, ideal), std::domain_error);
}
