#include "doctest.h"

#include <cmath>

#include "ere/error.hpp"
#include "ere/scan.hpp"
#include "properties.hpp"

using namespace ere;

TEST_CASE("parameter grids are decimal rounded and inclusive") {
  const auto g = parameter_grid(0.94, 1.04, 0.01);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == 0.94);
  CHECK(g[5] == 0.99);
  CHECK(g.back() == 1.04);
  CHECK(parameter_grid(0.5, 1.5, 0.1).size() == 11);
  CHECK_THROWS_AS(parameter_grid(1.0, 0.5, 0.1), ConfigError);
  CHECK_THROWS_AS(parameter_grid(0.0, 1.0, 0.0), ConfigError);
}

TEST_CASE("a sweep without refinement is crossing_matrix followed by critical_bracket") {
  SweepConfig cfg;
  cfg.base = ModelSpec::transverse_ising(1.0, 8);
  cfg.start = 0.5;
  cfg.stop = 1.5;
  const auto res = sweep(cfg);
  REQUIRE(res.levels.size() == 1);
  const auto grid = parameter_grid(0.5, 1.5, 0.1);
  const auto m = crossing_matrix(cfg.base, "g", grid, Partition::equal(8));
  const auto b = critical_bracket(m);
  CHECK(res.final_level().grid == grid);
  CHECK(res.final_level().bracket.lo == b.lo);
  CHECK(res.final_level().bracket.hi == b.hi);
  CHECK(res.final_level().bracket.rule == b.rule);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) CHECK(res.final_level().matrix.at(i, j).crossings == m.at(i, j).crossings);
  }
  CHECK(b.lo <= 1.0);
  CHECK(b.hi >= 1.0);
}

TEST_CASE("sweep configuration errors") {
  SweepConfig cfg;
  cfg.refine_levels = kMaxRefineLevels + 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.stop = cfg.start;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.base = ModelSpec::transverse_ising(1.0, 8);
  cfg.start = 1.2;
  cfg.stop = 1.5;
  CHECK_THROWS_AS(sweep(cfg), NoSignalError);
}

TEST_CASE("refinement levels nest and shrink on synthetic spectra") {
  const auto r = props::bracket_nesting(99, 60, 1);
  CHECK_MESSAGE(r.ok(), r.first_failure);
  const auto res = sweep(props::synthetic_provider(1.2345, 3.0), 0.0, 1.5, 0.1, 3, ScanOptions{});
  REQUIRE(res.levels.size() == 4);
  CHECK(res.levels[1].step == doctest::Approx(0.01));
  CHECK(res.levels[3].step == doctest::Approx(0.0001));
}

TEST_CASE("inverse power fits are exact on synthetic data") {
  const std::vector<int> sizes{6, 8, 10, 12};
  for (double p : {1.0, 2.0}) {
    std::vector<double> y;
    for (int n : sizes) y.push_back(0.97 + 0.4 * std::pow(n, -p));
    const auto fit = fit_inverse_power(sizes, y, p);
    CHECK(fit.intercept == doctest::Approx(0.97).epsilon(1e-10));
    CHECK(fit.slope == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(fit.residual < 1e-20);
  }
  // noisy data: the residual is the sum of squared deviations
  const std::vector<double> y{1.0, 0.0, 1.0, 0.0};
  const auto fit = fit_inverse_power(sizes, y, 1.0);
  double ss = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double d = y[i] - fit.intercept - fit.slope / sizes[i];
    ss += d * d;
  }
  CHECK(fit.residual == doctest::Approx(ss).epsilon(1e-12));
  CHECK_THROWS_AS(fit_inverse_power({6}, {1.0}, 1.0), UsageError);
  CHECK_THROWS_AS(fit_inverse_power(sizes, y, 0.0), ConfigError);
}

TEST_CASE("finite-size scaling input checks") {
  SweepConfig t;
  CHECK_THROWS_AS(finite_size_scaling({6, 8}, t), UsageError);
  CHECK_THROWS_AS(finite_size_scaling({6, 7, 8}, t), ConfigError);
  CHECK_THROWS_AS(finite_size_scaling({8, 6, 10}, t), ConfigError);
}

TEST_CASE("finite differences") {
  const std::vector<double> x{0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> lin, quad;
  for (double v : x) {
    lin.push_back(3.0 * v - 1.0);
    quad.push_back(v * v);
  }
  for (double d : finite_difference(x, lin)) CHECK(d == doctest::Approx(3.0).epsilon(1e-10));
  const auto dq = finite_difference(x, quad);
  // central differences are exact on quadratics in the interior
  for (std::size_t i = 1; i + 1 < x.size(); ++i) CHECK(dq[i] == doctest::Approx(2.0 * x[i]).epsilon(1e-12));
  CHECK_THROWS_AS(finite_difference({0.0, 1.0}, {0.0, 1.0}), UsageError);
}

TEST_CASE("derivative curves") {
  // a constant spectrum has a vanishing derivative
  const SpectrumProvider flat = [](double) { return EntanglementSpectrum::from_probs({0.6, 0.4}); };
  const auto t = derivative_curve(flat, {1.0, 1.1, 1.2, 1.3}, {0.5, 1.0, 2.0});
  for (const auto& row : t.derivative) {
    for (double d : row) CHECK(std::abs(d) < 1e-12);
  }
  CHECK_THROWS_AS(derivative_curve(flat, {1.0, 1.1}, {1.0}), UsageError);
  CHECK_THROWS_AS(derivative_curve(flat, {1.0, 1.1, 1.5}, {1.0}), ConfigError);

  // Ising: dS_1/dg is most negative close to the critical point
  const auto grid = parameter_grid(0.6, 1.4, 0.05);
  const auto d = derivative_curve(ModelSpec::transverse_ising(1.0, 10), "g", grid, {1.0}, Partition::equal(10));
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (d.derivative[i][0] < d.derivative[best][0]) best = i;
  }
  CHECK(std::abs(grid[best] - 1.0) <= 0.15);
}

TEST_CASE("ground vs first excited state in both phases") {
  const auto rows = excited_state_comparison(ModelSpec::transverse_ising(1.0, 10), "g", {0.6, 1.4}, Partition::equal(10));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].record.status == CrossStatus::Crossed);
  CHECK(rows[1].record.status == CrossStatus::NoCross);
  CHECK(rows[1].gap > 0.1);
}
