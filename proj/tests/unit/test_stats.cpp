#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "polyaurn/stats.hpp"

using namespace polyaurn;

TEST_CASE("histogram bins are half open except the last") {
  const std::vector<double> edges{0.0, 0.5, 1.0};
  CHECK(histogram(std::vector<double>{0.5}, edges) == std::vector<std::size_t>{0, 1});
  CHECK(histogram(std::vector<double>{}, edges) == std::vector<std::size_t>{0, 0});
  CHECK(histogram(std::vector<double>{0.0, 1.0, 0.25}, edges) == std::vector<std::size_t>{2, 1});
}

TEST_CASE("histogram of uniform samples stays within 5 sigma per bin") {
  Rng rng(17);
  std::vector<double> xs(1000);
  for (auto& x : xs) x = rng.uniform01();
  const auto counts = histogram(xs, uniform_edges(0.0, 1.0, 10));
  const double sigma = std::sqrt(1000 * 0.1 * 0.9);
  for (auto c : counts) CHECK(std::abs(static_cast<double>(c) - 100.0) < 5 * sigma);
}

TEST_CASE("pearson") {
  const std::vector<double> a{1, 2, 3};
  CHECK(*pearson(a, a) == doctest::Approx(1.0));
  CHECK(*pearson(a, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(*pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 4}) ==
        doctest::Approx(0.8));
  CHECK_FALSE(pearson(a, std::vector<double>{2, 2, 2}).has_value());
}

TEST_CASE("property: pearson is invariant under positive affine maps") {
  Rng gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(20);
    std::vector<double> y(20);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = gen.uniform01();
      y[i] = x[i] + gen.uniform01();
    }
    const double a = 0.1 + 10 * gen.uniform01();
    const double b = gen.uniform01() - 0.5;
    std::vector<double> yt(y);
    for (auto& v : yt) v = a * v + b;
    const auto r = *pearson(x, y);
    CHECK(*pearson(x, yt) == doctest::Approx(r).epsilon(1e-12));
    for (auto& v : yt) v = -v;
    CHECK(*pearson(x, yt) == doctest::Approx(-r).epsilon(1e-12));
    CHECK(std::abs(r) <= 1.0 + 1e-12);
  }
}

TEST_CASE("ols slope on exact lines") {
  const std::vector<double> x{0.3, 0.45, 0.5, 0.55, 0.7};
  std::vector<double> y;
  for (double v : x) y.push_back(0.5 + 3 * (v - 0.5));
  const auto fit = ols_fit(x, y);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.residual_rms < 1e-12);
  const auto sym = ols_fit(std::vector<double>{0.4, 0.5, 0.6}, std::vector<double>{0.3, 0.5, 0.7});
  CHECK(sym.slope == doctest::Approx(2.0));
}

TEST_CASE("central_slope_fit honours the window") {
  ReplicateDataset data{4, 2, {}};
  const std::vector<std::pair<double, std::uint64_t>> points{{0.45, 1}, {0.5, 2}, {0.55, 3}, {0.9, 0}};
  for (const auto& [v, s] : points) {
    ReplicateRow row;
    row.popular_shares = {v, 1 - v};
    row.seats = {s, 4 - s};
    data.rows.push_back(row);
  }
  const auto windowed = central_slope_fit(data, 0.1);
  CHECK(windowed.points_used == 3);
  CHECK(windowed.slope == doctest::Approx(5.0));
  CHECK(central_slope_fit(data).points_used == 4);
}

TEST_CASE("cube exponent recovers the generating k") {
  const std::vector<double> x{0.3, 0.45, 0.55, 0.7};
  std::vector<double> y;
  for (double v : x) y.push_back(cube_curve(3.0, v));
  CHECK(std::abs(cube_exponent_fit(x, y) - 3.0) < 1e-12);
  CHECK(cube_exponent_fit(x, x) == doctest::Approx(1.0));
}

TEST_CASE("swing regression") {
  SUBCASE("uniform swing") {
    const std::vector<SwingRecord> recs{{0.25, 0.02, 0.02}, {0.5, 0.02, 0.02}, {0.75, 0.02, 0.02}};
    const auto fit = swing_regression(recs);
    CHECK(fit.slope == doctest::Approx(0.0));
    CHECK(fit.intercept == doctest::Approx(0.0));
  }
  SUBCASE("proportional swing") {
    std::vector<SwingRecord> recs;
    for (double s : {0.25, 0.5, 0.75}) recs.push_back({s, 0.02 * s / 0.5, 0.02});
    // Excess swing is (-0.01, 0, 0.01) over shares spaced 0.25 apart.
    CHECK(swing_regression(recs).slope == doctest::Approx(0.04));
  }
}

TEST_CASE("ks statistic") {
  const AnalyticCurve uniform{UniformCdf{}};
  CHECK(ks_statistic(std::vector<double>{0.5}, uniform) == doctest::Approx(0.5));
  CHECK(ks_statistic(std::vector<double>{0.25, 0.75}, uniform) == doctest::Approx(0.25));
  CHECK(ks_critical_value(1000, 0.01) == doctest::Approx(1.6276 / std::sqrt(1000.0)).epsilon(1e-3));
}

TEST_CASE("ks accepts true Beta(2,2) samples at the 1% level") {
  // The median of three uniforms is Beta(2,2).
  const AnalyticCurve beta{BetaCdf{2, 2}};
  Rng rng(123);
  int accepted = 0;
  constexpr int kTrials = 300;
  for (int t = 0; t < kTrials; ++t) {
    std::vector<double> xs(1000);
    for (auto& x : xs) {
      double u[3] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
      std::sort(u, u + 3);
      x = u[1];
    }
    accepted += ks_statistic(xs, beta) < 0.0515;
  }
  CHECK(accepted >= kTrials * 99 / 100 - 3);  // allows sampling slack on the 1% tail
}

TEST_CASE("property: ks median shrinks with sample size") {
  const AnalyticCurve uniform{UniformCdf{}};
  Rng rng(2);
  auto median_d = [&](std::size_t n) {
    std::vector<double> ds;
    for (int t = 0; t < 101; ++t) {
      std::vector<double> xs(n);
      for (auto& x : xs) x = rng.uniform01();
      ds.push_back(ks_statistic(xs, uniform));
    }
    std::nth_element(ds.begin(), ds.begin() + 50, ds.end());
    return ds[50];
  };
  const double d100 = median_d(100);
  const double d1000 = median_d(1000);
  const double d10000 = median_d(10000);
  CHECK(d1000 < d100);
  CHECK(d10000 < d1000);
}

TEST_CASE("chi-square against the binomial law") {
  const auto pmf = binomial_pmf(10, 0.5);
  double total = 0.0;
  for (double v : pmf) total += v;
  CHECK(total == doctest::Approx(1.0));
  CHECK(pmf[5] == doctest::Approx(252.0 / 1024.0));

  Rng rng(9);
  std::vector<std::size_t> observed(11, 0);
  for (int i = 0; i < 5000; ++i) {
    int heads = 0;
    for (int j = 0; j < 10; ++j) heads += rng.bernoulli(0.5);
    ++observed[heads];
  }
  const auto chi = chi_square_statistic(observed, pmf);
  CHECK(chi.degrees_of_freedom >= 5);
  CHECK(chi.statistic < chi_square_critical_value(chi.degrees_of_freedom, 0.001));
  CHECK(chi_square_critical_value(1, 0.05) == doctest::Approx(3.841).epsilon(1e-3));

  std::vector<std::size_t> skewed(11, 0);
  skewed[0] = 5000;
  CHECK(chi_square_statistic(skewed, pmf).statistic >
        chi_square_critical_value(chi.degrees_of_freedom, 0.001));
}

TEST_CASE("total variation") {
  CHECK(total_variation(std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.5}) == 0.0);
  CHECK(total_variation(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}) == 1.0);
  CHECK(total_variation(std::vector<double>{0.7, 0.3}, std::vector<double>{0.5, 0.5}) ==
        doctest::Approx(0.2));
}
