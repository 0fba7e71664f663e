#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "polyaurn/analytic.hpp"

using namespace polyaurn;

namespace {

// Sums the probability of every ordered draw sequence whose colour tally is `added`.
double sequence_oracle(std::vector<Count> urn, unsigned n, const std::vector<Count>& added) {
  std::function<double(std::vector<Count>&, std::vector<Count>&, unsigned)> walk =
      [&](std::vector<Count>& cur, std::vector<Count>& got, unsigned left) -> double {
    if (left == 0) return got == added ? 1.0 : 0.0;
    const auto total = std::accumulate(cur.begin(), cur.end(), Count{0});
    double p = 0.0;
    for (std::size_t c = 0; c < cur.size(); ++c) {
      if (cur[c] == 0 || got[c] == added[c]) continue;
      const double w = static_cast<double>(cur[c]) / static_cast<double>(total);
      ++cur[c];
      ++got[c];
      p += w * walk(cur, got, left - 1);
      --cur[c];
      --got[c];
    }
    return p;
  };
  std::vector<Count> got(urn.size(), 0);
  return walk(urn, got, n);
}

SimulationConfig small_config(std::size_t n, double p, std::vector<AllocationBlock> blocks,
                              std::size_t m = 2) {
  SimulationConfig c;
  c.num_districts = n;
  c.num_colours = m;
  c.imitation_prob = p;
  c.initial_allocation.blocks = std::move(blocks);
  c.target_total_balls = c.initial_allocation.total_balls();
  return c;
}

// Triangle density of the sum of two uniforms.
double triangle(double s) {
  if (s <= 0.0 || s >= 2.0) return 0.0;
  return s < 1.0 ? s : 2.0 - s;
}

// P(X1 > 1/2 | X1+X2+X3 = 3x) by midpoint rule over the conditional density.
double seatvote3_riemann(double x) {
  constexpr int kCells = 400'000;
  double above = 0.0;
  double all = 0.0;
  for (int i = 0; i < kCells; ++i) {
    const double t = (i + 0.5) / kCells;
    const double w = triangle(3 * x - t);
    all += w;
    if (t > 0.5) above += w;
  }
  return above / all;
}

}  // namespace

TEST_CASE("integer beta cdf") {
  CHECK(beta_cdf_int(1, 1, 0.3) == doctest::Approx(0.3));
  CHECK(beta_cdf_int(2, 2, 0.5) == doctest::Approx(0.5));
  CHECK(beta_cdf_int(2, 1, 0.5) == doctest::Approx(0.25));
  CHECK(beta_cdf_int(3, 2, 0.0) == 0.0);
  CHECK(beta_cdf_int(3, 2, 1.0) == 1.0);
  CHECK_THROWS_AS(beta_cdf_int(2, 2, 1.5), std::domain_error);
  // Beta(2,2) cdf is 3x^2 - 2x^3.
  for (double x : {0.1, 0.37, 0.8}) CHECK(beta_cdf_int(2, 2, x) == doctest::Approx(3 * x * x - 2 * x * x * x));
}

TEST_CASE("dirichlet-multinomial pmf matches sequence enumeration") {
  const std::vector<Count> a11{1, 1};
  CHECK(dirichlet_multinomial_pmf(a11, 1, std::vector<Count>{1, 0}) == doctest::Approx(0.5));
  CHECK(dirichlet_multinomial_pmf(a11, 2, std::vector<Count>{1, 1}) == doctest::Approx(1.0 / 3.0));
  CHECK(dirichlet_multinomial_pmf(std::vector<Count>{2, 1}, 1, std::vector<Count>{0, 1}) ==
        doctest::Approx(1.0 / 3.0));

  for (const std::vector<Count>& init : {std::vector<Count>{1, 1}, std::vector<Count>{2, 1, 3},
                                        std::vector<Count>{0, 2, 2}}) {
    for (unsigned n = 0; n <= 5; ++n) {
      for (const auto& added : compositions(n, init.size())) {
        CHECK(dirichlet_multinomial_pmf(init, n, added) ==
              doctest::Approx(sequence_oracle(init, n, added)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("property: dirichlet-multinomial pmf sums to one") {
  for (const std::vector<Count>& init : {std::vector<Count>{1, 1}, std::vector<Count>{3, 1, 2},
                                        std::vector<Count>{1, 1, 1, 1}}) {
    for (unsigned n = 0; n <= 8; ++n) {
      double total = 0.0;
      for (const auto& added : compositions(n, init.size())) total += dirichlet_multinomial_pmf(init, n, added);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("compositions") {
  CHECK(compositions(2, 2) == std::vector<std::vector<Count>>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(compositions(4, 3).size() == 15);
}

TEST_CASE("enumerate_multiurn") {
  SUBCASE("p = 1, one step: urn 0 gains colour 0 with probability 1/4") {
    const auto pmf = enumerate_multiurn(small_config(2, 1.0, {{2, {1, 1}}}), 1);
    CHECK(pmf.probability_of(std::vector<Count>{2, 1, 1, 1}) == doctest::Approx(0.25));
    CHECK(pmf.total() == doctest::Approx(1.0));
  }
  SUBCASE("p = 0.3 agrees with the hand computation") {
    const auto pmf = enumerate_multiurn(small_config(2, 0.3, {{1, {2, 1}}, {1, {1, 1}}}), 1);
    CHECK(pmf.probability_of(std::vector<Count>{3, 1, 1, 1}) ==
          doctest::Approx(0.5 * (0.7 * 2.0 / 3.0 + 0.3 * 0.5)));
  }
  SUBCASE("N = 1 reduces to the dirichlet-multinomial law") {
    const std::vector<Count> a{1, 1};
    const auto pmf = enumerate_multiurn(small_config(1, 0.0, {{1, a}}), 2);
    for (const auto& added : compositions(2, 2)) {
      const std::vector<Count> state{a[0] + added[0], a[1] + added[1]};
      CHECK(pmf.probability_of(state) == doctest::Approx(dirichlet_multinomial_pmf(a, 2, added)));
    }
  }
  SUBCASE("property: total mass is one") {
    for (double p : {0.0, 0.3, 1.0}) {
      for (unsigned steps = 0; steps <= 5; ++steps) {
        const auto pmf = enumerate_multiurn(small_config(3, p, {{1, {1, 0, 2}}, {2, {1, 1, 1}}}, 3), steps);
        CHECK(pmf.total() == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
  SUBCASE("size guard") {
    CHECK_THROWS_AS(enumerate_multiurn(small_config(4, 0.0, {{4, {1, 1}}}), 2), std::length_error);
    CHECK_THROWS_AS(enumerate_multiurn(small_config(2, 0.0, {{2, {1, 1}}}), 9), std::length_error);
  }
}

TEST_CASE("cube curve") {
  for (double k : {0.5, 1.0, 3.0, 30.0}) CHECK(cube_curve(k, 0.5) == 0.5);
  CHECK(cube_curve(3.0, 0.6) == doctest::Approx(27.0 / 35.0));
  const auto f = [](double x) { return cube_curve(3.0, x); };
  CHECK(std::abs(central_difference(f, 0.5, 1e-6) - 3.0) < 1e-6);
  CHECK_THROWS_AS(cube_curve(3.0, -0.1), std::domain_error);
}

TEST_CASE("exact N = 2 seat-vote curve") {
  CHECK(seatvote_exact_N2(0.2) == 0.0);
  CHECK(seatvote_exact_N2(0.5) == doctest::Approx(0.5));
  CHECK(seatvote_exact_N2(0.6) == doctest::Approx(0.625));
  CHECK(seatvote_exact_N2(0.9) == 1.0);
}

TEST_CASE("numeric seat-vote curve") {
  for (double x : {0.1, 0.26, 0.4, 0.5, 0.63, 0.75, 0.9}) {
    CHECK(std::abs(seatvote_numeric(2, x) - seatvote_exact_N2(x)) < 1e-8);
  }
  for (double x : {0.2, 0.35, 0.5, 0.6, 0.8}) {
    CHECK(std::abs(seatvote_numeric(3, x) - seatvote3_riemann(x)) < 1e-5);
  }
  const auto n2 = [](double x) { return seatvote_numeric(2, x); };
  const auto n3 = [](double x) { return seatvote_numeric(3, x); };
  CHECK(std::abs(central_difference(n2, 0.5) - 1.0) < 1e-3);
  CHECK(std::abs(central_difference(n3, 0.5) - 2.0) < 1e-3);
  CHECK_THROWS(seatvote_numeric(1, 0.5));
}

TEST_CASE("property: curves are symmetric and monotone") {
  const std::vector<AnalyticCurve::Kind> kinds{CubeCurve{3.0}, CubeCurve{30.0}, SeatVoteN2{}, SeatVoteN{3},
                                                SeatVoteN{5}, BetaCdf{2, 2}, UniformCdf{}};
  for (const auto& kind : kinds) {
    const AnalyticCurve curve(kind);
    double prev = -1.0;
    for (int i = 1; i < 100; ++i) {
      const double x = i / 100.0;
      const double y = curve(x);
      CHECK(y >= prev - 1e-12);
      CHECK(y + curve(1.0 - x) == doctest::Approx(1.0).epsilon(1e-8));
      prev = y;
    }
  }
}

TEST_CASE("irwin-hall density integrates to one") {
  for (unsigned n : {1u, 2u, 3u, 6u}) {
    const auto f = [n](double s) { return irwin_hall_density(n, s); };
    double total = 0.0;
    for (unsigned j = 0; j < n; ++j) total += adaptive_simpson(f, j, j + 1.0, 1e-12);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("curve csv output") {
  std::ostringstream out;
  write_curve_csv(out, AnalyticCurve{CubeCurve{3.0}}, 3);
  const auto text = out.str();
  CHECK(text.find("0.5,0.5") != std::string::npos);
  CHECK(AnalyticCurve{CubeCurve{3.0}}.name().find("cube") != std::string::npos);
}
