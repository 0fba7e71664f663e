#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polyaurn/urn.hpp"

namespace polyaurn {

// Exact distributions of the urn process and closed-form seat-vote curves.
// Everything here is deterministic and is used as an oracle for the sampler.

/// Regularized incomplete beta I_x(a, b) for integer a, b >= 1, evaluated as
/// the finite binomial tail sum. Throws std::domain_error for x outside [0,1].
double beta_cdf_int(unsigned a, unsigned b, double x);

/// Probability that n single-urn draws (one ball added per draw) starting
/// from `initial` add exactly `added[c]` balls of each colour c.
double dirichlet_multinomial_pmf(std::span<const Count> initial, unsigned n,
                                 std::span<const Count> added);

/// All compositions of n into `parts` nonnegative parts, in lexicographic order.
std::vector<std::vector<Count>> compositions(unsigned n, std::size_t parts);

/// Exact law of the full count matrix after a fixed number of steps.
struct ExactPmf {
  std::vector<std::vector<Count>> support;  // row-major N x m count matrices
  std::vector<double> probabilities;

  double total() const;
  /// Probability of `state`, 0 when it is not in the support.
  double probability_of(std::span<const Count> state) const;
};

/// Brute-force enumeration of the event tree (target urn, source urn, colour)
/// for `n_steps` steps from the config's initial allocation. Limited to
/// N <= 3, m <= 3, n_steps <= 8; throws std::length_error beyond that.
ExactPmf enumerate_multiurn(const SimulationConfig& config, unsigned n_steps);

/// y = x^k / (x^k + (1-x)^k). Throws std::domain_error for x outside [0,1].
double cube_curve(double k, double x);

/// Expected seat share for two i.i.d. Uniform[0,1] districts given mean x.
double seatvote_exact_N2(double x);

/// Irwin-Hall density of the sum of n i.i.d. Uniform[0,1] variables.
double irwin_hall_density(unsigned n, double s);

/// P(X_1 > 1/2 | mean of X_1..X_N = x) for i.i.d. Uniform[0,1] shares,
/// integrated numerically to 1e-8. Requires N >= 2 and x in (0,1).
double seatvote_numeric(unsigned num_districts, double x);

/// Adaptive Simpson quadrature of f on [a,b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

/// Central finite-difference derivative of f at x.
double central_difference(const std::function<double(double)>& f, double x, double h = 1e-4);

struct BetaCdf {
  unsigned a = 1;
  unsigned b = 1;
};
struct UniformCdf {};
struct CubeCurve {
  double k = 3.0;
};
struct SeatVoteN2 {};
struct SeatVoteN {
  unsigned num_districts = 2;
};

/// One of the closed-form curves above, callable on [0,1].
class AnalyticCurve {
 public:
  using Kind = std::variant<BetaCdf, UniformCdf, CubeCurve, SeatVoteN2, SeatVoteN>;

  AnalyticCurve(Kind kind);  // NOLINT(google-explicit-constructor)

  double operator()(double x) const;
  std::string name() const;
  const Kind& kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Writes "x,y" rows for `points` equally spaced x in [lo, hi].
void write_curve_csv(std::ostream& out, const AnalyticCurve& curve, std::size_t points,
                     double lo = 0.0, double hi = 1.0);

}  // namespace polyaurn
