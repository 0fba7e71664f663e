#include "polyaurn/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "polyaurn/number_format.hpp"

namespace polyaurn {

namespace {

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(std::string(what) + ": x outside [0,1]");
}

long double rising(long double base, Count k) {
  long double r = 1.0L;
  for (Count i = 0; i < k; ++i) r *= base + static_cast<long double>(i);
  return r;
}

}  // namespace

double beta_cdf_int(unsigned a, unsigned b, double x) {
  if (a < 1 || b < 1) throw std::domain_error("beta_cdf_int: parameters must be >= 1");
  require_unit_interval(x, "beta_cdf_int");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  // I_x(a,b) = P(Binomial(a+b-1, x) >= a)
  const unsigned n = a + b - 1;
  long double sum = 0.0L;
  long double binom = 1.0L;  // C(n, j), built up incrementally
  for (unsigned j = 0; j <= n; ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    if (j >= a) {
      sum += binom * std::pow(static_cast<long double>(x), j) *
             std::pow(1.0L - static_cast<long double>(x), n - j);
    }
  }
  return static_cast<double>(std::clamp(sum, 0.0L, 1.0L));
}

double dirichlet_multinomial_pmf(std::span<const Count> initial, unsigned n,
                                 std::span<const Count> added) {
  if (initial.size() != added.size()) {
    throw std::invalid_argument("dirichlet_multinomial_pmf: colour counts differ in length");
  }
  const Count added_total = std::accumulate(added.begin(), added.end(), Count{0});
  if (added_total != n) {
    throw std::invalid_argument("dirichlet_multinomial_pmf: counts must sum to n");
  }
  const Count a_total = std::accumulate(initial.begin(), initial.end(), Count{0});
  if (a_total == 0) throw std::invalid_argument("dirichlet_multinomial_pmf: empty urn");

  // n! / prod k_c! * prod rising(a_c, k_c) / rising(A, n)
  long double p = 1.0L / rising(static_cast<long double>(a_total), n);
  unsigned placed = 0;
  for (std::size_t c = 0; c < initial.size(); ++c) {
    for (Count i = 1; i <= added[c]; ++i) {
      ++placed;
      p *= static_cast<long double>(placed) / static_cast<long double>(i);
    }
    p *= rising(static_cast<long double>(initial[c]), added[c]);
  }
  return static_cast<double>(p);
}

std::vector<std::vector<Count>> compositions(unsigned n, std::size_t parts) {
  std::vector<std::vector<Count>> out;
  if (parts == 0) return out;
  std::vector<Count> cur(parts, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t idx, unsigned left) {
    if (idx + 1 == parts) {
      cur[idx] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      cur[idx] = k;
      rec(idx + 1, left - k);
    }
  };
  rec(0, n);
  return out;
}

double ExactPmf::total() const {
  long double s = 0.0L;
  for (double p : probabilities) s += p;
  return static_cast<double>(s);
}

double ExactPmf::probability_of(std::span<const Count> state) const {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (std::equal(support[i].begin(), support[i].end(), state.begin(), state.end())) {
      return probabilities[i];
    }
  }
  return 0.0;
}

ExactPmf enumerate_multiurn(const SimulationConfig& config, unsigned n_steps) {
  if (config.num_districts > 3 || config.num_colours > 3 || n_steps > 8) {
    throw std::length_error("enumerate_multiurn: limited to N <= 3, m <= 3, n_steps <= 8");
  }
  SimulationConfig sized = config;
  sized.target_total_balls =
      std::max(config.target_total_balls, config.initial_allocation.total_balls());
  const UrnState start = init_state(sized);
  const std::size_t n = start.num_districts();
  const std::size_t m = start.num_colours();
  const double p = config.imitation_prob;
  const Count k = config.reinforcement;

  std::map<std::vector<Count>, long double> layer;
  layer[std::vector<Count>(start.counts().begin(), start.counts().end())] = 1.0L;

  for (unsigned s = 0; s < n_steps; ++s) {
    std::map<std::vector<Count>, long double> next;
    for (const auto& [counts, prob] : layer) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          long double source_prob;
          if (n == 1) {
            source_prob = 1.0L;
          } else if (v == u) {
            source_prob = 1.0L - p;
          } else {
            source_prob = static_cast<long double>(p) / static_cast<long double>(n - 1);
          }
          if (source_prob == 0.0L) continue;
          Count v_total = 0;
          for (std::size_t c = 0; c < m; ++c) v_total += counts[v * m + c];
          for (std::size_t c = 0; c < m; ++c) {
            const Count balls = counts[v * m + c];
            if (balls == 0) continue;
            const long double branch = prob / static_cast<long double>(n) * source_prob *
                                       static_cast<long double>(balls) /
                                       static_cast<long double>(v_total);
            auto child = counts;
            child[u * m + c] += k;
            next[std::move(child)] += branch;
          }
        }
      }
    }
    layer = std::move(next);
  }

  ExactPmf pmf;
  pmf.support.reserve(layer.size());
  pmf.probabilities.reserve(layer.size());
  for (auto& [counts, prob] : layer) {
    pmf.support.push_back(counts);
    pmf.probabilities.push_back(static_cast<double>(prob));
  }
  return pmf;
}

double cube_curve(double k, double x) {
  require_unit_interval(x, "cube_curve");
  const double a = std::pow(x, k);
  const double b = std::pow(1.0 - x, k);
  return a / (a + b);
}

double seatvote_exact_N2(double x) {
  require_unit_interval(x, "seatvote_exact_N2");
  if (x <= 0.25) return 0.0;
  if (x <= 0.5) return 1.0 - 1.0 / (4.0 * x);
  if (x <= 0.75) return 1.0 / (4.0 * (1.0 - x));
  return 1.0;
}

namespace {

// Polynomial form of the n-fold Irwin-Hall density valid for y in [knot, knot + 1].
long double irwin_hall_piece(unsigned n, long double y, unsigned knot) {
  if (n == 1) return knot == 0 ? 1.0L : 0.0L;
  long double sum = 0.0L;
  long double binom = 1.0L;
  for (unsigned j = 0; j <= std::min(knot, n); ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    const long double term = binom * std::pow(y - j, n - 1);
    sum += (j % 2 == 0) ? term : -term;
  }
  long double fact = 1.0L;
  for (unsigned i = 2; i < n; ++i) fact *= i;
  return sum / fact;
}

}  // namespace

double irwin_hall_density(unsigned n, double s) {
  if (n == 0) throw std::domain_error("irwin_hall_density: n must be >= 1");
  if (s < 0.0 || s > static_cast<double>(n)) return 0.0;
  const auto knot = std::min(static_cast<unsigned>(std::floor(s)), n - 1);
  return static_cast<double>(std::max(irwin_hall_piece(n, s, knot), 0.0L));
}

namespace {

double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Integral over t in [lo, hi] of the n-fold Irwin-Hall density at s - t.
// The range is split at the integer knots of s - t and each piece is
// integrated with the single polynomial that is valid on it.
double convolution_integral(unsigned n, double s, double lo, double hi, double tol) {
  std::vector<double> cuts{lo, hi};
  for (int j = static_cast<int>(std::floor(s - hi)); j <= static_cast<int>(std::ceil(s - lo)); ++j) {
    const double t = s - j;
    if (t > lo && t < hi) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (b <= a) continue;
    const double y_mid = s - 0.5 * (a + b);
    if (y_mid < 0.0 || y_mid > static_cast<double>(n)) continue;
    const auto knot = static_cast<unsigned>(std::floor(y_mid));
    auto piece = [n, s, knot](double t) {
      return static_cast<double>(irwin_hall_piece(n, static_cast<long double>(s) - t, knot));
    };
    total += adaptive_simpson(piece, a, b, tol);
  }
  return total;
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double seatvote_numeric(unsigned num_districts, double x) {
  if (num_districts < 2) throw std::domain_error("seatvote_numeric: need N >= 2");
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("seatvote_numeric: x outside (0,1)");
  const unsigned rest = num_districts - 1;
  const double s = static_cast<double>(num_districts) * x;
  constexpr double kTol = 1e-12;
  const double win = convolution_integral(rest, s, 0.5, 1.0, kTol);
  const double all = win + convolution_integral(rest, s, 0.0, 0.5, kTol);
  if (all <= 0.0) return x > 0.5 ? 1.0 : 0.0;
  return std::clamp(win / all, 0.0, 1.0);
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

AnalyticCurve::AnalyticCurve(Kind kind) : kind_(kind) {
  if (const auto* beta = std::get_if<BetaCdf>(&kind_); beta && (beta->a < 1 || beta->b < 1)) {
    throw std::domain_error("beta parameters must be positive integers");
  }
  if (const auto* cube = std::get_if<CubeCurve>(&kind_); cube && !(cube->k > 0.0)) {
    throw std::domain_error("cube curve exponent must be positive");
  }
  if (const auto* sv = std::get_if<SeatVoteN>(&kind_); sv && sv->num_districts < 2) {
    throw std::domain_error("seat-vote curve needs N >= 2");
  }
}

double AnalyticCurve::operator()(double x) const {
  struct Visitor {
    double x;
    double operator()(const BetaCdf& b) const { return beta_cdf_int(b.a, b.b, x); }
    double operator()(const UniformCdf&) const { return std::clamp(x, 0.0, 1.0); }
    double operator()(const CubeCurve& c) const { return cube_curve(c.k, x); }
    double operator()(const SeatVoteN2&) const { return seatvote_exact_N2(x); }
    double operator()(const SeatVoteN& s) const {
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return seatvote_numeric(s.num_districts, x);
    }
  };
  return std::visit(Visitor{x}, kind_);
}

std::string AnalyticCurve::name() const {
  struct Visitor {
    std::string operator()(const BetaCdf& b) const {
      return "beta_cdf(" + std::to_string(b.a) + "," + std::to_string(b.b) + ")";
    }
    std::string operator()(const UniformCdf&) const { return "uniform_cdf"; }
    std::string operator()(const CubeCurve& c) const { return "cube_curve(" + format_number(c.k) + ")"; }
    std::string operator()(const SeatVoteN2&) const { return "seatvote_N2"; }
    std::string operator()(const SeatVoteN& s) const {
      return "seatvote_N(" + std::to_string(s.num_districts) + ")";
    }
  };
  return std::visit(Visitor{}, kind_);
}

void write_curve_csv(std::ostream& out, const AnalyticCurve& curve, std::size_t points, double lo,
                     double hi) {
  if (points < 2) throw std::invalid_argument("curve export needs at least 2 points");
  out << "x,y\n";
  for (std::size_t i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    out << format_number(x) << ',' << format_number(curve(x)) << '\n';
  }
}

}  // namespace polyaurn
