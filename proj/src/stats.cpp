#include "polyaurn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace polyaurn {

double ReplicateRow::seat_share_party1() const {
  const auto total = std::accumulate(seats.begin(), seats.end(), std::uint64_t{0});
  return total == 0 ? 0.0 : static_cast<double>(seats.at(0)) / static_cast<double>(total);
}

namespace {

template <typename F>
std::vector<double> column(const ReplicateDataset& data, F&& get) {
  std::vector<double> out;
  out.reserve(data.rows.size());
  for (const auto& row : data.rows) out.push_back(get(row));
  return out;
}

}  // namespace

std::vector<double> ReplicateDataset::popular_share_party1() const {
  return column(*this, [](const ReplicateRow& r) { return r.popular_share_party1(); });
}
std::vector<double> ReplicateDataset::seat_share_party1() const {
  return column(*this, [](const ReplicateRow& r) { return r.seat_share_party1(); });
}
std::vector<double> ReplicateDataset::seats_party1() const {
  return column(*this, [](const ReplicateRow& r) { return static_cast<double>(r.seats.at(0)); });
}
std::vector<double> ReplicateDataset::district1_share() const {
  return column(*this, [](const ReplicateRow& r) { return r.district1_share; });
}
std::vector<double> ReplicateDataset::north_share() const {
  return column(*this, [](const ReplicateRow& r) { return r.north_share; });
}
std::vector<double> ReplicateDataset::south_share() const {
  return column(*this, [](const ReplicateRow& r) { return r.south_share; });
}

std::vector<std::size_t> histogram(std::span<const double> values, std::span<const double> edges) {
  if (edges.size() < 2) throw std::invalid_argument("histogram needs at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw std::invalid_argument("histogram edges must increase");
  }
  std::vector<std::size_t> counts(edges.size() - 1, 0);
  for (double v : values) {
    if (!(v >= edges.front() && v <= edges.back())) continue;
    if (v == edges.back()) {
      ++counts.back();
      continue;
    }
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
  }
  return counts;
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("invalid histogram range");
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  edges.back() = hi;
  return edges;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of empty sample");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("variance needs at least two values");
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return ss / static_cast<double>(values.size() - 1);
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("pearson: need at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SlopeFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("ols_fit: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("ols_fit: need at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_fit: x has zero variance");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / static_cast<double>(x.size()));
  fit.points_used = x.size();
  return fit;
}

SlopeFit central_slope_fit(const ReplicateDataset& data, double window_halfwidth) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : data.rows) {
    const double x = row.popular_share_party1();
    if (std::abs(x - 0.5) <= window_halfwidth) {
      xs.push_back(x);
      ys.push_back(row.seat_share_party1());
    }
  }
  if (xs.size() < 2) throw std::invalid_argument("central_slope_fit: fewer than two points in window");
  return ols_fit(xs, ys);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

double cube_exponent_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("cube_exponent_fit: length mismatch");
  double sxy = 0.0;
  double sxx = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && x[i] < 1.0 && y[i] > 0.0 && y[i] < 1.0)) continue;
    const double lx = logit(x[i]);
    sxy += lx * logit(y[i]);
    sxx += lx * lx;
    ++used;
  }
  if (used < 2 || sxx == 0.0) {
    throw std::invalid_argument("cube_exponent_fit: fewer than two usable points");
  }
  return sxy / sxx;
}

double cube_exponent_fit(const ReplicateDataset& data) {
  return cube_exponent_fit(data.popular_share_party1(), data.seat_share_party1());
}

SlopeFit swing_regression(std::span<const SwingRecord> records) {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(records.size());
  ys.reserve(records.size());
  for (const auto& r : records) {
    xs.push_back(r.original_district_share);
    ys.push_back(r.local_swing - r.national_swing);
  }
  return ols_fit(xs, ys);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const auto rank = static_cast<double>(i);
    d = std::max({d, (rank + 1.0) / n - f, f - rank / n});
  }
  return d;
}

double ks_statistic(std::span<const double> samples, const AnalyticCurve& cdf) {
  return ks_statistic(samples, [&cdf](double x) { return cdf(x); });
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ks_critical_value");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

ChiSquare chi_square_statistic(std::span<const std::size_t> observed,
                               std::span<const double> expected_probabilities) {
  if (observed.size() != expected_probabilities.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_statistic: size mismatch");
  }
  const auto total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::size_t{0}));
  if (total == 0.0) throw std::invalid_argument("chi_square_statistic: no observations");

  // Pool sparse tails so the asymptotic distribution is usable.
  struct Cell {
    double obs = 0.0;
    double exp = 0.0;
  };
  std::vector<Cell> cells;
  Cell acc;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc.obs += static_cast<double>(observed[i]);
    acc.exp += expected_probabilities[i] * total;
    if (acc.exp >= 5.0) {
      cells.push_back(acc);
      acc = {};
    }
  }
  if (acc.exp > 0.0 || acc.obs > 0.0) {
    if (cells.empty()) {
      cells.push_back(acc);
    } else {
      cells.back().obs += acc.obs;
      cells.back().exp += acc.exp;
    }
  }
  if (cells.size() < 2) throw std::invalid_argument("chi_square_statistic: too few usable cells");

  ChiSquare out;
  for (const auto& c : cells) out.statistic += (c.obs - c.exp) * (c.obs - c.exp) / c.exp;
  out.degrees_of_freedom = cells.size() - 1;
  return out;
}

double chi_square_critical_value(std::size_t df, double alpha) {
  boost::math::chi_squared dist(static_cast<double>(df));
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

std::vector<double> binomial_pmf(std::size_t n, double q) {
  std::vector<double> pmf(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double log_c = std::lgamma(static_cast<double>(n) + 1.0) -
                         std::lgamma(static_cast<double>(k) + 1.0) -
                         std::lgamma(static_cast<double>(n - k) + 1.0);
    pmf[k] = std::exp(log_c + static_cast<double>(k) * std::log(q) +
                      static_cast<double>(n - k) * std::log1p(-q));
  }
  return pmf;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace polyaurn
