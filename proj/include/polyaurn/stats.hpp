#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polyaurn/analytic.hpp"

namespace polyaurn {

/// Per-replicate summary of one simulated election. Party 1 is colour 0.
struct ReplicateRow {
  std::uint64_t replicate_id = 0;
  std::uint64_t seed = 0;
  std::vector<double> popular_shares;  // one per colour
  std::vector<std::uint64_t> seats;    // one per colour
  double district1_share = 0.0;        // colour 0 share in district 1
  double north_share = 0.0;            // colour 0 share over the first half
  double south_share = 0.0;
  std::vector<double> district_shares;  // optional colour 0 share per district

  double popular_share_party1() const { return popular_shares.at(0); }
  double seat_share_party1() const;

  bool operator==(const ReplicateRow&) const = default;
};

struct ReplicateDataset {
  std::size_t num_districts = 0;
  std::size_t num_colours = 0;
  std::vector<ReplicateRow> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }

  std::vector<double> popular_share_party1() const;
  std::vector<double> seat_share_party1() const;
  std::vector<double> seats_party1() const;
  std::vector<double> district1_share() const;
  std::vector<double> north_share() const;
  std::vector<double> south_share() const;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t points_used = 0;
};

struct SwingRecord {
  double original_district_share = 0.0;
  double local_swing = 0.0;
  double national_swing = 0.0;
};

/// Counts per half-open bin [e_i, e_{i+1}); the last bin is closed.
/// Values outside [e_0, e_last] are ignored.
std::vector<std::size_t> histogram(std::span<const double> values, std::span<const double> edges);

/// `bins` equal-width edges spanning [lo, hi].
std::vector<double> uniform_edges(double lo, double hi, std::size_t bins);

double mean(std::span<const double> values);
/// Unbiased (n - 1) sample variance.
double sample_variance(std::span<const double> values);

/// Product-moment correlation; std::nullopt when either side has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Ordinary least squares y = intercept + slope * x.
SlopeFit ols_fit(std::span<const double> x, std::span<const double> y);

/// OLS of seat share on popular share for party 1, restricted to replicates
/// with |popular share - 1/2| <= window_halfwidth.
SlopeFit central_slope_fit(const ReplicateDataset& data, double window_halfwidth = 1.0);

double logit(double p);

/// Origin-constrained regression of logit(y) on logit(x). Points with x or y
/// outside the open interval (0,1) are dropped.
double cube_exponent_fit(std::span<const double> x, std::span<const double> y);
double cube_exponent_fit(const ReplicateDataset& data);

/// OLS of (local - national swing) on original district share.
SlopeFit swing_regression(std::span<const SwingRecord> records);

/// Two-sided Kolmogorov-Smirnov distance between the samples' empirical CDF
/// and `cdf`.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);
double ks_statistic(std::span<const double> samples, const AnalyticCurve& cdf);

/// Asymptotic one-sample KS critical value sqrt(-ln(alpha/2) / 2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

struct ChiSquare {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
};

/// Pearson chi-square of observed counts against expected probabilities.
/// Cells are pooled left to right until each expected count is >= 5; a
/// sparse remainder joins the last pooled cell.
ChiSquare chi_square_statistic(std::span<const std::size_t> observed,
                               std::span<const double> expected_probabilities);

/// Upper-tail critical value of chi-square with `df` degrees of freedom.
double chi_square_critical_value(std::size_t df, double alpha);

/// Binomial(n, q) probability mass for k = 0..n.
std::vector<double> binomial_pmf(std::size_t n, double q);

/// 0.5 * sum |p - q| over the union of supports.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace polyaurn
