#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "polyaurn/stats.hpp"

namespace polyaurn {

enum class PlotKind {
  seat_histogram,      // party 1 seats per replicate
  popular_histogram,   // party 1 popular vote share
  district_histogram,  // party 1 share in district 1
  north_south,         // north share vs south share
  seat_vote,           // seat share vs popular share
};

/// Throws std::invalid_argument for unknown names.
PlotKind parse_plot_kind(std::string_view name);
std::string_view plot_kind_name(PlotKind kind);

struct LineOverlay {
  double slope = 0.0;
  double intercept = 0.0;
};

struct ScatterOverlay {
  std::optional<LineOverlay> line;
  std::optional<double> cube_k;  // draws x^k / (x^k + (1-x)^k)
};

struct PlotOptions {
  std::size_t bins = 20;
  bool fit_line = false;         // seat_vote: overlay the OLS fit
  std::optional<double> cube_k;  // seat_vote: overlay the cube curve
  std::string title;
};

/// Standalone SVG 1.1 bar chart; one <rect> per bin.
std::string render_histogram_svg(std::span<const double> values, std::span<const double> edges,
                                 const std::string& title, const std::string& x_label);

/// Standalone SVG 1.1 scatter plot with optional overlays, axes fitted to the data.
std::string render_scatter_svg(std::span<const double> x, std::span<const double> y,
                               const std::string& title, const std::string& x_label,
                               const std::string& y_label, const ScatterOverlay& overlay = {});

std::string render_plot(const ReplicateDataset& data, PlotKind kind, const PlotOptions& options);

/// Renders and writes one figure. Throws std::invalid_argument for an empty
/// dataset (no file is created) and IoError when the file cannot be written.
void emit_plot(const ReplicateDataset& data, PlotKind kind, const PlotOptions& options,
               const std::filesystem::path& path);

}  // namespace polyaurn
