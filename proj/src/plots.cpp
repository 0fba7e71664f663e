#include "polyaurn/plots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polyaurn/analytic.hpp"
#include "polyaurn/dataset_io.hpp"
#include "polyaurn/number_format.hpp"

namespace polyaurn {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  // Two decimals keeps files small and stable.
  return format_number(std::round(v * 100.0) / 100.0);
}

std::string tick_label(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

void open_svg(std::ostringstream& svg, const std::string& title) {
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<title>" << escape(title) << "</title>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << escape(title) << "</text>\n";
}

void draw_axes(std::ostringstream& svg, const Frame& f, const std::string& x_label,
               const std::string& y_label) {
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  svg << "<path d=\"M" << x0 << ' ' << y1 << " L" << x0 << ' ' << y0 << " L" << x1 << ' ' << y0
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = f.x_lo + (f.x_hi - f.x_lo) * i / 5.0;
    const double yv = f.y_lo + (f.y_hi - f.y_lo) * i / 5.0;
    svg << "<line x1=\"" << fmt(f.px(xv)) << "\" y1=\"" << y0 << "\" x2=\"" << fmt(f.px(xv)) << "\" y2=\""
        << y0 + 5 << "\" stroke=\"black\"/>"
        << "<text x=\"" << fmt(f.px(xv)) << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n";
    svg << "<line x1=\"" << x0 - 5 << "\" y1=\"" << fmt(f.py(yv)) << "\" x2=\"" << x0 << "\" y2=\""
        << fmt(f.py(yv)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << x0 - 8 << "\" y=\"" << fmt(f.py(yv) + 4) << "\" text-anchor=\"end\">"
        << tick_label(yv) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(x_label)
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << (y0 + y1) / 2 << ")\">" << escape(y_label)
      << "</text>\n";
}

std::pair<double, double> padded_range(std::span<const double> v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double a = *lo;
  double b = *hi;
  if (b - a < 1e-9) {
    a -= 0.5;
    b += 0.5;
  }
  const double pad = 0.05 * (b - a);
  return {a - pad, b + pad};
}

}  // namespace

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "seats") return PlotKind::seat_histogram;
  if (name == "popular") return PlotKind::popular_histogram;
  if (name == "district") return PlotKind::district_histogram;
  if (name == "northsouth") return PlotKind::north_south;
  if (name == "seatvote") return PlotKind::seat_vote;
  throw std::invalid_argument("unknown plot kind '" + std::string(name) +
                              "' (expected seats, popular, district, northsouth or seatvote)");
}

std::string_view plot_kind_name(PlotKind kind) {
  switch (kind) {
    case PlotKind::seat_histogram: return "seats";
    case PlotKind::popular_histogram: return "popular";
    case PlotKind::district_histogram: return "district";
    case PlotKind::north_south: return "northsouth";
    case PlotKind::seat_vote: return "seatvote";
  }
  return "unknown";
}

std::string render_histogram_svg(std::span<const double> values, std::span<const double> edges,
                                 const std::string& title, const std::string& x_label) {
  const auto counts = histogram(values, edges);
  const auto peak = static_cast<double>(std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end())));
  const Frame f{edges.front(), edges.back(), 0.0, peak * 1.05};
  std::ostringstream svg;
  open_svg(svg, title);
  svg << "<g fill=\"steelblue\" stroke=\"white\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double x = f.px(edges[i]);
    const double w = f.px(edges[i + 1]) - x;
    const double top = f.py(static_cast<double>(counts[i]));
    svg << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(w) << "\" height=\""
        << fmt(f.py(0.0) - top) << "\"/>\n";
  }
  svg << "</g>\n";
  draw_axes(svg, f, x_label, "count");
  svg << "</svg>\n";
  return svg.str();
}

std::string render_scatter_svg(std::span<const double> x, std::span<const double> y,
                               const std::string& title, const std::string& x_label,
                               const std::string& y_label, const ScatterOverlay& overlay) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("scatter needs matching, non-empty data");
  const auto [x_lo, x_hi] = padded_range(x);
  const auto [y_lo, y_hi] = padded_range(y);
  const Frame f{x_lo, x_hi, y_lo, y_hi};
  std::ostringstream svg;
  open_svg(svg, title);
  svg << "<g fill=\"black\" fill-opacity=\"0.6\">\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    svg << "<circle cx=\"" << fmt(f.px(x[i])) << "\" cy=\"" << fmt(f.py(y[i])) << "\" r=\"1.5\"/>\n";
  }
  svg << "</g>\n";
  if (overlay.line) {
    const auto& l = *overlay.line;
    svg << "<line x1=\"" << fmt(f.px(x_lo)) << "\" y1=\"" << fmt(f.py(l.intercept + l.slope * x_lo))
        << "\" x2=\"" << fmt(f.px(x_hi)) << "\" y2=\"" << fmt(f.py(l.intercept + l.slope * x_hi))
        << "\" stroke=\"blue\" stroke-width=\"1.5\"/>\n";
  }
  if (overlay.cube_k) {
    svg << "<path d=\"";
    constexpr int kSegments = 200;
    const double lo = std::max(0.0, x_lo);
    const double hi = std::min(1.0, x_hi);
    for (int i = 0; i <= kSegments; ++i) {
      const double xv = lo + (hi - lo) * i / kSegments;
      const double yv = std::clamp(cube_curve(*overlay.cube_k, xv), y_lo, y_hi);
      svg << (i == 0 ? "M" : " L") << fmt(f.px(xv)) << ' ' << fmt(f.py(yv));
    }
    svg << "\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
  }
  draw_axes(svg, f, x_label, y_label);
  svg << "</svg>\n";
  return svg.str();
}

std::string render_plot(const ReplicateDataset& data, PlotKind kind, const PlotOptions& options) {
  if (data.empty()) throw std::invalid_argument("cannot plot an empty dataset");
  auto title = [&](const char* fallback) { return options.title.empty() ? std::string(fallback) : options.title; };
  switch (kind) {
    case PlotKind::seat_histogram: {
      const auto seats = data.seats_party1();
      std::vector<double> edges(data.num_districts + 2);
      for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = static_cast<double>(i) - 0.5;
      return render_histogram_svg(seats, edges, title("Seats won by party 1"), "seats");
    }
    case PlotKind::popular_histogram:
      return render_histogram_svg(data.popular_share_party1(), uniform_edges(0.0, 1.0, options.bins),
                                  title("Popular vote share of party 1"), "popular vote share");
    case PlotKind::district_histogram:
      return render_histogram_svg(data.district1_share(), uniform_edges(0.0, 1.0, options.bins),
                                  title("Party 1 share in district 1"), "district vote share");
    case PlotKind::north_south:
      return render_scatter_svg(data.north_share(), data.south_share(), title("North vs south share"),
                                "north share", "south share");
    case PlotKind::seat_vote: {
      ScatterOverlay overlay;
      const auto x = data.popular_share_party1();
      const auto y = data.seat_share_party1();
      if (options.fit_line && data.size() >= 2) {
        const auto fit = ols_fit(x, y);
        overlay.line = LineOverlay{fit.slope, fit.intercept};
      }
      overlay.cube_k = options.cube_k;
      return render_scatter_svg(x, y, title("Seats vs votes"), "popular vote share", "seat share", overlay);
    }
  }
  throw std::invalid_argument("unknown plot kind");
}

void emit_plot(const ReplicateDataset& data, PlotKind kind, const PlotOptions& options,
               const std::filesystem::path& path) {
  write_text_file(path, render_plot(data, kind, options));
}

}  // namespace polyaurn
