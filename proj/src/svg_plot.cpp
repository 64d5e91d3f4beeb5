#include "alekit/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

namespace alekit {

namespace {

constexpr double width = 720.0;
constexpr double height = 480.0;
constexpr double margin_left = 64.0;
constexpr double margin_right = 20.0;
constexpr double margin_top = 36.0;
constexpr double margin_bottom = 48.0;

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Short decimal for coordinates and tick labels; full precision would bloat
// the file without moving any pixel.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct scale {
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  double range_lo = 0.0;
  double range_hi = 1.0;

  double operator()(double v) const {
    double t = (v - domain_lo) / (domain_hi - domain_lo);
    return range_lo + t * (range_hi - range_lo);
  }
};

scale make_scale(double lo, double hi, double range_lo, double range_hi, double pad_frac) {
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  double pad = (hi - lo) * pad_frac;
  return scale{lo - pad, hi + pad, range_lo, range_hi};
}

void draw_axes(std::ostringstream& svg, const scale& sx, const scale& sy,
               const std::string& x_label, const std::string& y_label) {
  double x0 = margin_left;
  double x1 = width - margin_right;
  double y0 = height - margin_bottom;
  double y1 = margin_top;
  svg << "<line class=\"axis\" x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\""
      << num(x1) << "\" y2=\"" << num(y0) << "\" stroke=\"#333\"/>\n";
  svg << "<line class=\"axis\" x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\""
      << num(x0) << "\" y2=\"" << num(y1) << "\" stroke=\"#333\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double fy = sy.domain_lo + (sy.domain_hi - sy.domain_lo) * t / 4.0;
    double py = sy(fy);
    svg << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#333\">" << num(fy) << "</text>\n";
    double fx = sx.domain_lo + (sx.domain_hi - sx.domain_lo) * t / 4.0;
    double px = sx(fx);
    svg << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + 18)
        << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#333\">" << num(fx)
        << "</text>\n";
  }
  svg << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(height - 10)
      << "\" text-anchor=\"middle\" font-size=\"13\" fill=\"#333\">" << xml_escape(x_label)
      << "</text>\n";
  svg << "<text x=\"16\" y=\"" << num((y0 + y1) / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" fill=\"#333\" transform=\"rotate(-90 16 "
      << num((y0 + y1) / 2) << ")\">" << xml_escape(y_label) << "</text>\n";
}

void draw_band(std::ostringstream& svg, const scale& sy, const aler_band& band) {
  double x0 = margin_left;
  double w = width - margin_left - margin_right;
  svg << "<rect class=\"aler-band\" x=\"" << num(x0) << "\" y=\"" << num(sy(band.upper))
      << "\" width=\"" << num(w) << "\" height=\"" << num(sy(band.lower) - sy(band.upper))
      << "\" fill=\"#bbbbbb\" opacity=\"0.45\"/>\n";
  for (double b : {band.outer_lower, band.outer_upper}) {
    svg << "<line class=\"outer-band\" x1=\"" << num(x0) << "\" y1=\"" << num(sy(b))
        << "\" x2=\"" << num(x0 + w) << "\" y2=\"" << num(sy(b))
        << "\" stroke=\"#888\" stroke-dasharray=\"5 4\"/>\n";
  }
  svg << "<line class=\"band-center\" x1=\"" << num(x0) << "\" y1=\"" << num(sy(band.center))
      << "\" x2=\"" << num(x0 + w) << "\" y2=\"" << num(sy(band.center))
      << "\" stroke=\"#666\" stroke-width=\"0.7\"/>\n";
}

}  // namespace

std::string render_svg(const boot_ale_curve& curve, const aler_band& band, const dataset& d,
                       const std::string& var) {
  // The vertical window must hold the curve, its CI and the whole band.
  double y_lo = band.outer_lower;
  double y_hi = band.outer_upper;
  for (double v : curve.ale_y_lo) y_lo = std::min(y_lo, v);
  for (double v : curve.ale_y_hi) y_hi = std::max(y_hi, v);
  scale sy = make_scale(y_lo, y_hi, height - margin_bottom, margin_top, 0.06);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";
  svg << "<title>" << xml_escape(var) << "</title>\n";

  if (!curve.x.categorical) {
    const std::vector<double>& z = curve.x.boundaries;
    scale sx = make_scale(z.front(), z.back(), margin_left, width - margin_right, 0.02);
    draw_band(svg, sy, band);

    if (curve.n_it > 0) {
      std::ostringstream pts;
      for (std::size_t j = 0; j < z.size(); ++j)
        pts << num(sx(z[j])) << "," << num(sy(curve.ale_y_hi[j])) << " ";
      for (std::size_t j = z.size(); j-- > 0;)
        pts << num(sx(z[j])) << "," << num(sy(curve.ale_y_lo[j])) << " ";
      svg << "<polygon class=\"ci-ribbon\" points=\"" << pts.str()
          << "\" fill=\"#7aa6d8\" opacity=\"0.35\"/>\n";
    }

    std::ostringstream line;
    for (std::size_t j = 0; j < z.size(); ++j)
      line << num(sx(z[j])) << "," << num(sy(curve.ale_y_mean[j])) << " ";
    svg << "<polyline class=\"ale-mean\" points=\"" << line.str()
        << "\" fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n";

    svg << "<g class=\"x-rug\" stroke=\"#333\" opacity=\"0.5\">\n";
    const column& col = d.require(var);
    double rug_top = height - margin_bottom - 7.0;
    for (double v : col.values)
      svg << "<line x1=\"" << num(sx(v)) << "\" y1=\"" << num(height - margin_bottom)
          << "\" x2=\"" << num(sx(v)) << "\" y2=\"" << num(rug_top) << "\"/>\n";
    svg << "</g>\n";

    draw_axes(svg, sx, sy, var, "effect on " + d.outcome().name);
  } else {
    const std::vector<std::string>& levels = curve.x.levels;
    double plot_w = width - margin_left - margin_right;
    auto level_x = [&](std::size_t k) {
      return margin_left +
             plot_w * (static_cast<double>(k) + 0.5) / static_cast<double>(levels.size());
    };
    draw_band(svg, sy, band);

    for (std::size_t k = 0; k < levels.size(); ++k) {
      double px = level_x(k);
      if (curve.n_it > 0)
        svg << "<line class=\"ci-seg\" x1=\"" << num(px) << "\" y1=\""
            << num(sy(curve.ale_y_lo[k])) << "\" x2=\"" << num(px) << "\" y2=\""
            << num(sy(curve.ale_y_hi[k])) << "\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n";
      svg << "<circle class=\"ale-mean\" cx=\"" << num(px) << "\" cy=\""
          << num(sy(curve.ale_y_mean[k])) << "\" r=\"4\" fill=\"#1f4e8c\"/>\n";
      svg << "<text x=\"" << num(px) << "\" y=\"" << num(height - margin_bottom + 18)
          << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#333\">"
          << xml_escape(levels[k]) << "</text>\n";
    }
    // Only the vertical axis carries numeric ticks for level plots.
    double y0 = height - margin_bottom;
    double y1 = margin_top;
    svg << "<line class=\"axis\" x1=\"" << num(margin_left) << "\" y1=\"" << num(y0)
        << "\" x2=\"" << num(width - margin_right) << "\" y2=\"" << num(y0)
        << "\" stroke=\"#333\"/>\n";
    svg << "<line class=\"axis\" x1=\"" << num(margin_left) << "\" y1=\"" << num(y0)
        << "\" x2=\"" << num(margin_left) << "\" y2=\"" << num(y1) << "\" stroke=\"#333\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      double fy = sy.domain_lo + (sy.domain_hi - sy.domain_lo) * t / 4.0;
      svg << "<text x=\"" << num(margin_left - 8) << "\" y=\"" << num(sy(fy) + 4)
          << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#333\">" << num(fy)
          << "</text>\n";
    }
    svg << "<text x=\"" << num((margin_left + width - margin_right) / 2) << "\" y=\""
        << num(height - 10) << "\" text-anchor=\"middle\" font-size=\"13\" fill=\"#333\">"
        << xml_escape(var) << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace alekit
