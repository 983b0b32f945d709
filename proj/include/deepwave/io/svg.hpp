#pragma once

// Minimal SVG plot of a particle path z(x). Output is a pure function of the
// series and options so it can be compared byte for byte.

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "deepwave/io/format.hpp"
#include "deepwave/trajectories.hpp"

namespace deepwave::io {

struct SvgOptions {
  int width = 640;
  int height = 480;
  int margin = 60;
  std::string title;
};

/// Tick positions at round numbers (1, 2, 5 times a power of ten) covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  std::vector<double> ticks;
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) return ticks;
  const double raw = (hi - lo) / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = (norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0) * mag;
  const double first = std::ceil(lo / step) * step;
  for (int i = 0; first + i * step <= hi + 1e-9 * step && i < 1000; ++i) {
    double v = first + i * step;
    if (std::abs(v) < 1e-12 * step) v = 0.0;
    ticks.push_back(v);
  }
  return ticks;
}

inline void write_trajectory_svg(std::ostream& os, const TrajectorySeries& series, const SvgOptions& opt = {}) {
  double xmin = INFINITY, xmax = -INFINITY, zmin = INFINITY, zmax = -INFINITY;
  for (const auto& s : series.samples) {
    xmin = std::min(xmin, s.x);
    xmax = std::max(xmax, s.x);
    zmin = std::min(zmin, s.z);
    zmax = std::max(zmax, s.z);
  }
  if (series.samples.empty()) xmin = zmin = 0.0, xmax = zmax = 1.0;
  if (!(xmax > xmin)) xmin -= 0.5, xmax += 0.5;
  if (!(zmax > zmin)) zmin -= 0.5, zmax += 0.5;
  const double padx = 0.05 * (xmax - xmin), padz = 0.05 * (zmax - zmin);
  xmin -= padx, xmax += padx, zmin -= padz, zmax += padz;

  const double plot_w = opt.width - 2.0 * opt.margin;
  const double plot_h = opt.height - 2.0 * opt.margin;
  auto px = [&](double x) { return opt.margin + (x - xmin) / (xmax - xmin) * plot_w; };
  auto pz = [&](double z) { return opt.height - opt.margin - (z - zmin) / (zmax - zmin) * plot_h; };
  auto f = [](double v) { return format_fixed(v, 3); };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
     << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << opt.height << "\" fill=\"white\"/>\n";

  const double left = opt.margin, right = opt.width - opt.margin;
  const double top = opt.margin, bottom = opt.height - opt.margin;
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  os << "<rect x=\"" << f(left) << "\" y=\"" << f(top) << "\" width=\"" << f(plot_w) << "\" height=\"" << f(plot_h)
     << "\"/>\n";
  const auto xt = nice_ticks(xmin, xmax);
  const auto zt = nice_ticks(zmin, zmax);
  for (double v : xt)
    os << "<line x1=\"" << f(px(v)) << "\" y1=\"" << f(bottom) << "\" x2=\"" << f(px(v)) << "\" y2=\""
       << f(bottom + 5) << "\"/>\n";
  for (double v : zt)
    os << "<line x1=\"" << f(left - 5) << "\" y1=\"" << f(pz(v)) << "\" x2=\"" << f(left) << "\" y2=\""
       << f(pz(v)) << "\"/>\n";
  os << "</g>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (double v : xt)
    os << "<text x=\"" << f(px(v)) << "\" y=\"" << f(bottom + 18) << "\" text-anchor=\"middle\">"
       << format_sig(v, 6) << "</text>\n";
  for (double v : zt)
    os << "<text x=\"" << f(left - 8) << "\" y=\"" << f(pz(v) + 4) << "\" text-anchor=\"end\">"
       << format_sig(v, 6) << "</text>\n";
  os << "<text x=\"" << f(0.5 * (left + right)) << "\" y=\"" << f(opt.height - 15.0)
     << "\" text-anchor=\"middle\">x</text>\n";
  os << "<text x=\"15\" y=\"" << f(0.5 * (top + bottom)) << "\" text-anchor=\"middle\">z</text>\n";
  if (!opt.title.empty())
    os << "<text x=\"" << f(0.5 * (left + right)) << "\" y=\"" << f(top - 20) << "\" text-anchor=\"middle\">"
       << opt.title << "</text>\n";
  os << "</g>\n";

  for (double xa : series.asymptote_x) {
    if (xa < xmin || xa > xmax) continue;
    os << "<line class=\"asymptote\" x1=\"" << f(px(xa)) << "\" y1=\"" << f(top) << "\" x2=\"" << f(px(xa))
       << "\" y2=\"" << f(bottom) << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  }

  std::vector<std::size_t> starts = series.segment_starts;
  if (starts.empty() || starts.front() != 0) starts.insert(starts.begin(), 0);
  for (std::size_t seg = 0; seg < starts.size(); ++seg) {
    const std::size_t b = starts[seg];
    const std::size_t e = seg + 1 < starts.size() ? starts[seg + 1] : series.samples.size();
    if (e <= b) continue;
    os << "<polyline class=\"path\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = b; i < e; ++i) {
      if (i > b) os << ' ';
      os << f(px(series.samples[i].x)) << ',' << f(pz(series.samples[i].z));
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace deepwave::io
