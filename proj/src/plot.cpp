// SPDX-License-Identifier: Apache-2.0
#include "kickent/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "kickent/errors.hpp"
#include "kickent/fitting.hpp"

namespace kickent {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 190.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

struct Curve {
  std::string label;
  bool classical = false;
  std::vector<std::pair<double, double>> pts;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

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

std::vector<Curve> coupling_curves(std::span<const EntropySeries> series) {
  std::map<std::pair<int, int>, Curve> by_key;  // (pipeline, T)
  for (const EntropySeries& s : series) {
    for (const EntropyRecord& r : s.records) {
      for (int pipe = 0; pipe < 2; ++pipe) {
        const auto& v = pipe == 0 ? r.S_classical : r.S_quantum;
        if (!v || !(r.b > 0.0) || !(*v > 0.0)) continue;
        Curve& c = by_key[{pipe, r.T}];
        c.classical = pipe == 0;
        c.pts.emplace_back(r.b, *v);
      }
    }
  }
  std::vector<Curve> curves;
  for (auto& [key, c] : by_key) {
    std::sort(c.pts.begin(), c.pts.end());
    c.label = std::string(c.classical ? "classical" : "quantum") + " T=" + std::to_string(key.second);
    if (c.pts.size() >= 3) {
      const PowerLawFit fit = fit_power_law(c.pts);
      char buf[48];
      std::snprintf(buf, sizeof buf, " slope %.3f", fit.exponent);
      c.label += buf;
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

std::vector<Curve> time_curves(std::span<const EntropySeries> series) {
  std::vector<Curve> curves;
  for (const EntropySeries& s : series) {
    for (int pipe = 0; pipe < 2; ++pipe) {
      Curve c;
      c.classical = pipe == 0;
      for (const EntropyRecord& r : s.records) {
        const auto& v = pipe == 0 ? r.S_classical : r.S_quantum;
        if (v) c.pts.emplace_back(r.T, *v);
      }
      if (c.pts.empty()) continue;
      c.label = c.classical ? "classical" : "quantum";
      if (series.size() > 1 && !s.records.empty()) c.label += " N=" + std::to_string(s.records.front().size);
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

}  // namespace

std::string render_svg(std::span<const EntropySeries> series, const PlotSpec& spec) {
  const bool loglog = spec.axes == PlotSpec::Axes::coupling_loglog;
  const std::vector<Curve> curves = loglog ? coupling_curves(series) : time_curves(series);

  auto tx = [loglog](double v) { return loglog ? std::log10(v) : v; };
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const Curve& c : curves) {
    for (const auto& [x, y] : c.pts) {
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, tx(y));
      ymax = std::max(ymax, tx(y));
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (!loglog) ymin = std::min(ymin, 0.0);
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= loglog ? ypad : 0.0;
  ymax += ypad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (tx(v) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return kTop + ph - (tx(v) - ymin) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- config_hash: " << escape(spec.config_hash) << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
     << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(spec.title) << "</text>\n";
  os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks: five evenly spaced in transformed coordinates.
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double sx = kLeft + pw * i / 4.0;
    const double sy = kTop + ph - ph * i / 4.0;
    os << "<line x1=\"" << num(sx) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(sx) << "\" y2=\""
       << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(sx) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
       << tick_label(loglog ? std::pow(10.0, fx) : fx) << "</text>\n";
    os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy) << "\" x2=\"" << num(kLeft) << "\" y2=\""
       << num(sy) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy + 4) << "\" text-anchor=\"end\">"
       << tick_label(loglog ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12) << "\" text-anchor=\"middle\">"
     << (loglog ? "b (log)" : "T") << "</text>\n";
  os << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num(kTop + ph / 2) << ")\">" << (loglog ? "S (log)" : "S") << "</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Curve& c = curves[i];
    const char* color = kPalette[i % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
       << (c.classical ? "" : " stroke-dasharray=\"5,3\"") << " points=\"";
    for (std::size_t k = 0; k < c.pts.size(); ++k) {
      if (k) os << ' ';
      os << num(px(c.pts[k].first)) << ',' << num(py(c.pts[k].second));
    }
    os << "\"/>\n";
    for (const auto& [x, y] : c.pts) {
      os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(i);
    const double lx = kLeft + pw + 12.0;
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 20) << "\" y2=\""
       << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
       << (c.classical ? "" : " stroke-dasharray=\"5,3\"") << "/>\n";
    os << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly) << "\">" << escape(c.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit_plot(std::span<const EntropySeries> series, const std::filesystem::path& path, const PlotSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << render_svg(series, spec);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void emit_plot(const EntropySeries& series, const std::filesystem::path& path, const PlotSpec& spec) {
  emit_plot(std::span<const EntropySeries>(&series, 1), path, spec);
}

}  // namespace kickent
