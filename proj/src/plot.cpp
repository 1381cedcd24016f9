#include "ggpgm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ggpgm {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Maps data to a plot rectangle; log axes work in log10 space.
class Axis {
 public:
  Axis(double lo, double hi, bool log_scale, double pixel_lo, double pixel_hi)
      : log_(log_scale), pixel_lo_(pixel_lo), pixel_hi_(pixel_hi) {
    if (log_) {
      lo_ = std::floor(std::log10(lo));
      hi_ = std::ceil(std::log10(hi));
      if (hi_ <= lo_) hi_ = lo_ + 1;
    } else {
      if (hi <= lo) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        lo -= pad;
        hi += pad;
      }
      lo_ = lo;
      hi_ = hi;
    }
  }

  double operator()(double v) const {
    const double t = log_ ? std::log10(v) : v;
    return pixel_lo_ + (t - lo_) / (hi_ - lo_) * (pixel_hi_ - pixel_lo_);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log_) {
      for (double e = lo_; e <= hi_ + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
    } else {
      for (int k = 0; k <= 5; ++k) out.push_back(lo_ + (hi_ - lo_) * k / 5.0);
    }
    return out;
  }

  double min_value() const { return log_ ? std::pow(10.0, lo_) : lo_; }
  double max_value() const { return log_ ? std::pow(10.0, hi_) : hi_; }

 private:
  bool log_;
  double lo_ = 0.0, hi_ = 1.0;
  double pixel_lo_, pixel_hi_;
};

struct Frame {
  double left, top, width, height;
  double right() const { return left + width; }
  double bottom() const { return top + height; }
};

void draw_axes(std::ostream& out, const Frame& f, const Axis& x, const Axis& y,
               const std::string& x_label, const std::string& y_label,
               const std::string& title) {
  out << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\"" << f.width
      << "\" height=\"" << f.height << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double t : x.ticks()) {
    const double px = x(t);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << f.bottom() << "\" x2=\"" << fmt(px)
        << "\" y2=\"" << f.bottom() + 5 << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << fmt(px) << "\" y=\"" << f.bottom() + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  for (double t : y.ticks()) {
    const double py = y(t);
    out << "<line x1=\"" << f.left - 5 << "\" y1=\"" << fmt(py) << "\" x2=\"" << f.left
        << "\" y2=\"" << fmt(py) << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << f.left - 8 << "\" y=\"" << fmt(py + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
  }
  out << "<text x=\"" << f.left + f.width / 2 << "\" y=\"" << f.bottom() + 38
      << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n"
      << "<text x=\"" << f.left - 60 << "\" y=\"" << f.top + f.height / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 " << f.left - 60
      << ' ' << f.top + f.height / 2 << ")\">" << escape(y_label) << "</text>\n"
      << "<text x=\"" << f.left + f.width / 2 << "\" y=\"" << f.top - 10
      << "\" font-size=\"14\" text-anchor=\"middle\">" << escape(title) << "</text>\n";
}

void draw_series(std::ostream& out, const Axis& x, const Axis& y,
                 const std::vector<std::pair<double, double>>& points, const char* color,
                 bool connect) {
  if (connect && points.size() > 1) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    for (const auto& [px, py] : points) out << fmt(x(px)) << ',' << fmt(y(py)) << ' ';
    out << "\"/>\n";
  }
  for (const auto& [px, py] : points) {
    out << "<circle cx=\"" << fmt(x(px)) << "\" cy=\"" << fmt(y(py)) << "\" r=\"2.5\" fill=\""
        << color << "\"/>\n";
  }
}

void draw_legend(std::ostream& out, double left, double top,
                 const std::vector<std::pair<std::string, const char*>>& entries) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const double y = top + 16.0 * k;
    out << "<circle cx=\"" << left << "\" cy=\"" << y << "\" r=\"4\" fill=\""
        << entries[k].second << "\"/>\n"
        << "<text x=\"" << left + 10 << "\" y=\"" << y + 4 << "\" font-size=\"12\">"
        << escape(entries[k].first) << "</text>\n";
  }
}

// Smallest positive value kept on a log axis.
constexpr double kLogFloor = 1e-6;

}  // namespace

void write_convergence_svg(std::span<const PlotSeries> series, std::ostream& out) {
  if (series.empty()) throw std::invalid_argument("no series to plot");
  double t_lo = std::numeric_limits<double>::infinity(), t_hi = 0.0;
  double obj_lo = t_lo, obj_hi = 0.0, rc_lo = t_lo, rc_hi = 0.0;
  for (const PlotSeries& s : series) {
    if (s.log.empty()) throw std::invalid_argument("empty iteration log: " + s.label);
    for (const IterationRecord& r : s.log) {
      t_lo = std::min(t_lo, r.wall_time_s);
      t_hi = std::max(t_hi, r.wall_time_s);
      const double obj = std::max(r.rmp_objective + 1.0, kLogFloor);
      const double rc = std::max(-r.pricing_reduced_cost + 1.0, kLogFloor);
      obj_lo = std::min(obj_lo, obj);
      obj_hi = std::max(obj_hi, obj);
      rc_lo = std::min(rc_lo, rc);
      rc_hi = std::max(rc_hi, rc);
    }
  }
  t_lo = std::min(t_lo, 0.0);
  const Frame left{90, 40, 380, 300};
  const Frame right{590, 40, 380, 300};
  const Axis x1(t_lo, t_hi, false, left.left, left.right());
  const Axis y1(obj_lo, obj_hi, true, left.bottom(), left.top);
  const Axis x2(t_lo, t_hi, false, right.left, right.right());
  const Axis y2(rc_lo, rc_hi, true, right.bottom(), right.top);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\""
      << 420 + 16 * series.size() << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  draw_axes(out, left, x1, y1, "time (s)", "RMP objective + 1", "Master objective");
  draw_axes(out, right, x2, y2, "time (s)", "-(reduced cost) + 1", "Pricing reduced cost");
  std::vector<std::pair<std::string, const char*>> legend;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    std::vector<std::pair<double, double>> obj, rc;
    for (const IterationRecord& r : series[k].log) {
      obj.emplace_back(r.wall_time_s, std::max(r.rmp_objective + 1.0, kLogFloor));
      rc.emplace_back(r.wall_time_s, std::max(-r.pricing_reduced_cost + 1.0, kLogFloor));
    }
    draw_series(out, x1, y1, obj, color, true);
    draw_series(out, x2, y2, rc, color, false);
    legend.emplace_back(series[k].label, color);
  }
  draw_legend(out, 100, 400, legend);
  out << "</svg>\n";
}

void write_rmp_time_svg(std::span<const RmpTimeSample> samples, std::ostream& out) {
  if (samples.empty()) throw std::invalid_argument("no timing samples to plot");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const RmpTimeSample& s : samples) {
    for (double v : {s.baseline_s, s.pgm_total_s(), s.pgm_lp_s, s.pgm_mu_s}) {
      v = std::max(v, kLogFloor);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const Frame f{90, 40, 420, 420};
  const Axis x(lo, hi, true, f.left, f.right());
  const Axis y(lo, hi, true, f.bottom(), f.top);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"560\" "
         "font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  draw_axes(out, f, x, y, "baseline RMP time (s)", "PGM RMP time (s)", "RMP time per iteration");
  const double a = std::max(x.min_value(), y.min_value());
  const double b = std::min(x.max_value(), y.max_value());
  out << "<line x1=\"" << fmt(x(a)) << "\" y1=\"" << fmt(y(a)) << "\" x2=\"" << fmt(x(b))
      << "\" y2=\"" << fmt(y(b)) << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  std::vector<std::pair<double, double>> total, lp, mu;
  for (const RmpTimeSample& s : samples) {
    const double bl = std::max(s.baseline_s, kLogFloor);
    total.emplace_back(bl, std::max(s.pgm_total_s(), kLogFloor));
    lp.emplace_back(bl, std::max(s.pgm_lp_s, kLogFloor));
    mu.emplace_back(bl, std::max(s.pgm_mu_s, kLogFloor));
  }
  draw_series(out, x, y, lp, "#2ca02c", false);
  draw_series(out, x, y, mu, "#1f77b4", false);
  draw_series(out, x, y, total, "#d62728", false);
  draw_legend(out, 100, 510,
              {{"PGM total", "#d62728"}, {"PGM LP part", "#2ca02c"}, {"PGM mu part", "#1f77b4"}});
  out << "</svg>\n";
}

void write_svg_file(const std::filesystem::path& path, const std::string& svg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << svg;
}

}  // namespace ggpgm
