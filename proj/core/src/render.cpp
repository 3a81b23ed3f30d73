#include "sensorplace/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sensorplace/error.hpp"

namespace sensorplace {
namespace {

std::string fixed(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escape(std::string_view text) {
  std::string out;
  for (const char c : text) {
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

// World meters (y up) to SVG pixels (y down).
class Frame {
 public:
  explicit Frame(const Scenario& s) {
    const auto grow = [&](Point2D p) {
      min_x_ = std::min(min_x_, p.x);
      max_x_ = std::max(max_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
      max_y_ = std::max(max_y_, p.y);
    };
    for (const auto& p : s.surveillance_points) grow(p);
    for (const auto& p : s.sensor_points) grow(p);
    for (const auto& w : s.walls) {
      grow(w.a);
      grow(w.b);
    }
    min_x_ -= kMargin;
    min_y_ -= kMargin;
    max_x_ += kMargin;
    max_y_ += kMargin;
  }

  double width() const { return (max_x_ - min_x_) * kScale; }
  double height() const { return (max_y_ - min_y_) * kScale; }
  double x(double wx) const { return (wx - min_x_) * kScale; }
  double y(double wy) const { return (max_y_ - wy) * kScale; }
  double len(double meters) const { return meters * kScale; }

  std::string open() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width()) +
           "\" height=\"" + fixed(height()) + "\" viewBox=\"0 0 " + fixed(width()) + " " +
           fixed(height()) + "\">\n";
  }

 private:
  static constexpr double kScale = 20.0;  // px per meter
  static constexpr double kMargin = 1.0;
  double min_x_ = std::numeric_limits<double>::max();
  double max_x_ = std::numeric_limits<double>::lowest();
  double min_y_ = std::numeric_limits<double>::max();
  double max_y_ = std::numeric_limits<double>::lowest();
};

void draw_walls(std::ostringstream& out, const Frame& f, const Scenario& s) {
  out << "<g class=\"walls\" stroke=\"#222\" stroke-width=\"3\">\n";
  for (const auto& w : s.walls) {
    out << "<line class=\"wall\" x1=\"" << fixed(f.x(w.a.x)) << "\" y1=\"" << fixed(f.y(w.a.y))
        << "\" x2=\"" << fixed(f.x(w.b.x)) << "\" y2=\"" << fixed(f.y(w.b.y)) << "\"/>\n";
  }
  out << "</g>\n";
}

void draw_sensor_points(std::ostringstream& out, const Frame& f, const Scenario& s) {
  out << "<g class=\"sensor-points\">\n";
  for (std::size_t k = 0; k < s.sensor_points.size(); ++k) {
    const Point2D p = s.sensor_points[k];
    out << "<rect class=\"sensor-point\" data-index=\"" << k << "\" x=\""
        << fixed(f.x(p.x) - 1.5) << "\" y=\"" << fixed(f.y(p.y) - 1.5)
        << "\" width=\"3.00\" height=\"3.00\" fill=\"#3355cc\"/>\n";
  }
  out << "</g>\n";
}

// Compass bearing (clockwise from up) to a point `r` meters away.
Point2D toward(Point2D from, double bearing_deg, double r) {
  const double rad = bearing_deg * std::numbers::pi / 180.0;
  return {from.x + r * std::sin(rad), from.y + r * std::cos(rad)};
}

}  // namespace

std::string render_scenario(const Scenario& s) {
  const Frame f(s);
  std::ostringstream out;
  out << f.open();
  out << "<title>" << escape(s.name) << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  draw_walls(out, f, s);
  out << "<g class=\"surveillance-points\">\n";
  for (std::size_t j = 0; j < s.surveillance_points.size(); ++j) {
    const Point2D p = s.surveillance_points[j];
    const std::size_t level = std::min<std::size_t>(security_level(s, j), 3);
    out << "<circle class=\"surv sec" << level << "\" data-index=\"" << j << "\" cx=\""
        << fixed(f.x(p.x)) << "\" cy=\"" << fixed(f.y(p.y)) << "\" r=\"3.00\" fill=\""
        << kSecurityColors[level] << "\"/>\n";
  }
  out << "</g>\n";
  draw_sensor_points(out, f, s);
  out << "</svg>\n";
  return out.str();
}

std::string render_coverage(const Problem& problem, const Genotype& g, std::size_t type0) {
  const Scenario& s = problem.scenario();
  if (type0 >= s.num_sensor_types()) throw ValidationError("sensor type out of range");
  const BoolMatrix covered = problem.coverage(g);
  const SensorSpec& spec = s.catalog[type0];
  const Frame f(s);

  std::ostringstream out;
  out << f.open();
  out << "<title>" << escape(s.name) << " - " << escape(spec.name) << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out << "<g class=\"wedges\" fill=\"#ffe14d\" fill-opacity=\"0.35\" stroke=\"#c9a800\">\n";
  for (const Placement& p : decode(g, s.num_sensor_types())) {
    if (p.sensor_type != type0 + 1) continue;
    const Point2D at = s.sensor_points[p.sensor_point];
    if (spec.omnidirectional()) {
      out << "<circle class=\"wedge\" data-sensor-point=\"" << p.sensor_point << "\" cx=\""
          << fixed(f.x(at.x)) << "\" cy=\"" << fixed(f.y(at.y)) << "\" r=\""
          << fixed(f.len(spec.range_m)) << "\"/>\n";
      continue;
    }
    const double from = p.orientation_deg - spec.fov_deg / 2.0;
    const double to = p.orientation_deg + spec.fov_deg / 2.0;
    const Point2D a = toward(at, from, spec.range_m);
    const Point2D b = toward(at, to, spec.range_m);
    const int large_arc = spec.fov_deg > 180.0 ? 1 : 0;
    // Clockwise in the world is clockwise on screen too (sweep-flag 1).
    out << "<path class=\"wedge\" data-sensor-point=\"" << p.sensor_point << "\" d=\"M "
        << fixed(f.x(at.x)) << " " << fixed(f.y(at.y)) << " L " << fixed(f.x(a.x)) << " "
        << fixed(f.y(a.y)) << " A " << fixed(f.len(spec.range_m)) << " "
        << fixed(f.len(spec.range_m)) << " 0 " << large_arc << " 1 " << fixed(f.x(b.x))
        << " " << fixed(f.y(b.y)) << " Z\"/>\n";
  }
  out << "</g>\n";

  draw_walls(out, f, s);
  out << "<g class=\"surveillance-points\">\n";
  for (std::size_t j = 0; j < s.surveillance_points.size(); ++j) {
    const Point2D p = s.surveillance_points[j];
    const bool required = s.requirements(j, type0) != 0;
    const bool is_covered = covered(j, type0) != 0;
    out << "<circle class=\"surv " << (required ? "required" : "optional")
        << (is_covered ? " covered" : "") << "\" data-index=\"" << j << "\" cx=\""
        << fixed(f.x(p.x)) << "\" cy=\"" << fixed(f.y(p.y)) << "\" r=\"3.00\" fill=\""
        << (required ? "#d7261e" : "#2b5fd9") << "\""
        << (is_covered ? " stroke=\"#c9a800\" stroke-width=\"1.5\"" : "") << "/>\n";
  }
  out << "</g>\n";
  draw_sensor_points(out, f, s);
  out << "</svg>\n";
  return out.str();
}

std::string render_convergence(const std::vector<std::pair<std::string, Trace>>& traces) {
  if (traces.empty()) throw ValidationError("render_convergence needs at least one trace");

  double x_max = 1.0;
  double y_min = std::numeric_limits<double>::max();
  double y_max = std::numeric_limits<double>::lowest();
  for (const auto& [name, trace] : traces) {
    for (const TracePoint& t : trace) {
      x_max = std::max(x_max, static_cast<double>(t.evaluations));
      y_min = std::min(y_min, t.best_eur);
      y_max = std::max(y_max, t.best_eur);
    }
  }
  if (y_min > y_max) {  // all traces empty
    y_min = 0.0;
    y_max = 1.0;
  }
  const bool log_scale = y_min > 0.0 && y_max / y_min > 100.0;
  const auto ty = [&](double v) { return log_scale ? std::log10(v) : v; };
  double lo = ty(y_min);
  double hi = ty(y_max);
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }

  constexpr double kW = 800.0, kH = 500.0, kLeft = 90.0, kRight = 180.0, kTop = 30.0,
                   kBottom = 60.0;
  const auto px = [&](double x) { return kLeft + x / x_max * (kW - kLeft - kRight); };
  const auto py = [&](double y) {
    return kTop + (hi - ty(y)) / (hi - lo) * (kH - kTop - kBottom);
  };

  static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                             "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g class=\"axes\" stroke=\"#000\">\n";
  out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kH - kBottom) << "\" x2=\""
      << fixed(kW - kRight) << "\" y2=\"" << fixed(kH - kBottom) << "\"/>\n";
  out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\""
      << fixed(kLeft) << "\" y2=\"" << fixed(kH - kBottom) << "\"/>\n";
  out << "</g>\n";
  out << "<text x=\"" << fixed((kLeft + kW - kRight) / 2) << "\" y=\"" << fixed(kH - 15)
      << "\" text-anchor=\"middle\">fitness evaluations</text>\n";
  out << "<text x=\"20\" y=\"" << fixed(kTop - 10) << "\">best cost (EUR"
      << (log_scale ? ", log scale" : "") << ")</text>\n";
  out << "<text class=\"tick\" x=\"" << fixed(kLeft - 5) << "\" y=\"" << fixed(py(y_max))
      << "\" text-anchor=\"end\">" << fixed(y_max) << "</text>\n";
  out << "<text class=\"tick\" x=\"" << fixed(kLeft - 5) << "\" y=\"" << fixed(py(y_min))
      << "\" text-anchor=\"end\">" << fixed(y_min) << "</text>\n";
  out << "<text class=\"tick\" x=\"" << fixed(kW - kRight) << "\" y=\""
      << fixed(kH - kBottom + 15) << "\" text-anchor=\"middle\">"
      << static_cast<std::uint64_t>(x_max) << "</text>\n";

  for (std::size_t k = 0; k < traces.size(); ++k) {
    const auto& [name, trace] = traces[k];
    const char* color = kPalette[k % std::size(kPalette)];
    out << "<polyline class=\"series\" data-name=\"" << escape(name)
        << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t n = 0; n < trace.size(); ++n) {
      if (n) out << ' ';
      out << fixed(px(static_cast<double>(trace[n].evaluations))) << ','
          << fixed(py(trace[n].best_eur));
    }
    out << "\"/>\n";
    const double ly = kTop + 20.0 * static_cast<double>(k);
    out << "<g class=\"legend\"><line x1=\"" << fixed(kW - kRight + 15) << "\" y1=\""
        << fixed(ly) << "\" x2=\"" << fixed(kW - kRight + 40) << "\" y2=\"" << fixed(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\""
        << fixed(kW - kRight + 45) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(name)
        << "</text></g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace sensorplace
