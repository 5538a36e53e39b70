#include "hqvp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hqvp/bisector.hpp"

namespace hqvp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Canvas {
 public:
  Canvas(const ConvexDomain& d, double ppu) : lo_(d.lower_corner()), hi_(d.upper_corner()), ppu_(ppu) {}

  double width() const { return (hi_.x - lo_.x) * ppu_; }
  double height() const { return (hi_.y - lo_.y) * ppu_; }

  std::string xy(Vec2 p) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", (p.x - lo_.x) * ppu_, (hi_.y - p.y) * ppu_);
    return buf;
  }

  std::string polyline(const std::vector<Vec2>& pts) const {
    std::string out;
    for (const Vec2& p : pts) {
      if (!out.empty()) out += ' ';
      out += xy(p);
    }
    return out;
  }

  double ppu() const { return ppu_; }

 private:
  Vec2 lo_, hi_;
  double ppu_;
};

std::string hue_color(std::size_t i) {
  const double hue = std::fmod(static_cast<double>(i) * 0.6180339887498949, 1.0) * 360.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,60%%,72%%)", hue);
  return buf;
}

bool wanted(const RenderOptions& o, std::size_t i) {
  return o.highlight.empty() || std::find(o.highlight.begin(), o.highlight.end(), i) != o.highlight.end();
}

std::vector<Vec2> ellipse_points(const Ellipsoid& e, int count) {
  std::vector<Vec2> pts;
  for (int k = 0; k <= count; ++k) pts.push_back(e.boundary_point(kTwoPi * k / count));
  return pts;
}

}  // namespace

std::string render_svg(const Scenario& s, const std::vector<Cell>& cells,
                       const std::vector<NeighborEnclosure>& enclosures, const RenderOptions& options) {
  const Canvas cv(s.domain(), options.pixels_per_unit);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.width() << "\" height=\"" << cv.height()
      << "\" viewBox=\"0 0 " << cv.width() << ' ' << cv.height() << "\">\n";
  out << "<polygon points=\"" << cv.polyline(s.domain().vertices())
      << "\" fill=\"#e8615a\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (const Cell& c : cells) {
    const double half = 0.5 * kTwoPi / static_cast<double>(c.slices().size());
    out << "<path fill=\"" << hue_color(c.agent()) << "\" stroke=\"none\" d=\"";
    for (const auto& slice : c.slices()) {
      const Vec2 a = unit_direction(slice.theta - half * 1.05);
      const Vec2 b = unit_direction(slice.theta + half * 1.05);
      for (const auto& seg : slice.segments) {
        out << 'M' << cv.xy(c.origin() + seg.from * a) << 'L' << cv.xy(c.origin() + seg.to * a) << 'L'
            << cv.xy(c.origin() + seg.to * b) << 'L' << cv.xy(c.origin() + seg.from * b) << 'Z';
      }
    }
    out << "\"/>\n";
  }

  if (options.draw_contours) {
    for (const Cell& c : cells) {
      const auto& m = s.agent(c.agent());
      for (int level = 1; level <= 6; ++level) {
        const Ellipsoid iso(m.position(), m.P(), 0.5 * level * level);
        std::vector<Vec2> run;
        auto flush = [&] {
          if (run.size() > 1) {
            out << "<polyline points=\"" << cv.polyline(run)
                << "\" fill=\"none\" stroke=\"#555\" stroke-width=\"0.6\"/>\n";
          }
          run.clear();
        };
        for (const Vec2& p : ellipse_points(iso, 180)) {
          if (c.contains(p)) {
            run.push_back(p);
          } else {
            flush();
          }
        }
        flush();
      }
    }
  }

  if (options.draw_ellipses) {
    for (std::size_t i = 1; i <= s.size(); ++i) {
      if (!wanted(options, i)) continue;
      const auto e = bounding_ellipse(s, i);
      out << "<polyline points=\"" << cv.polyline(ellipse_points(e.ellipsoid, 240))
          << "\" fill=\"none\" stroke=\"#c00000\" stroke-width=\"1.2\" stroke-dasharray=\"8,3,2,3\"/>\n";
    }
  }
  if (options.draw_enclosures) {
    for (const auto& enc : enclosures) {
      if (!wanted(options, enc.agent)) continue;
      auto pts = enc.curve_absolute();
      if (!pts.empty()) pts.push_back(pts.front());
      out << "<polyline points=\"" << cv.polyline(pts)
          << "\" fill=\"none\" stroke=\"#1f3fbf\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"/>\n";
    }
  }

  const double arm = 0.08 * cv.ppu();
  for (std::size_t i = 0; i <= s.size(); ++i) {
    const Vec2 p = s.agent(i).position();
    const Vec2 dx{arm / cv.ppu(), 0.0};
    const Vec2 dy{0.0, arm / cv.ppu()};
    out << "<path d=\"M" << cv.xy(p - dx) << "L" << cv.xy(p + dx) << "M" << cv.xy(p - dy) << "L" << cv.xy(p + dy)
        << "\" stroke=\"black\" stroke-width=\"1.4\"/>\n";
    const std::string label = cv.xy(p + 1.2 * dx + 1.2 * dy);
    const auto comma = label.find(',');
    out << "<text x=\"" << label.substr(0, comma) << "\" y=\"" << label.substr(comma + 1)
        << "\" font-size=\"10\" font-family=\"sans-serif\">" << i << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hqvp
