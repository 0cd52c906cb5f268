#include "folia/svg.hpp"

#include <cmath>
#include <cstdio>

#include "folia/errors.hpp"

namespace folia {

namespace {

constexpr double kScale = 100.0;
constexpr double kGap = 30.0;
constexpr double kMargin = 20.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Layout {
  std::vector<double> xoff;
  double width = 0.0, height = 0.0;
  explicit Layout(const FlatSurface& f) {
    double x = kMargin, hmax = 0.0;
    for (const Rect& r : f.rects) {
      xoff.push_back(x);
      x += r.w * kScale + kGap;
      hmax = std::max(hmax, r.h);
    }
    width = x - kGap + kMargin;
    height = hmax * kScale + 2.0 * kMargin;
  }
  double px(int rect, double x) const { return xoff[rect] + x * kScale; }
  double py(double y) const { return height - kMargin - y * kScale; }
};

std::string svg_open(const Layout& lay) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(lay.width) + " " +
         num(lay.height) +
         "\">\n<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
         "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/>"
         "</marker></defs>\n";
}

std::string rect_outlines(const FlatSurface& f, const Layout& lay) {
  std::string out;
  for (size_t r = 0; r < f.rects.size(); ++r) {
    out += "<rect x=\"" + num(lay.px(r, 0.0)) + "\" y=\"" + num(lay.py(f.rects[r].h)) +
           "\" width=\"" + num(f.rects[r].w * kScale) + "\" height=\"" + num(f.rects[r].h * kScale) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(lay.px(r, 0.5 * f.rects[r].w)) + "\" y=\"" +
           num(lay.py(0.5 * f.rects[r].h)) + "\" font-size=\"12\" text-anchor=\"middle\">" +
           std::to_string(r) + "</text>\n";
  }
  return out;
}

void side_midpoint(const FlatSurface& f, const Layout& lay, int rect, Side s, double& x, double& y) {
  const Rect& r = f.rects[rect];
  switch (s) {
    case Side::L: x = lay.px(rect, 0.0); y = lay.py(0.5 * r.h); return;
    case Side::R: x = lay.px(rect, r.w); y = lay.py(0.5 * r.h); return;
    case Side::B: x = lay.px(rect, 0.5 * r.w); y = lay.py(0.0); return;
    case Side::T: x = lay.px(rect, 0.5 * r.w); y = lay.py(r.h); return;
  }
}

}  // namespace

SvgKind parse_svg_kind(const std::string& name) {
  if (name == "surface") return SvgKind::surface;
  if (name == "foliation") return SvgKind::foliation;
  if (name == "schwarzian-field") return SvgKind::schwarzian_field;
  throw UnknownKind("no svg kind named '" + name + "'");
}

std::string render_surface_svg(const FlatSurface& f) {
  const Layout lay(f);
  std::string out = svg_open(lay) + rect_outlines(f, lay);
  for (const Gluing& g : f.gluings) {
    double x1, y1, x2, y2;
    side_midpoint(f, lay, g.rect_a, g.side_a, x1, y1);
    side_midpoint(f, lay, g.rect_b, g.side_b, x2, y2);
    const char* dash = g.iso == GlueIso::half_turn ? " stroke-dasharray=\"4 3\"" : "";
    out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"gray\" marker-end=\"url(#arrow)\"" + dash + "/>\n";
  }
  return out + "</svg>\n";
}

std::string render_foliation_svg(const FlatSurface& f) {
  const Layout lay(f);
  std::string out = svg_open(lay) + rect_outlines(f, lay);
  for (size_t r = 0; r < f.rects.size(); ++r)
    for (int k = 0; k < 10; ++k) {
      const double y = f.rects[r].h * (k + 0.5) / 10.0;
      out += "<line x1=\"" + num(lay.px(r, 0.0)) + "\" y1=\"" + num(lay.py(y)) + "\" x2=\"" +
             num(lay.px(r, f.rects[r].w)) + "\" y2=\"" + num(lay.py(y)) +
             "\" stroke=\"steelblue\" stroke-width=\"0.7\"/>\n";
    }
  return out + "</svg>\n";
}

std::string render_schwarzian_svg(const FlatSurface& f, const TriangleMesh& m,
                                  const std::vector<std::complex<double>>& sigma) {
  const Layout lay(f);
  std::string out = svg_open(lay) + rect_outlines(f, lay);
  double top = 0.0;
  for (const auto& s : sigma) top = std::max(top, std::abs(s));
  if (top > 0.0) {
    for (int fc = 0; fc < m.n_faces(); ++fc) {
      const double mag = std::abs(sigma[fc]);
      if (mag == 0.0) continue;
      const Eigen::Vector2d c = m.centroid(fc);
      const double len = 0.45 * m.h_target * std::sqrt(mag / top) * kScale;
      const double ang = -0.5 * std::arg(sigma[fc]);
      const double dx = 0.5 * len * std::cos(ang), dy = 0.5 * len * std::sin(ang);
      const double cx = lay.px(m.tchart[fc], c.x()), cy = lay.py(c.y());
      out += "<line x1=\"" + num(cx - dx) + "\" y1=\"" + num(cy + dy) + "\" x2=\"" + num(cx + dx) +
             "\" y2=\"" + num(cy - dy) + "\" stroke=\"darkred\" stroke-width=\"0.8\"/>\n";
    }
  }
  return out + "</svg>\n";
}

}  // namespace folia
