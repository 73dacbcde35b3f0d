#include "hmap/render.hpp"

#include <cmath>
#include <cstdio>

namespace hmap {

namespace {

struct Canvas {
  double scale, offset;
  std::string body;

  std::string x(double v) const { return coord(offset + scale * v); }
  std::string y(double v) const { return coord(offset - scale * v); }

  static std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf) == "-0.000" ? "0.000" : buf;
  }

  void segment(const Vec3& a, const Vec3& b, const std::string& style) {
    const auto p = klein(a), q = klein(b);
    body += "  <line x1=\"" + x(p(0)) + "\" y1=\"" + y(p(1)) + "\" x2=\"" + x(q(0)) + "\" y2=\"" + y(q(1)) + "\" " +
            style + "/>\n";
  }
};

bool time_like(const Vec3& v) { return mink_inner(v, v) < 0 && v(2) != 0; }

}  // namespace

std::string render_svg(const Realization& real, const DualRealization* dual, const VertexWeights* weights,
                       const RenderOptions& opts) {
  const auto& cx = real.complex();
  const double half = opts.size / 2.0;
  Canvas cv{half - opts.margin, half, {}};

  cv.body += "  <circle cx=\"" + Canvas::coord(half) + "\" cy=\"" + Canvas::coord(half) + "\" r=\"" +
             Canvas::coord(cv.scale) + "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  cv.body += "  <g class=\"primal\">\n";
  for (int e = 0; e < cx.num_edges(); ++e) {
    const int h = cx.edge_half[std::size_t(e)];
    cv.segment(real.f[std::size_t(cx.origin[std::size_t(h)])], real.far_end(h),
               "stroke=\"#1f4e9a\" stroke-width=\"1.5\"");
  }
  cv.body += "  </g>\n";
  if (dual) {
    cv.body += "  <g class=\"dual\">\n";
    for (int e = 0; e < cx.num_edges(); ++e) {
      const int h = cx.edge_half[std::size_t(e)];
      const Vec3& a = dual->corner[std::size_t(h)];
      const Vec3& b = dual->corner[std::size_t(cx.rotate(h))];
      if (time_like(a) && time_like(b))
        cv.segment(a, b, "stroke=\"#b03a2e\" stroke-width=\"1\" stroke-dasharray=\"6 4\"");
    }
    cv.body += "  </g>\n";
  }
  cv.body += "  <g class=\"vertices\">\n";
  for (int v = 0; v < cx.num_vertices(); ++v) {
    const auto p = klein(real.f[std::size_t(v)]);
    cv.body += "    <circle cx=\"" + cv.x(p(0)) + "\" cy=\"" + cv.y(p(1)) + "\" r=\"3\" fill=\"#000000\"/>\n";
    std::string label = cx.vertex_names[std::size_t(v)];
    if (weights) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " (delta=%.6f)", weights->delta[std::size_t(v)]);
      label += buf;
    }
    cv.body += "    <text x=\"" + Canvas::coord(half + cv.scale * p(0) + 5) + "\" y=\"" +
               Canvas::coord(half - cv.scale * p(1) - 5) + "\" font-size=\"12\" font-family=\"monospace\">" + label +
               "</text>\n";
  }
  cv.body += "  </g>\n";

  const std::string s = std::to_string(opts.size);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + s +
         "\" height=\"" + s + "\" viewBox=\"0 0 " + s + " " + s + "\">\n" + cv.body + "</svg>\n";
}

}  // namespace hmap
