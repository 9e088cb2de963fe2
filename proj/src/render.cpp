#include "minkbill/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "minkbill/error.hpp"

namespace minkbill {

namespace {

struct Box {
  double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
  bool first = true;
  void grow(double x, double y) {
    if (first) {
      lo_x = hi_x = x;
      lo_y = hi_y = y;
      first = false;
      return;
    }
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
};

std::string num(double v) {
  char buf[48];
  if (v == 0) v = 0;  // avoid "-0.0000"
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// SVG's y axis points down; flip once here.
std::string xy(const Vec& p) { return num(rat_to_double(p[0])) + "," + num(-rat_to_double(p[1])); }

std::string polygon(const std::vector<Vec>& pts, const std::string& style) {
  std::string s = "  <polygon points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) s += " ";
    s += xy(pts[i]);
  }
  s += "\" " + style + "/>\n";
  return s;
}

// Vertices of a convex polygon in drawing order (by angle around the mean).
std::vector<Vec> ring(const std::vector<Vec>& verts) {
  Vec c = zero_vec(2);
  for (const Vec& v : verts) c = add(c, v);
  c = scale(c, frac(1, static_cast<long>(verts.size())));
  std::vector<Vec> out = verts;
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    double aa = std::atan2(rat_to_double(a[1] - c[1]), rat_to_double(a[0] - c[0]));
    double bb = std::atan2(rat_to_double(b[1] - c[1]), rat_to_double(b[0] - c[0]));
    return aa < bb;
  });
  return out;
}

}  // namespace

std::string render_solution_svg(const BilliardSolution& sol) {
  if (sol.table.dim() != 2) fail_input("rendering supports dimension 2 only");
  Body ball = polar_dual(sol.norm);  // unit ball of the gauge

  Box box;
  for (const Vec& v : sol.table.vertices()) box.grow(rat_to_double(v[0]), rat_to_double(v[1]));
  for (const Vec& v : ball.vertices()) box.grow(rat_to_double(v[0]), rat_to_double(v[1]));
  for (const Vec& v : sol.trajectory.points) box.grow(rat_to_double(v[0]), rat_to_double(v[1]));
  double w = box.hi_x - box.lo_x, h = box.hi_y - box.lo_y;
  double margin = 0.12 * std::max(w, h) + 0.2;
  double view_x = box.lo_x - margin, view_y = -(box.hi_y + margin);
  double view_w = w + 2 * margin, view_h = h + 2 * margin;
  double stroke = std::max(view_w, view_h) / 220.0;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(view_x) + " " + num(view_y) +
       " " + num(view_w) + " " + num(view_h) + "\">\n";
  s += "  <defs>\n    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
       "markerWidth=\"5\" markerHeight=\"5\" orient=\"auto-start-reverse\">\n"
       "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#b4232a\"/>\n    </marker>\n  </defs>\n";
  std::string sw = num(stroke);
  s += polygon(ring(sol.table.vertices()),
               "fill=\"#eef2fb\" stroke=\"#3b4a6b\" stroke-width=\"" + sw + "\"");
  s += polygon(ring(ball.vertices()), "fill=\"none\" stroke=\"#8a8f98\" stroke-width=\"" + sw +
                                          "\" stroke-dasharray=\"" + num(3 * stroke) + " " +
                                          num(3 * stroke) + "\"");
  // Trajectory with direction arrows.
  const auto& pts = sol.trajectory.points;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec& a = pts[i];
    const Vec& b = pts[(i + 1) % pts.size()];
    s += "  <line x1=\"" + num(rat_to_double(a[0])) + "\" y1=\"" + num(-rat_to_double(a[1])) +
         "\" x2=\"" + num(rat_to_double(b[0])) + "\" y2=\"" + num(-rat_to_double(b[1])) +
         "\" stroke=\"#b4232a\" stroke-width=\"" + num(1.4 * stroke) +
         "\" marker-end=\"url(#arrow)\"/>\n";
  }
  // Bounce points and outward contact normals.
  for (size_t i = 0; i < pts.size(); ++i) {
    Vec on_boundary = sub(pts[i], sol.boundary_translate);
    auto act = active_rows(sol.table.hrep, on_boundary);
    for (int j : act) {
      const Vec& n = sol.table.facets()[static_cast<size_t>(j)].a;
      double nx = rat_to_double(n[0]), ny = rat_to_double(n[1]);
      double len = std::hypot(nx, ny);
      if (len == 0) continue;
      double scale_to = 9 * stroke / len;
      double px = rat_to_double(pts[i][0]), py = rat_to_double(pts[i][1]);
      s += "  <line x1=\"" + num(px) + "\" y1=\"" + num(-py) + "\" x2=\"" +
           num(px + nx * scale_to) + "\" y2=\"" + num(-(py + ny * scale_to)) +
           "\" stroke=\"#2e7d32\" stroke-width=\"" + sw + "\"/>\n";
    }
    s += "  <circle cx=\"" + num(rat_to_double(pts[i][0])) + "\" cy=\"" +
         num(-rat_to_double(pts[i][1])) + "\" r=\"" + num(2 * stroke) + "\" fill=\"#b4232a\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace minkbill
