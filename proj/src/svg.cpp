#include "qfan/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qfan/errors.hpp"

namespace qfan {

// Rendering is the single place doubles appear; the fixed "%.4f" format
// keeps the byte output stable for identical inputs.

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v + 0.0);  // normalize -0
  return buf;
}

struct Canvas {
  std::ostringstream os;
  void open(int w, int h) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  }
  void line(double x1, double y1, double x2, double y2, const char* style) {
    os << "  <line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
       << "\" y2=\"" << fmt(y2) << "\" " << style << "/>\n";
  }
  void circle(double cx, double cy, double r, const char* style) {
    os << "  <circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
       << "\" " << style << "/>\n";
  }
  void text(double x, double y, const std::string& s) {
    os << "  <text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
       << "\" font-size=\"14\" font-family=\"monospace\">" << s << "</text>\n";
  }
  std::string close() {
    os << "</svg>\n";
    return os.str();
  }
};

constexpr const char* kSolid = "stroke=\"black\" stroke-width=\"2\"";
constexpr const char* kDashed = "stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"7 5\"";

std::pair<double, double> project3(double x, double y, double z) {
  // fixed oblique projection for wireframes
  return {x - 0.45 * z, -(y - 0.35 * z)};
}

}  // namespace

std::string render_fan_svg(const QuantumFan& fan) {
  const int W = 512, H = 512;
  const double cx = W / 2.0, cy = H / 2.0, R = 220.0;
  Canvas c;
  c.open(W, H);
  const Calibration& cal = fan.cal();
  if (fan.dim() == 2) {
    c.circle(cx, cy, R, "fill=\"none\" stroke=\"lightgray\" stroke-width=\"1\"");
    std::vector<int> gens = fan.generators();
    for (int j = 0; j < cal.n(); ++j) {
      double x = cal.columns.at(0, j).to_double();
      double y = cal.columns.at(1, j).to_double();
      double norm = std::sqrt(x * x + y * y);
      if (norm == 0) continue;
      double ux = x / norm, uy = -y / norm;  // svg y axis points down
      bool is_gen = std::binary_search(gens.begin(), gens.end(), j);
      c.line(cx, cy, cx + R * ux, cy + R * uy, is_gen ? kSolid : kDashed);
      c.text(cx + 1.08 * R * ux - 5, cy + 1.08 * R * uy + 5, std::to_string(j + 1));
    }
  } else if (fan.dim() == 3) {
    std::vector<int> gens = fan.generators();
    for (int j = 0; j < cal.n(); ++j) {
      double x = cal.columns.at(0, j).to_double();
      double y = cal.columns.at(1, j).to_double();
      double z = cal.columns.at(2, j).to_double();
      double norm = std::sqrt(x * x + y * y + z * z);
      if (norm == 0) continue;
      auto [px, py] = project3(x / norm, y / norm, z / norm);
      bool is_gen = std::binary_search(gens.begin(), gens.end(), j);
      c.line(cx, cy, cx + R * px, cy + R * py, is_gen ? kSolid : kDashed);
      c.text(cx + 1.08 * R * px - 5, cy + 1.08 * R * py + 5, std::to_string(j + 1));
    }
  } else {
    fail(ErrorCode::UnrenderableDimension,
         "fans render in dimension 2 or 3, got " + std::to_string(fan.dim()));
  }
  return c.close();
}

std::string render_polytope_svg(const Polytope& p) {
  if (p.ambient_dim() > 3)
    fail(ErrorCode::UnrenderableDimension, "polytopes render in ambient dimension <= 3");
  const int W = 512, H = 512;
  Canvas c;
  c.open(W, H);
  // project vertices
  std::vector<std::pair<double, double>> pts;
  for (const auto& v : p.vertices()) {
    double x = v.size() > 0 ? v[0].to_double() : 0.0;
    double y = v.size() > 1 ? v[1].to_double() : 0.0;
    double z = v.size() > 2 ? v[2].to_double() : 0.0;
    if (p.ambient_dim() == 3) {
      pts.push_back(project3(x, y, z));
    } else {
      pts.emplace_back(x, -y);
    }
  }
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  for (auto& [x, y] : pts) {
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
  double span = std::max(std::max(maxx - minx, maxy - miny), 1e-9);
  double scale = 420.0 / span;
  auto tx = [&](double x) { return 46 + (x - minx) * scale; };
  auto ty = [&](double y) { return 46 + (y - miny) * scale; };
  for (const auto& [i, j] : p.edges())
    c.line(tx(pts[static_cast<std::size_t>(i)].first), ty(pts[static_cast<std::size_t>(i)].second),
           tx(pts[static_cast<std::size_t>(j)].first), ty(pts[static_cast<std::size_t>(j)].second),
           kSolid);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    c.circle(tx(pts[i].first), ty(pts[i].second), 3, "fill=\"black\"");
    c.text(tx(pts[i].first) + 6, ty(pts[i].second) - 6, std::to_string(i + 1));
  }
  return c.close();
}

}  // namespace qfan
