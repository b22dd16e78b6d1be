#include "stackres/figures.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stackres {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// Maps lattice coordinates to a canvas with the origin at the lower left.
class Canvas {
 public:
  Canvas(double width, double height, double unit, double left, double bottom)
      : width_(width), height_(height), unit_(unit), left_(left), bottom_(bottom) {}

  double X(double a) const { return left_ + unit_ * a; }
  double Y(double b) const { return height_ - bottom_ - unit_ * b; }

  void line(double a0, double b0, double a1, double b1, const std::string& style) {
    body_ << "<line x1=\"" << num(X(a0)) << "\" y1=\"" << num(Y(b0)) << "\" x2=\"" << num(X(a1)) << "\" y2=\"" << num(Y(b1))
          << "\" " << style << "/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    body_ << "<polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(X(pts[i].first)) << "," << num(Y(pts[i].second));
    body_ << "\" " << style << "/>\n";
  }
  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    body_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(X(pts[i].first)) << "," << num(Y(pts[i].second));
    body_ << "\" " << style << "/>\n";
  }
  void dot(double a, double b) {
    body_ << "<circle cx=\"" << num(X(a)) << "\" cy=\"" << num(Y(b)) << "\" r=\"3\" fill=\"black\"/>\n";
  }
  // Text anchored at lattice coordinates plus a pixel offset.
  void text(double a, double b, double dx, double dy, const std::string& s, const std::string& anchor = "middle") {
    body_ << "<text x=\"" << num(X(a) + dx) << "\" y=\"" << num(Y(b) + dy) << "\" text-anchor=\"" << anchor << "\">" << escape(s)
          << "</text>\n";
  }

  std::string str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width_) << "\" height=\"" << num(height_)
        << "\" font-family=\"serif\" font-size=\"13\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  double width_, height_, unit_, left_, bottom_;
  std::ostringstream body_;
};

double to_double(const Rational& r) { return r.get_d(); }

void grid(Canvas& c, int nx, int ny) {
  for (int i = 1; i <= nx; ++i) c.line(i, 0, i, ny, "stroke=\"#cccccc\" stroke-dasharray=\"1,3\"");
  for (int j = 1; j <= ny; ++j) c.line(0, j, nx, j, "stroke=\"#cccccc\" stroke-dasharray=\"1,3\"");
}

const std::string kAxis = "stroke=\"black\" stroke-width=\"1.5\"";

}  // namespace

std::string newton_polygon_svg(const CenterAnalysis& analysis, const Blowup* blowup) {
  const auto& cp = analysis.polyhedron;
  const std::size_t zi = cp.frame.z_index, xi = cp.frame.x_index();
  const std::string zname = cp.frame.variables[zi], xname = cp.frame.variables[xi];
  std::vector<LatticePoint> support;
  for (const auto& [e, c] : cp.working.terms()) support.push_back({e[xi], e[zi]});
  const NewtonPolygon np = newton_polygon(support);

  const Rational nu(analysis.invariant.nu), a2 = analysis.invariant.a2();
  std::int64_t max_a = static_cast<std::int64_t>(std::ceil(to_double(a2))), max_b = analysis.invariant.nu;
  for (const auto& v : np.vertices) {
    max_a = std::max(max_a, v[0]);
    max_b = std::max(max_b, v[1]);
  }
  const int nx = static_cast<int>(max_a) + 1, ny = static_cast<int>(max_b) + 1;
  const double unit = std::min(36.0, 520.0 / std::max(nx, ny));
  Canvas c(unit * nx + 140, unit * ny + 90, unit, 90, 50);

  // Region above the Newton polygon.
  std::vector<std::pair<double, double>> region;
  region.push_back({0, static_cast<double>(ny)});
  for (const auto& v : np.vertices) region.push_back({static_cast<double>(v[0]), static_cast<double>(v[1])});
  if (!np.vertices.empty()) {
    region.front().first = static_cast<double>(np.vertices.front()[0]);
    region.push_back({static_cast<double>(nx), static_cast<double>(np.vertices.back()[1])});
  }
  region.push_back({static_cast<double>(nx), static_cast<double>(ny)});
  c.polygon(region, "fill=\"#e8e8e8\" stroke=\"none\"");
  grid(c, nx, ny);
  c.line(0, 0, nx + 0.4, 0, kAxis);
  c.line(0, 0, 0, ny + 0.4, kAxis);
  c.text(nx + 0.4, 0, 14, 4, xname, "start");
  c.text(0, ny + 0.4, 0, -8, zname);
  // Newton boundary.
  std::vector<std::pair<double, double>> boundary;
  if (!np.vertices.empty()) boundary.push_back({static_cast<double>(np.vertices.front()[0]), static_cast<double>(ny)});
  for (const auto& v : np.vertices) boundary.push_back({static_cast<double>(v[0]), static_cast<double>(v[1])});
  if (!np.vertices.empty()) boundary.push_back({static_cast<double>(nx), static_cast<double>(np.vertices.back()[1])});
  c.polyline(boundary, "fill=\"none\" stroke=\"black\" stroke-width=\"2\"");
  for (const auto& p : np.points) c.dot(static_cast<double>(p[0]), static_cast<double>(p[1]));

  // Supporting line of the w-valuation through the two intercepts.
  const double A = to_double(a2), B = to_double(nu);
  c.line(0, B, A, 0, "stroke=\"black\" stroke-width=\"2.5\" stroke-dasharray=\"8,5\"");
  c.line(A, 0.15, A, -0.15, kAxis);
  c.text(A, 0, 0, 30, "\xce\xbd\xce\xb4 = " + a2.get_str());
  c.text(0, B, -10, 5, "\xce\xbd = " + nu.get_str(), "end");
  c.text(A / 2, B / 2, 10, -10, "w", "start");

  if (blowup && blowup->kind == BlowupKind::Multiweighted) {
    // u = (1, kappa) in the oriented coordinates: weight 1 on the first source variable.
    const std::int64_t ux = blowup->source_variables[0] == xname ? 1 : blowup->kappa;
    const std::int64_t uz = blowup->source_variables[0] == zname ? 1 : blowup->kappa;
    std::int64_t m = -1;
    for (const auto& p : np.points) {
      const std::int64_t v = ux * p[0] + uz * p[1];
      if (m < 0 || v < m) m = v;
    }
    // Clip u_x a + u_z b = m to the plotted box.
    std::vector<std::pair<double, double>> ends;
    const double md = static_cast<double>(m);
    for (double a : {0.0, static_cast<double>(nx)}) {
      const double b = (md - ux * a) / uz;
      if (b >= 0 && b <= ny) ends.push_back({a, b});
    }
    for (double b : {0.0, static_cast<double>(ny)}) {
      const double a = (md - uz * b) / ux;
      if (a >= 0 && a <= nx) ends.push_back({a, b});
    }
    if (ends.size() >= 2) {
      c.line(ends[0].first, ends[0].second, ends[1].first, ends[1].second, "stroke=\"#1f4fbf\" stroke-width=\"2\" stroke-dasharray=\"3,4\"");
      c.text(ends[0].first, ends[0].second, 8, -8, "u: \xce\xbd_u(f) = " + std::to_string(m), "start");
    }
  }
  return c.str();
}

std::string fan_svg(const Blowup& b) {
  const std::vector<LatticePoint> coarse = {{1, 0}, {b.w1, b.w2}, {0, 1}};
  std::vector<std::vector<LatticePoint>> panels = {coarse};
  if (b.fan.rays != coarse) panels.push_back(b.fan.rays);
  // Cones are unbounded, so every ray is drawn to the same length; labels carry the lattice
  // coordinates.
  const double R = 1.0, panel = 1.6;
  Canvas c(340 * static_cast<double>(panels.size()) + 60, 320, 220, 90, 50);
  auto tip = [&](const LatticePoint& r, double len) {
    const double l = std::hypot(static_cast<double>(r[0]), static_cast<double>(r[1]));
    return std::pair<double, double>{len * r[0] / l, len * r[1] / l};
  };
  const char* names[] = {"e1", "w", "u", "e2"};
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const auto& rays = panels[k];
    const double off = k * panel;
    for (std::size_t i = 0; i + 1 < rays.size(); ++i) {
      const auto [a0, b0] = tip(rays[i], R);
      const auto [a1, b1] = tip(rays[i + 1], R);
      c.polygon({{off, 0}, {off + a0, b0}, {off + a1, b1}}, std::string("fill=\"") + (i % 2 ? "#bdbdbd" : "#e0e0e0") + "\" stroke=\"none\"");
      const double ba = a0 + a1, bb = b0 + b1, l = std::hypot(ba, bb);
      c.text(off + 0.62 * R * ba / l, 0.62 * R * bb / l, 0, 4, "det " + std::to_string(determinant(rays[i], rays[i + 1])));
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const std::string name = rays.size() == 3 ? (i == 0 ? "e1" : i == 1 ? "w" : "e2") : names[i];
      const auto [a, bb] = tip(rays[i], R);
      c.line(off, 0, off + a, bb, "stroke=\"black\" stroke-width=\"2\"");
      const bool left = rays[i][0] == 0;
      c.text(off + a, bb, left ? -6 : 6, -6, "<" + name + "> (" + std::to_string(rays[i][0]) + "," + std::to_string(rays[i][1]) + ")",
             left ? "end" : "start");
    }
    c.text(off + R / 2, 0, 0, 30, k == 0 ? "\xce\xa3" : "\xce\xa3'");
  }
  return c.str();
}

std::vector<std::string> emit_figures(const ResolutionTree& tree, const std::string& directory) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& content) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    std::ofstream out(fs::path(directory) / name, std::ios::binary);
    if (!out || !(out << content)) throw Error("cannot write figure " + (fs::path(directory) / name).string());
    written.push_back(name);
  };
  for (const auto& n : tree.nodes) {
    if (!n.analysis || !n.blowup) continue;
    const std::string stem = "node-" + std::to_string(n.id);
    write(stem + "-newton.svg", newton_polygon_svg(*n.analysis, &*n.blowup));
    write(stem + "-fan.svg", fan_svg(*n.blowup));
  }
  return written;
}

}  // namespace stackres
