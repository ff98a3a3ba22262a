#include "wkb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace wkb {

namespace {

constexpr double view = 640.0;  // square canvas, world box mapped to it

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Mapper {
  double world;  // half-width of the centered world box
  double px(cplx z) const { return (z.real() / world + 1.0) * 0.5 * view; }
  double py(cplx z) const { return (1.0 - z.imag() / world) * 0.5 * view; }
  std::string at(cplx z) const { return num(px(z)) + "," + num(py(z)); }
};

std::string header() {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(view) + "\" height=\"" + num(view) + "\" viewBox=\"0 0 " + num(view) + " " +
         num(view) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Mapper& m) {
  std::string s;
  s += "<line x1=\"0\" y1=\"" + num(0.5 * view) + "\" x2=\"" + num(view) + "\" y2=\"" +
       num(0.5 * view) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + num(0.5 * view) + "\" y1=\"0\" x2=\"" + num(0.5 * view) + "\" y2=\"" +
       num(view) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  (void)m;
  return s;
}

std::string text(const Mapper& m, cplx z, const std::string& label, const char* fill) {
  return "<text x=\"" + num(m.px(z)) + "\" y=\"" + num(m.py(z)) +
         "\" font-family=\"monospace\" font-size=\"14\" fill=\"" + fill +
         "\" text-anchor=\"middle\">" + label + "</text>\n";
}

}  // namespace

std::string stokes_svg(const StokesGraph& g) {
  const Mapper m{1.15 * g.R_infinity};
  std::string s = header() + axes(m);

  for (const auto& ln : g.lines) {
    std::string pts;
    for (const auto& sample : ln.samples) pts += m.at(sample.x) + " ";
    if (!pts.empty()) pts.pop_back();
    s += std::string("<polyline fill=\"none\" stroke=\"") +
         (ln.finite ? "#c02020" : "#2040c0") + "\" stroke-width=\"" +
         (ln.finite ? "2.5" : "1.5") + "\" points=\"" + pts + "\"/>\n";
  }

  for (const auto& tp : g.tps.points) {
    s += "<circle cx=\"" + num(m.px(tp.location)) + "\" cy=\"" + num(m.py(tp.location)) +
         "\" r=\"4\" fill=\"black\"/>\n";
  }

  for (const auto& sec : g.sectors) {
    const double th = 0.5 * (sec.theta_lo + sec.theta_hi);
    const cplx pos = std::polar(0.92 * m.world, sec.theta_lo < sec.theta_hi
                                                    ? th
                                                    : th + pi);  // wrapped wedge
    s += text(m, pos, "S" + std::to_string(sec.index) + (sec.signature > 0 ? "+" : "-"),
              "#106010");
  }

  return s + "</svg>\n";
}

std::string pole_map_svg(const PadeApproximant& p, const SingularityForecast& f,
                         double radius_estimate) {
  double extent = radius_estimate;
  for (const cplx& z : p.poles) extent = std::max(extent, std::abs(z));
  for (const cplx& z : f.fixed) extent = std::max(extent, std::abs(z));
  extent = std::max(extent, std::abs(f.moving));
  if (!(extent > 0.0)) extent = 1.0;
  const Mapper m{1.15 * extent};
  std::string s = header() + axes(m);

  if (radius_estimate > 0.0) {
    s += "<circle cx=\"" + num(0.5 * view) + "\" cy=\"" + num(0.5 * view) + "\" r=\"" +
         num(radius_estimate / m.world * 0.5 * view) +
         "\" fill=\"none\" stroke=\"#909090\" stroke-dasharray=\"6,4\"/>\n";
  }

  auto ring = [&](cplx z, const char* color) {
    s += "<circle cx=\"" + num(m.px(z)) + "\" cy=\"" + num(m.py(z)) + "\" r=\"7\" fill=\"none\" stroke=\"" +
         color + "\" stroke-width=\"2\"/>\n";
  };
  ring(f.moving, "#108030");
  for (const cplx& z : f.fixed) ring(z, "#b06000");

  for (std::size_t i = 0; i < p.poles.size(); ++i) {
    const double x = m.px(p.poles[i]), y = m.py(p.poles[i]), d = 5.0;
    const char* color = p.froissart[i] ? "#b0b0b0" : "#c02020";
    s += "<path stroke=\"" + std::string(color) + "\" stroke-width=\"2\" d=\"M" + num(x - d) +
         " " + num(y - d) + " L" + num(x + d) + " " + num(y + d) + " M" + num(x - d) + " " +
         num(y + d) + " L" + num(x + d) + " " + num(y - d) + "\"/>\n";
  }

  return s + "</svg>\n";
}

}  // namespace wkb
