#include "svg.hpp"

#include <cstdio>
#include <sstream>

namespace aztec::svg {

namespace {

const char* kColors[4] = {"#d1495b", "#edae49", "#00798c", "#30638e"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string tiling(const VGrid& g, const DomainSpec& d, const TilingLayers& layers) {
  const TilingLayout t = layout(g, d);
  const double s = 6.0;  // pixels per doubled unit
  long wmax = 0, hmax = 0;
  for (const Square& q : t.squares) {
    wmax = std::max(wmax, q.ci2 + 1);
    hmax = std::max(hmax, q.cj2 + 1);
  }
  const double W = (wmax + 2) * s, H = (hmax + 2) * s;
  auto px = [&](double i2) { return (i2 + 1) * s; };
  auto py = [&](double j2) { return H - (j2 + 1) * s; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<!-- schema_version 1 -->\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H)
    << "\" viewBox=\"0 0 " << num(W) << ' ' << num(H) << "\">\n<g id=\"cells\" stroke=\"none\">\n";
  for (const Square& q : t.squares) {
    const int kind = t.dominoes[q.domino].kind();
    o << "<polygon class=\"cell\" data-row=\"" << q.row << "\" data-pos=\"" << q.pos << "\" data-v=\"" << q.v
      << "\" fill=\"" << kColors[kind] << "\" points=\"";
    const auto c = corners2(q);
    for (int k : {0, 1, 3, 2}) o << num(px(c[k][0])) << ',' << num(py(c[k][1])) << ' ';
    o << "\"/>\n";
  }
  o << "</g>\n<g id=\"dominoes\" fill=\"none\" stroke=\"#222\" stroke-width=\"0.6\">\n";
  for (const Domino& dm : t.dominoes) {
    // outer boundary of two diamonds sharing an edge
    const Square& a = t.squares[dm.lower];
    const Square& b = t.squares[dm.upper];
    const auto ca = corners2(a), cb = corners2(b);
    std::array<std::array<long, 2>, 4> quad;
    if (dm.leans_right)
      quad = {ca[0], ca[1], cb[3], cb[2]};
    else
      quad = {ca[0], ca[2], cb[3], cb[1]};
    o << "<polygon class=\"domino\" points=\"";
    for (const auto& c : quad) o << num(px(c[0])) << ',' << num(py(c[1])) << ' ';
    o << "\"/>\n";
  }
  o << "</g>\n";
  if (layers.paths) {
    o << "<g id=\"paths\" fill=\"none\" stroke=\"#000\" stroke-width=\"1.2\">\n";
    for (const Path& p : paths_from_vgrid(g)) {
      o << "<polyline points=\"";
      for (const PathPoint& q : p) o << num(px(2.0 * q.pos + row_offset2(q.row))) << ',' << num(py(q.row - 1)) << ' ';
      o << "\"/>\n";
    }
    o << "</g>\n";
  }
  if (!layers.arctic.empty()) {
    const double n2 = 2.0 * d.N;
    o << "<g id=\"arctic\" fill=\"none\" stroke=\"#111\" stroke-width=\"1.5\" stroke-dasharray=\"4 2\">\n";
    for (const Polyline& pl : layers.arctic) {
      o << "<polyline points=\"";
      for (const Point2& p : pl) o << num(px(n2 * p[0])) << ',' << num(py(n2 * p[1] - 1)) << ' ';
      o << "\"/>\n";
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string curves(const std::vector<Polyline>& pieces, double x0, double x1, double y0, double y1,
                   const std::string& title) {
  const double W = 600, H = 600, pad = 40;
  auto px = [&](double x) { return pad + (x - x0) / (x1 - x0) * (W - 2 * pad); };
  auto py = [&](double y) { return H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad); };
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- schema_version 1 -->\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n"
    << "<title>" << title << "</title>\n"
    << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\"" << H - 2 * pad
    << "\" fill=\"none\" stroke=\"#888\"/>\n<g fill=\"none\" stroke=\"#30638e\" stroke-width=\"1.5\">\n";
  for (const Polyline& pl : pieces) {
    o << "<polyline points=\"";
    for (const Point2& p : pl) o << num(px(p[0])) << ',' << num(py(p[1])) << ' ';
    o << "\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace aztec::svg
