#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/invariant_maps.hpp"
#include "analytica/series.hpp"
#include "analytica/set_catalog.hpp"

namespace analytica {

struct Figure {
  std::string svg;
  std::string csv;
};

namespace detail {

struct Polyline {
  std::string name;
  std::vector<std::pair<double, double>> pts;
  bool markers = false;
};

inline std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0 ? 0.0 : v); // no "-0.000000"
  return buf;
}

/// Plain SVG: a 480x480 canvas, data box mapped with a 40px margin, y up.
inline Figure render(const std::string& title, const std::vector<Polyline>& lines, const std::string& xlabel,
                     const std::string& ylabel) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& l : lines)
    for (const auto& [x, y] : l.pts) {
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double W = 480, H = 480, pad = 40;
  auto sx = [&](double x) { return pad + (x - x0) / (x1 - x0) * (W - 2 * pad); };
  auto sy = [&](double y) { return H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad); };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
  svg += "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"240\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";
  svg += "<rect x=\"40\" y=\"40\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"#999\"/>\n";
  svg += "<text x=\"240\" y=\"470\" text-anchor=\"middle\" font-size=\"11\">" + xlabel + " [" + num(x0) + ", " + num(x1) + "]</text>\n";
  svg += "<text x=\"12\" y=\"240\" font-size=\"11\" transform=\"rotate(-90 12 240)\" text-anchor=\"middle\">" + ylabel + " [" +
         num(y0) + ", " + num(y1) + "]</text>\n";
  std::string csv = "curve," + xlabel + "," + ylabel + "\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const char* c = colours[i % 6];
    if (l.markers) {
      for (const auto& [x, y] : l.pts)
        svg += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"2\" fill=\"" + c + "\"/>\n";
    } else {
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < l.pts.size(); ++k) {
        if (k) svg += ' ';
        svg += num(sx(l.pts[k].first)) + "," + num(sy(l.pts[k].second));
      }
      svg += "\"/>\n";
    }
    for (const auto& [x, y] : l.pts) csv += l.name + "," + num(x) + "," + num(y) + "\n";
  }
  svg += "</svg>\n";
  return {std::move(svg), std::move(csv)};
}

template <class F>
Polyline graph(std::string name, double a, double b, int n, F f) {
  Polyline l{std::move(name), {}, false};
  for (int i = 0; i <= n; ++i) {
    const double x = a + (b - a) * i / n;
    l.pts.emplace_back(x, f(x));
  }
  return l;
}

inline void outline_into(const CuspidalSet& set, int n, std::vector<Polyline>& out) {
  if (set.dimension() != 2) throw UnsupportedError("set-outline draws planar sets only");
  const auto& k = set.kind();
  if (const auto* h = std::get_if<Horn>(&k)) {
    const int D = h->D;
    out.push_back(graph("y=x^D", 0, 1, n, [&](double x) { return std::pow(x, D); }));
    out.push_back(graph("y=2x^D", 0, 1, n, [&](double x) { return 2 * std::pow(x, D); }));
    out.push_back({"x=1", {{1, 1}, {1, 2}}, false});
  } else if (const auto* c = std::get_if<TruncatedCusp>(&k)) {
    const double alpha = std::holds_alternative<Sqrt2>(c->alpha) ? std::sqrt(2.0) : std::get<Rational>(c->alpha).get_d();
    const double r = c->r.get_d(), hh = c->h.get_d();
    Polyline l{"boundary", {}, false};
    for (int i = n; i >= 0; --i) {
      const double t = hh * i / n;
      l.pts.emplace_back(-std::min(r, r * std::pow(t / hh, 1 / alpha)), t);
    }
    for (int i = 1; i <= n; ++i) {
      const double t = hh * i / n;
      l.pts.emplace_back(std::min(r, r * std::pow(t / hh, 1 / alpha)), t);
    }
    l.pts.emplace_back(-r, hh);
    out.push_back(std::move(l));
  } else if (std::holds_alternative<IrrationalCusp>(k)) {
    out.push_back(graph("y=x^sqrt2", 0, 1, n, [](double x) { return std::pow(x, std::sqrt(2.0)); }));
    out.push_back(graph("y=x^sqrt2+x^2", 0, 1, n, [](double x) { return std::pow(x, std::sqrt(2.0)) + x * x; }));
  } else if (std::holds_alternative<CuspCurve>(k)) {
    out.push_back(graph("y=x^1.5", 0, 1, n, [](double x) { return std::pow(x, 1.5); }));
    out.push_back(graph("y=-x^1.5", 0, 1, n, [](double x) { return -std::pow(x, 1.5); }));
  } else if (const auto* d = std::get_if<DihedralRegion>(&k)) {
    const double e = d->d / 2.0;
    out.push_back(graph("y=x^(d/2)", 0, 1, n, [&](double x) { return std::pow(x, e); }));
    out.push_back(graph("y=-x^(d/2)", 0, 1, n, [&](double x) { return -std::pow(x, e); }));
  } else if (std::holds_alternative<Orthant>(k)) {
    out.push_back({"axes", {{0, 1}, {0, 0}, {1, 0}}, false});
  } else if (const auto* s = std::get_if<Simplex>(&k)) {
    Polyline l{"edges", {}, false};
    for (const auto& v : s->vertices) l.pts.emplace_back(v[0].get_d(), v[1].get_d());
    l.pts.push_back(l.pts.front());
    out.push_back(std::move(l));
  } else if (const auto* u = std::get_if<SetUnion>(&k)) {
    for (const auto& m : u->members) outline_into(m, n, out);
  } else {
    throw UnsupportedError("set-outline has no drawing for " + set.name());
  }
}

} // namespace detail

inline Figure set_outline(const CuspidalSet& set, int points = 100) {
  std::vector<detail::Polyline> lines;
  detail::outline_into(set, points, lines);
  return detail::render("set-outline " + set.name(), lines, "x", "y");
}

/// |a_k| per total degree k (largest coefficient of that degree) on a log10
/// axis, with the e^c factor multiplied back in when present.
inline Figure coefficient_decay(const TruncatedSeries& s, const std::string& title = "series") {
  std::vector<double> best(static_cast<std::size_t>(s.order()) + 1, -INFINITY);
  for (const auto& [e, c] : s.polynomial().terms()) {
    int k = 0;
    for (int v : e) k += v;
    if (k <= s.order() && c != 0) best[static_cast<std::size_t>(k)] = std::max(best[static_cast<std::size_t>(k)], log_abs(c));
  }
  const double shift = s.exp_scale() != 0 ? s.exp_scale().get_d() / std::log(10.0) : 0.0;
  detail::Polyline l{"log10|a_k|", {}, true};
  for (std::size_t k = 0; k < best.size(); ++k)
    if (std::isfinite(best[k])) l.pts.emplace_back(static_cast<double>(k), best[k] / std::log(10.0) + shift);
  return detail::render("coefficient-decay " + title, {l}, "k", "log10|a_k|");
}

/// Image of the circle of radius r under sigma_d: a segment on x = r^2.
inline Figure circle_image(const CircleReport& rep) {
  detail::Polyline l{"image", {}, true};
  std::string csv = "theta,x,y\n";
  for (const auto& row : rep.rows) {
    l.pts.emplace_back(row.x, row.y);
    csv += detail::num(row.theta) + "," + detail::num(row.x) + "," + detail::num(row.y) + "\n";
  }
  Figure f = detail::render("circle-image d=" + std::to_string(rep.d) + " r=" + rep.r.get_str(), {l}, "sigma1", "sigma2");
  f.csv = std::move(csv);
  return f;
}

} // namespace analytica
