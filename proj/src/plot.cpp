#include "raed/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "raed/bench.hpp"

namespace raed {

namespace {

constexpr const char* kHeader =
    "figure,axis_name,axis_value,extra_axes,algorithm,mean,stderr,realizations,wall_ms";

struct Point {
  double x = 0;
  double y = 0;
  double err = 0;
};

struct Series {
  std::string label;
  std::vector<Point> pts;
};

double parse_num(const std::string& field, int line_no, const char* what) {
  try {
    size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad " + what + " '" +
                                field + "'");
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// step from {1, 2, 5} * 10^k closest above span/target
double nice_step(double span, int target) {
  if (span <= 0) return 1;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (mag * m >= raw) return mag * m;
  return mag * 10;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

}  // namespace

std::string plot_csv_to_svg(const std::string& csv_text, std::string* warning) {
  if (warning) warning->clear();
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty input, expected CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw std::invalid_argument("unexpected CSV header: '" + line + "'");

  std::string figure, axis_name;
  std::vector<Series> series;
  std::map<std::string, size_t> series_index;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    f.push_back(cur);
    if (f.size() != 9)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 9 fields, got " +
                                  std::to_string(f.size()));
    if (figure.empty()) figure = f[0];
    if (axis_name.empty()) axis_name = f[1];
    Point p;
    p.x = parse_num(f[2], line_no, "axis_value");
    p.y = parse_num(f[5], line_no, "mean");
    p.err = parse_num(f[6], line_no, "stderr");
    std::string label = f[4];
    if (!f[3].empty()) label += " [" + f[3] + "]";
    auto [it, fresh] = series_index.try_emplace(label, series.size());
    if (fresh) series.push_back({label, {}});
    series[it->second].pts.push_back(p);
  }

  const double W = 800, H = 500, L = 70, R = 170, T = 45, B = 55;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
         "width=\"800\" height=\"500\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";

  if (series.empty()) {
    if (warning) *warning = "no data rows";
    svg << "<text x=\"400\" y=\"250\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"18\" fill=\"#666666\">no data</text>\n</svg>\n";
    return svg.str();
  }

  for (Series& s : series)
    std::stable_sort(s.pts.begin(), s.pts.end(),
                     [](const Point& a, const Point& b) { return a.x < b.x; });

  double xlo = series[0].pts[0].x, xhi = xlo;
  double ylo = 0, yhi = series[0].pts[0].y;
  for (const Series& s : series)
    for (const Point& p : s.pts) {
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y - p.err);
      yhi = std::max(yhi, p.y + p.err);
    }
  if (xhi == xlo) xhi = xlo + 1;
  if (yhi <= ylo) yhi = ylo + 1;
  yhi += (yhi - ylo) * 0.05;

  const double px0 = L, px1 = W - R, py0 = H - B, py1 = T;
  auto sx = [&](double x) { return px0 + (x - xlo) / (xhi - xlo) * (px1 - px0); };
  auto sy = [&](double y) { return py0 + (y - ylo) / (yhi - ylo) * (py1 - py0); };

  svg << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\" fill=\"#222222\">"
      << escape(figure) << "</text>\n";

  const double xstep = nice_step(xhi - xlo, 6);
  const double ystep = nice_step(yhi - ylo, 5);
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\">\n";
  for (double x = std::ceil(xlo / xstep) * xstep; x <= xhi + 1e-9; x += xstep) {
    svg << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(sx(x))
        << "\" y2=\"" << num(py1) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(py0 + 16)
        << "\" text-anchor=\"middle\">" << format_number(x) << "</text>\n";
  }
  for (double y = std::ceil(ylo / ystep) * ystep; y <= yhi + 1e-9; y += ystep) {
    svg << "<line x1=\"" << num(px0) << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << num(px1)
        << "\" y2=\"" << num(sy(y)) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << num(px0 - 6) << "\" y=\"" << num(sy(y) + 4)
        << "\" text-anchor=\"end\">" << format_number(y) << "</text>\n";
  }
  svg << "</g>\n"
      << "<line x1=\"" << num(px0) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(px1)
      << "\" y2=\"" << num(py0) << "\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n"
      << "<line x1=\"" << num(px0) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(px0)
      << "\" y2=\"" << num(py1) << "\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n"
      << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"" << num(H - 14)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "fill=\"#222222\">"
      << escape(axis_name) << "</text>\n"
      << "<text x=\"20\" y=\"" << num((py0 + py1) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "fill=\"#222222\" transform=\"rotate(-90 20 "
      << num((py0 + py1) / 2) << ")\">mean</text>\n";

  static const char* kPalette[] = {"#1f6fb4", "#d1662c", "#2f8f4e", "#b03a3a",
                                   "#7a5da8", "#8a6f46", "#c26fa8", "#5b5b5b"};
  const size_t ncolors = sizeof kPalette / sizeof kPalette[0];
  for (size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % ncolors];
    const Series& s = series[i];
    std::ostringstream path;
    for (size_t k = 0; k < s.pts.size(); ++k)
      path << (k ? " " : "") << num(sx(s.pts[k].x)) << ',' << num(sy(s.pts[k].y));
    if (s.pts.size() > 1)
      svg << "<polyline points=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
    for (const Point& p : s.pts) {
      if (p.err > 0) {
        svg << "<line x1=\"" << num(sx(p.x)) << "\" y1=\"" << num(sy(p.y - p.err)) << "\" x2=\""
            << num(sx(p.x)) << "\" y2=\"" << num(sy(p.y + p.err)) << "\" stroke=\"" << color
            << "\" stroke-width=\"1\"/>\n"
            << "<line x1=\"" << num(sx(p.x) - 3) << "\" y1=\"" << num(sy(p.y - p.err))
            << "\" x2=\"" << num(sx(p.x) + 3) << "\" y2=\"" << num(sy(p.y - p.err))
            << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n"
            << "<line x1=\"" << num(sx(p.x) - 3) << "\" y1=\"" << num(sy(p.y + p.err))
            << "\" x2=\"" << num(sx(p.x) + 3) << "\" y2=\"" << num(sy(p.y + p.err))
            << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
      }
      svg << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
    }
  }

  const double lx = W - R + 12;
  double ly = T + 8;
  svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n";
  for (size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % ncolors];
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 22)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly + 4) << "\">"
        << escape(series[i].label) << "</text>\n";
    ly += 18;
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace raed
