#include "mpfc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mpfc/harness.hpp"
#include "mpfc/io.hpp"

namespace mpfc {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double parse_cell(const std::string& s, int row) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("row " + std::to_string(row) + ": bad number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("row " + std::to_string(row) + ": bad number '" + s + "'");
  return v;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : split(text, '\n')) {
    const std::string t = trim(l);
    if (!t.empty() && t[0] != '#') out.push_back(t);
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  int width, height;
  static constexpr double left = 70, right = 20, top = 40, bottom = 50;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
  double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

Frame make_frame(double x0, double x1, double y0, double y1, const PlotOptions& o) {
  if (!(x1 > x0)) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (!(y1 > y0)) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  return {x0, x1, y0 - pad, y1 + pad, o.width, o.height};
}

std::string header(const PlotOptions& o) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(o.width) + "\" height=\"" +
         std::to_string(o.height) + "\" viewBox=\"0 0 " + std::to_string(o.width) + " " +
         std::to_string(o.height) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Frame& f, const PlotOptions& o) {
  std::string s;
  const double bx = Frame::left, by = f.height - Frame::bottom;
  s += "<line x1=\"" + num(bx) + "\" y1=\"" + num(by) + "\" x2=\"" + num(f.width - Frame::right) + "\" y2=\"" +
       num(by) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(bx) + "\" y1=\"" + num(by) + "\" x2=\"" + num(bx) + "\" y2=\"" + num(Frame::top) +
       "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = f.x0 + (f.x1 - f.x0) * t / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * t / 4.0;
    s += "<text x=\"" + num(f.px(xv)) + "\" y=\"" + num(by + 18) + "\" font-size=\"11\" text-anchor=\"middle\">" +
         num(xv) + "</text>\n";
    s += "<text x=\"" + num(bx - 6) + "\" y=\"" + num(f.py(yv) + 4) + "\" font-size=\"11\" text-anchor=\"end\">" +
         num(yv) + "</text>\n";
  }
  s += "<text x=\"" + num((bx + f.width - Frame::right) / 2) + "\" y=\"" + num(f.height - 10.0) +
       "\" font-size=\"13\" text-anchor=\"middle\">" + escape(o.x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + num((Frame::top + by) / 2) + "\" font-size=\"13\" text-anchor=\"middle\" " +
       "transform=\"rotate(-90 16 " + num((Frame::top + by) / 2) + ")\">" + escape(o.y_label) + "</text>\n";
  if (!o.title.empty()) {
    s += "<text x=\"" + num(f.width / 2.0) + "\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">" +
         escape(o.title) + "</text>\n";
  }
  return s;
}

}  // namespace

AggregateTable parse_aggregate_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw std::invalid_argument("empty aggregate CSV");
  if (lines.front() != "k,mean,ci_lo,ci_hi") {
    throw std::invalid_argument("unexpected header '" + lines.front() + "' (want k,mean,ci_lo,ci_hi)");
  }
  AggregateTable t;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto cells = split(lines[n], ',');
    const int row = static_cast<int>(n + 1);
    if (cells.size() != 4) throw std::invalid_argument("row " + std::to_string(row) + ": expected 4 columns");
    t.k.push_back(parse_cell(cells[0], row));
    t.mean.push_back(parse_cell(cells[1], row));
    t.ci_lo.push_back(parse_cell(cells[2], row));
    t.ci_hi.push_back(parse_cell(cells[3], row));
  }
  if (t.k.empty()) throw std::invalid_argument("aggregate CSV has no rows");
  return t;
}

SeriesStyle style_for(Architecture a) {
  SeriesStyle s;
  if (is_mpfc(a)) {
    s.colour = "#ff7f0e";
  } else if (is_mpc(a)) {
    s.colour = "#7b3294";
  } else {
    s.colour = "#2ca02c";
  }
  s.dashed = is_decentralised(a);
  return s;
}

std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  if (series.empty()) throw std::invalid_argument("nothing to plot");
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    if (s.data.k.empty()) throw std::invalid_argument("series '" + s.label + "' is empty");
    for (std::size_t n = 0; n < s.data.k.size(); ++n) {
      x0 = std::min(x0, s.data.k[n]);
      x1 = std::max(x1, s.data.k[n]);
      y0 = std::min({y0, s.data.ci_lo[n], s.data.mean[n]});
      y1 = std::max({y1, s.data.ci_hi[n], s.data.mean[n]});
    }
  }
  const Frame f = make_frame(x0, x1, y0, y1, options);
  std::string svg = header(options) + axes(f, options);
  for (const auto& s : series) {
    const SeriesStyle st = style_for(s.architecture);
    std::string band = "<polygon fill=\"" + st.colour + "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (std::size_t n = 0; n < s.data.k.size(); ++n) {
      band += num(f.px(s.data.k[n])) + "," + num(f.py(s.data.ci_hi[n])) + " ";
    }
    for (std::size_t n = s.data.k.size(); n-- > 0;) {
      band += num(f.px(s.data.k[n])) + "," + num(f.py(s.data.ci_lo[n])) + " ";
    }
    band.back() = '"';
    svg += band + "/>\n";
    std::string line = "<polyline fill=\"none\" stroke=\"" + st.colour + "\" stroke-width=\"1.5\"" +
                       (st.dashed ? " stroke-dasharray=\"6,4\"" : "") + " points=\"";
    for (std::size_t n = 0; n < s.data.k.size(); ++n) {
      line += num(f.px(s.data.k[n])) + "," + num(f.py(s.data.mean[n])) + " ";
    }
    line.back() = '"';
    svg += line + "/>\n";
  }
  // Legend.
  for (std::size_t n = 0; n < series.size(); ++n) {
    const SeriesStyle st = style_for(series[n].architecture);
    const double y = Frame::top + 10 + 16.0 * static_cast<double>(n);
    const double x = options.width - Frame::right - 190;
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x + 24) + "\" y2=\"" + num(y) +
           "\" stroke=\"" + st.colour + "\" stroke-width=\"2\"" + (st.dashed ? " stroke-dasharray=\"6,4\"" : "") +
           "/>\n";
    svg += "<text x=\"" + num(x + 30) + "\" y=\"" + num(y + 4) + "\" font-size=\"11\">" + escape(series[n].label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

SweepTable parse_sweep_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw std::invalid_argument("empty sweep CSV");
  if (lines.front().rfind("value,x,mean_j,ci_half", 0) != 0) {
    throw std::invalid_argument("unexpected header '" + lines.front() + "' (want value,x,mean_j,ci_half,...)");
  }
  SweepTable t;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto cells = split(lines[n], ',');
    const int row = static_cast<int>(n + 1);
    if (cells.size() < 4) throw std::invalid_argument("row " + std::to_string(row) + ": expected at least 4 columns");
    t.value.push_back(cells[0]);
    t.x.push_back(parse_cell(cells[1], row));
    t.mean.push_back(parse_cell(cells[2], row));
    t.half.push_back(parse_cell(cells[3], row));
  }
  if (t.x.empty()) throw std::invalid_argument("sweep CSV has no rows");
  return t;
}

std::string render_sweep_plot(const SweepTable& table, Architecture architecture, const PlotOptions& options) {
  if (table.x.empty()) throw std::invalid_argument("nothing to plot");
  double x0 = *std::min_element(table.x.begin(), table.x.end());
  double x1 = *std::max_element(table.x.begin(), table.x.end());
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (std::size_t n = 0; n < table.x.size(); ++n) {
    y0 = std::min(y0, table.mean[n] - table.half[n]);
    y1 = std::max(y1, table.mean[n] + table.half[n]);
  }
  const LinearFit fit = linear_fit(table.x, table.mean);
  y0 = std::min({y0, fit.intercept + fit.slope * x0, fit.intercept + fit.slope * x1});
  y1 = std::max({y1, fit.intercept + fit.slope * x0, fit.intercept + fit.slope * x1});
  const Frame f = make_frame(x0, x1, y0, y1, options);
  const SeriesStyle st = style_for(architecture);
  std::string svg = header(options) + axes(f, options);
  for (std::size_t n = 0; n < table.x.size(); ++n) {
    const double px = f.px(table.x[n]);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(f.py(table.mean[n] - table.half[n])) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(f.py(table.mean[n] + table.half[n])) + "\" stroke=\"" + st.colour + "\"/>\n";
    svg += "<circle cx=\"" + num(px) + "\" cy=\"" + num(f.py(table.mean[n])) + "\" r=\"3.5\" fill=\"" + st.colour +
           "\"/>\n";
  }
  svg += "<line x1=\"" + num(f.px(f.x0)) + "\" y1=\"" + num(f.py(fit.intercept + fit.slope * f.x0)) + "\" x2=\"" +
         num(f.px(f.x1)) + "\" y2=\"" + num(f.py(fit.intercept + fit.slope * f.x1)) + "\" stroke=\"" + st.colour +
         "\" stroke-dasharray=\"2,3\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace mpfc
