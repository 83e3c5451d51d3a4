#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fracred::tools {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 34.0, kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

double transform(double v, bool log_scale) {
  return log_scale ? std::log10(v) : v;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  if (span <= 0.0) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * span;
       t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  for (int d = static_cast<int>(std::ceil(lo - 1e-9));
       d <= static_cast<int>(std::floor(hi + 1e-9)); ++d) {
    ticks.push_back(static_cast<double>(d));
  }
  if (ticks.empty()) ticks = {lo, hi};
  return ticks;
}

}  // namespace

std::string emit_svg(const std::vector<Series>& series, const AxesSpec& axes) {
  if (series.empty()) {
    throw std::invalid_argument("emit_svg: no series to draw");
  }

  Range rx, ry;
  std::size_t drawable = 0;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("emit_svg: series length mismatch");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (axes.log_x && s.x[i] <= 0.0) {
        throw std::domain_error("emit_svg: log x-axis with x <= 0");
      }
      if (axes.log_y && s.y[i] <= 0.0) {
        throw std::domain_error("emit_svg: log y-axis with y <= 0");
      }
      rx.include(transform(s.x[i], axes.log_x));
      ry.include(transform(s.y[i], axes.log_y));
      ++drawable;
    }
  }
  if (drawable == 0) {
    throw std::invalid_argument("emit_svg: no finite points to draw");
  }
  if (rx.hi == rx.lo) {
    rx.lo -= 0.5;
    rx.hi += 0.5;
  }
  if (ry.hi == ry.lo) {
    ry.lo -= 0.5;
    ry.hi += 0.5;
  }
  const double pad_y = 0.04 * (ry.hi - ry.lo);
  ry.lo -= pad_y;
  ry.hi += pad_y;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) {
    return kLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w;
  };
  auto py = [&](double v) {
    return kTop + (ry.hi - v) / (ry.hi - ry.lo) * plot_h;
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(kHeight) << "\">\n"
      << "<rect width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" fill=\"white\"/>\n";

  if (!axes.title.empty()) {
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"14\">" << escape(axes.title) << "</text>\n";
  }

  // grid + ticks
  const std::vector<double> tx =
      axes.log_x ? log_ticks(rx.lo, rx.hi) : linear_ticks(rx.lo, rx.hi);
  const std::vector<double> ty =
      axes.log_y ? log_ticks(ry.lo, ry.hi) : linear_ticks(ry.lo, ry.hi);
  for (double t : tx) {
    const double x = px(t);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\""
        << num(x) << "\" y2=\"" << num(kTop + plot_h)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\">"
        << tick_text(axes.log_x ? std::pow(10.0, t) : t) << "</text>\n";
  }
  for (double t : ty) {
    const double y = py(t);
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kLeft + plot_w) << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">"
        << tick_text(axes.log_y ? std::pow(10.0, t) : t) << "</text>\n";
  }

  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  if (!axes.x_label.empty()) {
    out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\""
        << num(kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << escape(axes.x_label) << "</text>\n";
  }
  if (!axes.y_label.empty()) {
    out << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\" transform=\"rotate(-90 16 "
        << num(kTop + plot_h / 2) << ")\">" << escape(axes.y_label)
        << "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    std::ostringstream points;
    bool any = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (any) points << " ";
      points << num(px(transform(s.x[i], axes.log_x))) << ","
             << num(py(transform(s.y[i], axes.log_y)));
      any = true;
    }
    if (!any) continue;
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"" << points.str() << "\"/>\n";
    if (!s.label.empty()) {
      const double ly = kTop + 14.0 + 16.0 * static_cast<double>(si);
      out << "<line x1=\"" << num(kLeft + plot_w - 130) << "\" y1=\""
          << num(ly - 4) << "\" x2=\"" << num(kLeft + plot_w - 110)
          << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
      out << "<text x=\"" << num(kLeft + plot_w - 104) << "\" y=\"" << num(ly)
          << "\" font-family=\"sans-serif\" font-size=\"11\">"
          << escape(s.label) << "</text>\n";
    }
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace fracred::tools
