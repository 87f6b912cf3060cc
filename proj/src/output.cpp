#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gnd/error.hpp"
#include "gnd/experiments.hpp"

namespace gnd {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string stats_to_csv(const StatsSeries& series) {
  std::string out = "t,mse,ncp\n";
  for (std::size_t t = 0; t < series.mse.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(series.mse[t]);
    out += ',';
    out += format_double(series.ncp[t]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.empty()) throw IoError("cannot write file: empty path");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write file '" + path.string() + "'");
  os << text;
  os.flush();
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

void write_csv(const StatsSeries& series, const std::filesystem::path& path) {
  write_text_file(path, stats_to_csv(series));
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 260.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 40.0;

// Zeros cannot sit on a log axis; they are drawn at the floor.
constexpr double kLogFloor = 1e-16;

void draw_panel(std::ostringstream& svg, const std::vector<double>& ys, const std::string& label,
                double y_offset) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kPanelHeight - kTop - kBottom;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double y : ys) {
    if (y > 0.0) {
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  if (!std::isfinite(lo)) lo = hi = kLogFloor;
  lo = std::max(lo, kLogFloor);
  double dec_lo = std::floor(std::log10(lo));
  double dec_hi = std::ceil(std::log10(hi));
  if (dec_hi <= dec_lo) dec_hi = dec_lo + 1.0;

  const double x0 = kLeft;
  const double y0 = y_offset + kTop;
  const std::size_t n = ys.size();
  auto px = [&](std::size_t t) {
    return x0 + (n > 1 ? plot_w * static_cast<double>(t) / static_cast<double>(n - 1) : 0.0);
  };
  auto py = [&](double y) {
    const double ly = std::log10(std::max(y, std::pow(10.0, dec_lo)));
    return y0 + plot_h * (dec_hi - ly) / (dec_hi - dec_lo);
  };

  svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (double dec = dec_lo; dec <= dec_hi; dec += 1.0) {
    const double yy = y0 + plot_h * (dec_hi - dec) / (dec_hi - dec_lo);
    svg << "<line x1=\"" << x0 << "\" y1=\"" << yy << "\" x2=\"" << x0 + plot_w << "\" y2=\""
        << yy << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << x0 - 6 << "\" y=\"" << yy + 4
        << "\" font-size=\"11\" text-anchor=\"end\">1e" << static_cast<int>(dec) << "</text>\n";
  }
  svg << "<text x=\"" << x0 << "\" y=\"" << y0 - 8 << "\" font-size=\"13\">" << label
      << "</text>\n";
  svg << "<text x=\"" << x0 + plot_w << "\" y=\"" << y0 + plot_h + 28
      << "\" font-size=\"11\" text-anchor=\"end\">iteration (0.." << (n ? n - 1 : 0)
      << ")</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.2\" points=\"";
  // Long series are thinned to at most ~2000 vertices.
  const std::size_t stride = std::max<std::size_t>(1, n / 2000);
  for (std::size_t t = 0; t < n; t += stride) svg << px(t) << ',' << py(ys[t]) << ' ';
  if (n > 0 && (n - 1) % stride != 0) svg << px(n - 1) << ',' << py(ys[n - 1]);
  svg << "\"/>\n";
}

}  // namespace

std::string stats_to_svg(const StatsSeries& series, const std::string& title) {
  std::ostringstream svg;
  svg.precision(6);
  const double height = 2.0 * kPanelHeight + 30.0;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << height << "\" viewBox=\"0 0 " << kWidth << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">"
      << title << " (" << series.trials << " trials)</text>\n";
  draw_panel(svg, series.mse, "MSE", 20.0);
  draw_panel(svg, series.ncp, "N-CP", 20.0 + kPanelHeight);
  svg << "</svg>\n";
  return svg.str();
}

void write_svg(const StatsSeries& series, const std::filesystem::path& path,
               const std::string& title) {
  write_text_file(path, stats_to_svg(series, title));
}

}  // namespace gnd
