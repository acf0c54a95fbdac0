#include "svg_plot.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rovtrack {

namespace {

constexpr int kWidth = 900;
constexpr int kPanelHeight = 130;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 16;
constexpr int kMarginBottom = 26;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

struct Range {
  double lo = 0.0, hi = 1.0;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-9) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      const double m = 0.05 * (hi - lo);
      lo -= m;
      hi += m;
    }
  }
  double map(double v, double px_lo, double px_hi) const {
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

void polyline(std::ostream& out, const std::vector<std::pair<double, double>>& pts,
              const char* color, bool dashed) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\"";
  if (dashed) out << " stroke-dasharray=\"5,4\"";
  out << " points=\"";
  // decimate long series; the plot is desk-scale inspection, not data export
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 2000);
  for (std::size_t k = 0; k < pts.size(); k += stride) {
    out << fmt(pts[k].first) << ',' << fmt(pts[k].second) << ' ';
  }
  if ((pts.size() - 1) % stride != 0) {
    out << fmt(pts.back().first) << ',' << fmt(pts.back().second);
  }
  out << "\"/>\n";
}

void text(std::ostream& out, double x, double y, const std::string& s, int size = 11) {
  out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-family=\"sans-serif\""
      << " font-size=\"" << size << "\" fill=\"#333\">" << s << "</text>\n";
}

}  // namespace

void write_timeseries_svg(const SimLog& log, const std::filesystem::path& path) {
  if (log.rows.empty()) throw EmptyLog("timeseries plot needs a non-empty log");
  static const char* names[6] = {"X [m]", "Y [m]", "Z [m]", "roll [rad]", "pitch [rad]",
                                 "yaw [rad]"};
  const int height = kPanelHeight * 6 + kMarginTop + kMarginBottom;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << height << "\" viewBox=\"0 0 " << kWidth << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  Range tr;
  tr.lo = log.rows.front().t;
  tr.hi = std::max(log.rows.back().t, tr.lo + 1e-9);

  for (int dof = 0; dof < 6; ++dof) {
    const double y0 = kMarginTop + dof * kPanelHeight;
    const double y1 = y0 + kPanelHeight - 24;
    Range vr;
    vr.lo = vr.hi = log.rows.front().eta[dof];
    for (const auto& row : log.rows) {
      vr.include(row.eta[dof]);
      vr.include(row.eta_d[dof]);
    }
    vr.pad();

    std::vector<std::pair<double, double>> actual, ref;
    actual.reserve(log.rows.size());
    ref.reserve(log.rows.size());
    for (const auto& row : log.rows) {
      const double px = tr.map(row.t, kMarginLeft, kWidth - kMarginRight);
      actual.emplace_back(px, vr.map(row.eta[dof], y1, y0));
      ref.emplace_back(px, vr.map(row.eta_d[dof], y1, y0));
    }
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << fmt(y0) << "\" width=\""
        << (kWidth - kMarginLeft - kMarginRight) << "\" height=\"" << fmt(y1 - y0)
        << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
    polyline(out, ref, "#d62728", true);
    polyline(out, actual, "#1f77b4", false);
    text(out, 4, (y0 + y1) / 2, names[dof]);
    text(out, kMarginLeft - 60, y0 + 10, fmt(vr.hi), 9);
    text(out, kMarginLeft - 60, y1, fmt(vr.lo), 9);
  }
  text(out, kWidth / 2 - 20, height - 8, "t [s]");
  text(out, kMarginLeft, height - 8, fmt(tr.lo), 9);
  text(out, kWidth - kMarginRight - 40, height - 8, fmt(tr.hi), 9);
  out << "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidConfig("cannot write " + path.string());
  f << out.str();
}

void write_path_svg(const SimLog& log, int ax, int ay, const std::filesystem::path& path) {
  if (log.rows.empty()) throw EmptyLog("path plot needs a non-empty log");
  static const char* axis_names[3] = {"X [m]", "Y [m]", "Z [m]"};
  const int height = 600;

  Range xr, yr;
  xr.lo = xr.hi = log.rows.front().eta[ax];
  yr.lo = yr.hi = log.rows.front().eta[ay];
  for (const auto& row : log.rows) {
    xr.include(row.eta[ax]);
    xr.include(row.eta_d[ax]);
    yr.include(row.eta[ay]);
    yr.include(row.eta_d[ay]);
  }
  xr.pad();
  yr.pad();

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << height << "\" viewBox=\"0 0 " << kWidth << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::vector<std::pair<double, double>> actual, ref;
  for (const auto& row : log.rows) {
    actual.emplace_back(xr.map(row.eta[ax], kMarginLeft, kWidth - kMarginRight),
                        yr.map(row.eta[ay], height - kMarginBottom, kMarginTop));
    ref.emplace_back(xr.map(row.eta_d[ax], kMarginLeft, kWidth - kMarginRight),
                     yr.map(row.eta_d[ay], height - kMarginBottom, kMarginTop));
  }
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << (kWidth - kMarginLeft - kMarginRight) << "\" height=\""
      << (height - kMarginTop - kMarginBottom) << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
  polyline(out, ref, "#d62728", true);
  polyline(out, actual, "#1f77b4", false);
  text(out, kWidth / 2, height - 6, axis_names[ax]);
  text(out, 6, height / 2, axis_names[ay]);
  text(out, kMarginLeft, height - 6, fmt(xr.lo), 9);
  text(out, kWidth - kMarginRight - 50, height - 6, fmt(xr.hi), 9);
  text(out, 6, height - kMarginBottom, fmt(yr.lo), 9);
  text(out, 6, kMarginTop + 10, fmt(yr.hi), 9);
  out << "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidConfig("cannot write " + path.string());
  f << out.str();
}

}  // namespace rovtrack
