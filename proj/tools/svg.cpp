#include <algorithm>
#include <cmath>
#include <sstream>

#include "app.hpp"

namespace hurstlab::cli {

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0, kMargin = 56.0;

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

void pad(double& lo, double& hi, double frac) {
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
    return;
  }
  const double d = (hi - lo) * frac;
  lo -= d;
  hi += d;
}

void header(std::ostringstream& svg, const std::string& title) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "<text class=\"title\" x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << title << "</text>\n"
      << "<path class=\"axis\" d=\"M" << kMargin << ' ' << kMargin << " V" << kHeight - kMargin << " H"
      << kWidth - kMargin << "\" stroke=\"black\" fill=\"none\"/>\n";
}

}  // namespace

std::string render_curve_svg(const nlohmann::json& report) {
  const auto curve = report.find("curve");
  if (curve == report.end() || !curve->is_array() || curve->empty())
    throw Error(ErrorKind::Format, "report has no curve points to plot");
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : *curve) {
    if (!p.contains("s") || !p.contains("F") || !p["s"].is_number() || !p["F"].is_number())
      throw Error(ErrorKind::Format, "curve point must have numeric 's' and 'F'");
    const double s = p["s"].get<double>(), f = p["F"].get<double>();
    if (!(s > 0.0) || !(f > 0.0)) throw Error(ErrorKind::Format, "curve points must be positive");
    pts.emplace_back(std::log2(s), std::log2(f));
  }
  const auto& est = report.at("estimate");
  const double h = est.at("h").get<double>(), b = est.at("intercept").get<double>();

  Frame fr{pts.front().first, pts.front().first, pts.front().second, pts.front().second};
  for (auto [x, y] : pts) {
    fr.x0 = std::min(fr.x0, x);
    fr.x1 = std::max(fr.x1, x);
    fr.y0 = std::min({fr.y0, y, b + h * x});
    fr.y1 = std::max({fr.y1, y, b + h * x});
  }
  pad(fr.x0, fr.x1, 0.05);
  pad(fr.y0, fr.y1, 0.05);
  const double lx0 = pts.front().first, lx1 = pts.back().first;

  std::ostringstream svg;
  svg.precision(6);
  std::ostringstream title;
  title.precision(4);
  title << "log2 F(s) vs log2 s, h = " << h;
  header(svg, title.str());
  svg << "<line class=\"fit\" x1=\"" << fr.px(lx0) << "\" y1=\"" << fr.py(b + h * lx0) << "\" x2=\"" << fr.px(lx1)
      << "\" y2=\"" << fr.py(b + h * lx1) << "\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n";
  for (auto [x, y] : pts)
    svg << "<circle class=\"point\" cx=\"" << fr.px(x) << "\" cy=\"" << fr.py(y)
        << "\" r=\"4\" fill=\"steelblue\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">log2 s</text>\n"
      << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 " << kHeight / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">log2 F(s)</text>\n"
      << "</svg>\n";
  return svg.str();
}

std::string render_histogram_svg(const std::vector<std::pair<double, double>>& bins) {
  if (bins.empty()) throw Error(ErrorKind::Format, "histogram has no bins to plot");
  double width = 0.0;
  for (std::size_t k = 1; k < bins.size(); ++k) {
    const double d = bins[k].first - bins[k - 1].first;
    if (d > 0.0 && (width == 0.0 || d < width)) width = d;
  }
  if (width == 0.0) width = 0.1;

  Frame fr{bins.front().first - width / 2, bins.back().first + width / 2, 0.0, 0.0};
  for (const auto& [c, n] : bins) fr.y1 = std::max(fr.y1, n);
  if (fr.y1 <= 0.0) fr.y1 = 1.0;
  fr.y1 *= 1.05;
  if (fr.x1 <= fr.x0) pad(fr.x0, fr.x1, 0.05);

  std::ostringstream svg;
  svg.precision(6);
  header(svg, "Hurst exponent histogram");
  for (const auto& [c, n] : bins) {
    const double left = fr.px(c - width / 2), right = fr.px(c + width / 2);
    const double top = fr.py(n), base = fr.py(0.0);
    svg << "<rect class=\"bar\" x=\"" << left << "\" y=\"" << top << "\" width=\"" << std::max(0.0, right - left - 1)
        << "\" height=\"" << base - top << "\" fill=\"steelblue\"/>\n";
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">h</text>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace hurstlab::cli
