#include "textclf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace textclf {

namespace {

std::string fmt(const char* format, ...) {
  char buffer[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

struct Scale {
  double lo = 0.0;
  double hi = 1.0;
  double pixel_lo = 0.0;
  double pixel_hi = 1.0;

  double operator()(double v) const {
    return pixel_lo + (v - lo) / (hi - lo) * (pixel_hi - pixel_lo);
  }
};

}  // namespace

std::string learning_curve_svg(std::span<const LearningCurvePoint> points) {
  if (points.empty()) throw std::invalid_argument("no learning-curve points to plot");

  constexpr double kWidth = 640;
  constexpr double kHeight = 420;
  constexpr double kLeft = 64;
  constexpr double kRight = 24;
  constexpr double kTop = 24;
  constexpr double kBottom = 48;

  double x_hi = 0.0;
  double y_lo = 1.0;
  double y_hi = 0.0;
  for (const auto& p : points) {
    x_hi = std::max(x_hi, p.mean_train_size);
    y_lo = std::min(y_lo, p.mean_accuracy - p.stddev);
    y_hi = std::max(y_hi, p.mean_accuracy + p.stddev);
  }
  if (x_hi <= 0.0) x_hi = 1.0;
  const double pad = std::max(0.01, (y_hi - y_lo) * 0.15);
  y_lo = std::max(0.0, y_lo - pad);
  y_hi = std::min(1.0, y_hi + pad);
  if (y_hi <= y_lo) y_hi = y_lo + 0.01;

  const Scale sx{0.0, x_hi, kLeft, kWidth - kRight};
  const Scale sy{y_lo, y_hi, kHeight - kBottom, kTop};

  std::string svg = fmt(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
      "viewBox=\"0 0 %.0f %.0f\">\n",
      kWidth, kHeight, kWidth, kHeight);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes and ticks.
  svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
             kLeft, kTop, kLeft, kHeight - kBottom);
  svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
             kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom);
  for (int t = 0; t <= 5; ++t) {
    const double v = y_lo + (y_hi - y_lo) * t / 5.0;
    const double y = sy(v);
    svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
               "stroke=\"#cccccc\"/>\n",
               kLeft, y, kWidth - kRight, y);
    svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"end\" "
               "font-family=\"sans-serif\">%.3f</text>\n",
               kLeft - 6, y + 4, v);
    const double xv = x_hi * t / 5.0;
    const double x = sx(xv);
    svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\">%.0f</text>\n",
               x, kHeight - kBottom + 18, xv);
  }
  svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\">training documents</text>\n",
             (kLeft + kWidth - kRight) / 2, kHeight - 10);
  svg += fmt("<text x=\"16\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\" transform=\"rotate(-90 16 %.1f)\">accuracy"
             "</text>\n",
             (kTop + kHeight - kBottom) / 2, (kTop + kHeight - kBottom) / 2);

  // Standard-deviation band.
  std::string band = "<polygon fill=\"#aec7e8\" fill-opacity=\"0.5\" points=\"";
  for (const auto& p : points) {
    band += fmt("%.1f,%.1f ", sx(p.mean_train_size), sy(p.mean_accuracy + p.stddev));
  }
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    band += fmt("%.1f,%.1f ", sx(it->mean_train_size), sy(it->mean_accuracy - it->stddev));
  }
  band += "\"/>\n";
  svg += band;

  // Mean accuracy line and markers.
  std::string line = "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (const auto& p : points) {
    line += fmt("%.1f,%.1f ", sx(p.mean_train_size), sy(p.mean_accuracy));
  }
  line += "\"/>\n";
  svg += line;
  for (const auto& p : points) {
    svg += fmt("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"#1f77b4\"/>\n",
               sx(p.mean_train_size), sy(p.mean_accuracy));
  }

  svg += "</svg>\n";
  return svg;
}

std::string confusion_heatmap_svg(const ConfusionMatrix& confusion) {
  constexpr double kCell = 110;
  constexpr double kLeft = 110;
  constexpr double kTop = 70;
  const double width = kLeft + kCell * kNumClasses + 24;
  const double height = kTop + kCell * kNumClasses + 24;

  std::array<std::uint64_t, kNumClasses> row_totals{};
  for (int g = 0; g < kNumClasses; ++g) {
    for (int p = 0; p < kNumClasses; ++p) row_totals[g] += confusion[g][p];
  }

  std::string svg = fmt(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
      "viewBox=\"0 0 %.0f %.0f\">\n",
      width, height, width, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += fmt("<text x=\"%.1f\" y=\"24\" font-size=\"13\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\">predicted</text>\n",
             kLeft + kCell * kNumClasses / 2);
  svg += fmt("<text x=\"20\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\" transform=\"rotate(-90 20 %.1f)\">gold</text>\n",
             kTop + kCell * kNumClasses / 2, kTop + kCell * kNumClasses / 2);

  for (int c = 0; c < kNumClasses; ++c) {
    svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\">%s</text>\n",
               kLeft + kCell * c + kCell / 2, kTop - 10, label_name(label_from_index(c)));
    svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"end\" "
               "font-family=\"sans-serif\">%s</text>\n",
               kLeft - 10, kTop + kCell * c + kCell / 2 + 4,
               label_name(label_from_index(c)));
  }

  for (int g = 0; g < kNumClasses; ++g) {
    for (int p = 0; p < kNumClasses; ++p) {
      const double share =
          row_totals[g] > 0
              ? static_cast<double>(confusion[g][p]) / static_cast<double>(row_totals[g])
              : 0.0;
      // White at 0 to steel blue at 1.
      const int r = static_cast<int>(std::lround(255 + (31 - 255) * share));
      const int gr = static_cast<int>(std::lround(255 + (119 - 255) * share));
      const int b = static_cast<int>(std::lround(255 + (180 - 255) * share));
      const double x = kLeft + kCell * p;
      const double y = kTop + kCell * g;
      svg += fmt("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                 "fill=\"rgb(%d,%d,%d)\" stroke=\"#666666\"/>\n",
                 x, y, kCell, kCell, r, gr, b);
      const char* text_color = share > 0.5 ? "white" : "black";
      svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"16\" text-anchor=\"middle\" "
                 "font-family=\"sans-serif\" fill=\"%s\">%llu</text>\n",
                 x + kCell / 2, y + kCell / 2 - 2, text_color,
                 static_cast<unsigned long long>(confusion[g][p]));
      svg += fmt("<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\" "
                 "font-family=\"sans-serif\" fill=\"%s\">%.1f%%</text>\n",
                 x + kCell / 2, y + kCell / 2 + 16, text_color, share * 100.0);
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace textclf
