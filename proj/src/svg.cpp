#include "hybridleg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hybridleg {

namespace {

std::string fmt(double v, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

// Linear blend between deep green (fast settling) and pale yellow (slow).
std::string settling_color(double settling, double max_settling) {
  const double x =
      std::clamp(max_settling > 0.0 ? settling / max_settling : 0.0, 0.0,
                 1.0);
  const int r = static_cast<int>(std::lround(26.0 + x * (254.0 - 26.0)));
  const int g = static_cast<int>(std::lround(152.0 + x * (224.0 - 152.0)));
  const int b = static_cast<int>(std::lround(80.0 + x * (139.0 - 80.0)));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string panel_file_name(double frequency, double duty_cycle) {
  return "panel_f" + fmt(frequency, "%g") + "_dc" +
         fmt(duty_cycle * 100.0, "%g") + ".svg";
}

std::string viability_panel_svg(const SweepResult& result, double frequency,
                                double duty_cycle,
                                double max_settling_time) {
  const SweepGrid& g = result.grid;
  const auto fi_it =
      std::find(g.frequencies.begin(), g.frequencies.end(), frequency);
  const auto di_it =
      std::find(g.duty_cycles.begin(), g.duty_cycles.end(), duty_cycle);
  if (fi_it == g.frequencies.end() || di_it == g.duty_cycles.end()) {
    throw std::invalid_argument("requested panel is not in the sweep grid");
  }
  const auto fi = static_cast<std::size_t>(fi_it - g.frequencies.begin());
  const auto di = static_cast<std::size_t>(di_it - g.duty_cycles.begin());

  const int cell = 24;
  const int left = 64;
  const int top = 40;
  const int bottom = 48;
  const int right = 16;
  const auto cols = static_cast<int>(g.delays.size());
  const auto rows = static_cast<int>(g.lambdas.size());
  const int width = left + cols * cell + right;
  const int height = top + rows * cell + bottom;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(left) +
         "\" y=\"22\" font-size=\"14\">viability map, f=" +
         fmt(frequency, "%g") + " Hz, duty=" + fmt(duty_cycle * 100.0, "%g") +
         "%</text>\n";

  for (int li = 0; li < rows; ++li) {
    // Largest passive fraction on top, matching the axis label convention.
    const auto lambda_i = static_cast<std::size_t>(rows - 1 - li);
    for (int ki = 0; ki < cols; ++ki) {
      const SweepCell& c =
          result.at(di, fi, lambda_i, static_cast<std::size_t>(ki));
      const std::string fill =
          c.verdict.viable
              ? settling_color(c.verdict.settle.settling_time,
                               max_settling_time)
              : std::string("#9e9e9e");
      svg += "<rect x=\"" + std::to_string(left + ki * cell) + "\" y=\"" +
             std::to_string(top + li * cell) + "\" width=\"" +
             std::to_string(cell - 1) + "\" height=\"" +
             std::to_string(cell - 1) + "\" fill=\"" + fill + "\"/>\n";
    }
    if (li % 2 == 0) {
      svg += "<text x=\"" + std::to_string(left - 8) + "\" y=\"" +
             std::to_string(top + li * cell + cell / 2 + 4) +
             "\" text-anchor=\"end\">" + fmt(g.lambdas[lambda_i], "%g") +
             "</text>\n";
    }
  }
  for (int ki = 0; ki < cols; ++ki) {
    if (ki % 2 != 0) continue;
    svg += "<text x=\"" + std::to_string(left + ki * cell + cell / 2) +
           "\" y=\"" + std::to_string(top + rows * cell + 16) +
           "\" text-anchor=\"middle\">" +
           fmt(g.delays[static_cast<std::size_t>(ki)] * 1000.0, "%g") +
           "</text>\n";
  }
  svg += "<text x=\"" + std::to_string(left + cols * cell / 2) + "\" y=\"" +
         std::to_string(top + rows * cell + 36) +
         "\" text-anchor=\"middle\">delay [ms]</text>\n";
  svg += "<text x=\"14\" y=\"" + std::to_string(top + rows * cell / 2) +
         "\" transform=\"rotate(-90 14 " +
         std::to_string(top + rows * cell / 2) +
         ")\" text-anchor=\"middle\">passive fraction</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace hybridleg
