// Self-contained SVG chart emission for sweep outputs: dissociation curves
// with sample whiskers, accuracy curves, and objective-convergence traces.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "vqx/sweep.hpp"

namespace vqx {

struct PlotSeries {
  std::string label;
  std::string color = "#1f77b4";
  bool dashed = false;
  std::vector<std::array<double, 2>> points;    // {x, y}
  std::vector<std::array<double, 3>> whiskers;  // {x, low, high}
};

std::string render_line_plot(const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series);

// Writes dissociation_case<k>.svg, accuracy_case<k>.svg and convergence SVGs
// for the first, middle and last bond lengths; returns the paths written.
std::vector<std::string> write_plots(const SweepResult& result,
                                     const std::string& out_dir);

}  // namespace vqx
