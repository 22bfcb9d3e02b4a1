// Derivative-free minimization: Powell's direction-set method with
// bracketing plus Brent line searches. The budget counts accepted
// line-search moves (parameter updates), not function evaluations.
#pragma once

#include <functional>
#include <vector>

namespace vqx {

struct PowellOptions {
  int max_updates = 2000;
  double value_tolerance = 1e-8;        // relative sweep-improvement stop
  double line_search_tolerance = 1e-8;
  double initial_step = 0.1;            // first bracketing displacement
  int max_bracket_expansions = 50;
  // Rows are initial search directions; empty means coordinate axes.
  std::vector<std::vector<double>> initial_directions;
};

struct TracePoint {
  int update = 0;
  double value = 0.0;
  std::vector<double> theta;
};

struct PowellResult {
  std::vector<double> theta;
  double value = 0.0;
  int updates = 0;
  bool converged = false;   // tolerance reached within budget
  std::vector<TracePoint> trace;
};

using Objective = std::function<double(const std::vector<double>&)>;
using UpdateHook = std::function<void(const TracePoint&)>;

// Throws std::runtime_error when the objective returns NaN, reporting the
// parameter vector that produced it.
PowellResult powell_minimize(const Objective& f, std::vector<double> theta0,
                             const PowellOptions& options = {},
                             const UpdateHook& on_update = nullptr);

}  // namespace vqx
