#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "patchladder/network.hpp"

namespace patchladder {

struct MaskInterval {
  double low = 0.0;   // Hz
  double high = 0.0;  // Hz
  double ceiling_db = -10.0;
};

/// Upper limits on s11 dB over frequency intervals.
struct Mask {
  std::vector<MaskInterval> intervals;

  /// Throws Error(InvalidBounds) on empty or overlapping intervals.
  void validate() const;
};

using FitTarget = std::variant<SParameterTrace, Mask>;

struct FreeParameter {
  std::string section;
  Param param = Param::L;
  double low = 0.0;
  double high = 0.0;
};

struct FitProblem {
  Netlist netlist;
  std::vector<FreeParameter> free_parameters;
  FitTarget target;
  SweepGrid grid;
  int max_iterations = 500;
  double tolerance = 1e-10;  // relative spread of simplex costs
  std::uint64_t seed = 1;
  int restarts = 8;  // extra seeded simplex runs (multi-start)
  /// Called with every parameter vector that is evaluated (physical units).
  std::function<void(std::span<const double>)> observer;
};

struct FitResult {
  Netlist netlist;
  std::vector<double> parameters;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  /// Best cost after each iteration; non-increasing.
  std::vector<double> best_cost_history;
};

/// Mean squared dB deviation from a trace (over grid points inside the
/// trace span) or mean squared positive mask violation (over grid points
/// inside the mask intervals).
double cost(const Netlist& netlist, const FitTarget& target, const SweepGrid& grid);

/// Bounded Nelder-Mead on the logarithms of the free parameters.
FitResult fit(const FitProblem& problem);

/// "s1.L" -> {"s1", Param::L}; bounds are left unset.
FreeParameter parse_free_parameter(std::string_view spec);

}  // namespace patchladder
