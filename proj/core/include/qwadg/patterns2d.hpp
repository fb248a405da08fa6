#pragma once

#include <span>

#include "qwadg/adg.hpp"

namespace qwadg {

struct Pattern2DResult {
  int digit = 0;
  std::vector<double> target;  // 8x8 row-major
  std::vector<double> fitted;  // 8x8 row-major
  double fidelity = 0.0;       // Bhattacharyya coefficient
  OptimizationTrace trace;
};

/// Classical fidelity sum_i sqrt(p_i q_i); 1 iff the distributions match.
double bhattacharyya(std::span<const double> p, std::span<const double> q);

/// Entangled-2D walk template on the 8x8 grid (3 position qubits per axis).
WalkSpec make_entangled2d_spec(int layers);

/// Fit the entangled two-walker walk to the built-in glyph for digit d.
Pattern2DResult fit_digit(int d, int layers, const OptimizerConfig& config);

/// Same fit with the interaction angles frozen at 0 (product coins only).
Pattern2DResult separable_baseline(int d, int layers, const OptimizerConfig& config);

}  // namespace qwadg
