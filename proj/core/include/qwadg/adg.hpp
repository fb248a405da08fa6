#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qwadg/statevec.hpp"
#include "qwadg/targets.hpp"

namespace qwadg {

enum class CostKind { MSE, KL };

struct OptimizerConfig {
  CostKind cost = CostKind::MSE;
  double eta_theta = 0.1;
  double eta_phi = 0.1;
  double eta_lambda = 0.1;
  double fd_step = 1e-3;
  int max_iters = 2000;
  double tol = 1e-6;
  int restarts = 5;
  std::uint64_t seed = 0;
  double kl_epsilon = 1e-12;
  int jobs = 1;
  bool freeze_interaction = false;  // pin two-qubit interaction angles at 0

  void validate() const;
};

struct OptimizationTrace {
  std::vector<double> cost_history;  // initial cost, then one entry per update
  std::vector<double> best_params;
  double best_cost = 0.0;
  int iterations_run = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
};

/// MSE = mean squared difference; KL = sum q ln(q / max(p, eps)) with the
/// target as q (target relative to simulated).
double cost(std::span<const double> simulated, std::span<const double> target,
            CostKind kind, double kl_epsilon = 1e-12);

enum class AngleRole { Theta, Phi, Lambda, Interaction };

/// Flat view of every tunable angle in the spec's layers, in layer order.
std::vector<double> flatten_params(const WalkSpec& spec);
std::vector<AngleRole> param_roles(const WalkSpec& spec);
void set_params(WalkSpec& spec, std::span<const double> params);

/// Central finite-difference partials of the cost at the spec's current
/// parameters, one per angle. Exact probabilities, no sampling.
std::vector<double> gradient(const WalkSpec& spec, const TargetDistribution& target,
                             const OptimizerConfig& config);

/// Single gradient-descent run starting from the spec's own parameters.
OptimizationTrace descend(const WalkSpec& start, const TargetDistribution& target,
                          const OptimizerConfig& config);

/// Multi-restart fit: each restart draws all angles uniformly from
/// [0, 2*pi) with seed = config.seed + restart index, then descends.
/// Returns the best trace across restarts.
OptimizationTrace optimize(const WalkSpec& spec_template,
                           const TargetDistribution& target,
                           const OptimizerConfig& config);

/// Spec template with zeroed layer parameters and the symmetric default
/// initial coin.
WalkSpec make_template(WalkKind kind, const std::vector<int>& position_qubits,
                       int layers);

struct SweepCell {
  int coins = 0;
  std::vector<double> final_errors;   // one per repetition
  std::vector<double> wall_times_s;   // one per repetition
  double best_error = 0.0;
  std::vector<double> best_params;
  std::vector<double> best_fit;  // position distribution at the best params
};

struct SweepReport {
  std::string target_name;
  WalkKind kind = WalkKind::SSQW;
  std::vector<int> position_qubits;
  int repetitions = 0;
  std::uint64_t seed = 0;
  std::vector<SweepCell> cells;
};

/// Coin-count sweep: for each entry of coin_counts (= walk layers), run
/// `repetitions` independent optimizations and collect error and timing
/// samples.
SweepReport run_sweep(const TargetDistribution& target, WalkKind kind,
                      const std::vector<int>& position_qubits,
                      const std::vector<int>& coin_counts, int repetitions,
                      const OptimizerConfig& config);

}  // namespace qwadg
